#ifndef LHSBA_PROTOCOL_HPP
#define LHSBA_PROTOCOL_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "lhsba/oracle.hpp"
#include "lhsba/point.hpp"

namespace lhsba {

// External oracle line protocol.
//
//   engine -> oracle   "HELLO m=<m>\n"
//   oracle -> engine   "OK\n"
//   engine -> oracle   <m floats, %.17g, single spaces>"\n"   (repeated)
//   oracle -> engine   "+1\n" | "-1\n"
namespace protocol {

// Shortest-exact text is not required; every value uses 17 significant digits
// so that parsing it back yields the identical double.
std::string format_real(double value);
std::string format_point(const Point& x);  // no trailing newline
std::string format_hello(Eigen::Index dim);
std::string_view format_reply(Decision d) noexcept;  // "+1" / "-1"

// Parse helpers return nullopt on any deviation from the grammar.
std::optional<Eigen::Index> parse_hello(std::string_view line);
std::optional<Point> parse_point(std::string_view line, Eigen::Index dim);
std::optional<Point> parse_point(std::string_view line);
std::optional<Decision> parse_reply(std::string_view line) noexcept;

// Server side of the protocol: handshake on `in`/`out`, then answer each
// request with `oracle`. Returns the number of queries served. Throws
// ProtocolError on a bad handshake or request.
std::uint64_t serve(DecisionOracle& oracle, std::istream& in, std::ostream& out);

}  // namespace protocol
}  // namespace lhsba

#endif  // LHSBA_PROTOCOL_HPP
