#include "lhsba/protocol.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <vector>

#include "lhsba/error.hpp"

namespace lhsba::protocol {

std::string format_real(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_point(const Point& x) {
  std::string out;
  out.reserve(static_cast<std::size_t>(x.size()) * 24);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i) out.push_back(' ');
    out += format_real(x[i]);
  }
  return out;
}

std::string format_hello(Eigen::Index dim) { return "HELLO m=" + std::to_string(dim); }

std::string_view format_reply(Decision d) noexcept { return is_adversarial(d) ? "+1" : "-1"; }

namespace {

std::string_view trim_eol(std::string_view line) {
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
  return line;
}

}  // namespace

std::optional<Eigen::Index> parse_hello(std::string_view line) {
  line = trim_eol(line);
  constexpr std::string_view prefix = "HELLO m=";
  if (line.substr(0, prefix.size()) != prefix) return std::nullopt;
  line.remove_prefix(prefix.size());
  long long m = 0;
  const auto res = std::from_chars(line.data(), line.data() + line.size(), m);
  if (res.ec != std::errc() || res.ptr != line.data() + line.size() || m < 1) return std::nullopt;
  return static_cast<Eigen::Index>(m);
}

std::optional<Point> parse_point(std::string_view line) {
  line = trim_eol(line);
  std::vector<double> values;
  const char* p = line.data();
  const char* end = p + line.size();
  while (p != end) {
    if (*p == ' ' || *p == '\t') {
      ++p;
      continue;
    }
    double v = 0.0;
    const auto res = std::from_chars(p, end, v);
    if (res.ec != std::errc()) return std::nullopt;
    p = res.ptr;
    if (p != end && *p != ' ' && *p != '\t') return std::nullopt;
    values.push_back(v);
  }
  if (values.empty()) return std::nullopt;
  return Eigen::Map<const Point>(values.data(), static_cast<Eigen::Index>(values.size()));
}

std::optional<Point> parse_point(std::string_view line, Eigen::Index dim) {
  auto point = parse_point(line);
  if (!point || point->size() != dim || !point->allFinite()) return std::nullopt;
  return point;
}

std::optional<Decision> parse_reply(std::string_view line) noexcept {
  line = trim_eol(line);
  if (line == "+1") return Decision::Adversarial;
  if (line == "-1") return Decision::NotAdversarial;
  return std::nullopt;
}

std::uint64_t serve(DecisionOracle& oracle, std::istream& in, std::ostream& out) {
  std::string line;
  if (!std::getline(in, line)) throw ProtocolError("serve: missing HELLO");
  const auto m = parse_hello(line);
  if (!m) throw ProtocolError("serve: malformed handshake '" + line + "'");
  if (*m != oracle.dim()) {
    throw ProtocolError("serve: engine dimension " + std::to_string(*m) + " != oracle dimension " +
                        std::to_string(oracle.dim()));
  }
  out << "OK\n" << std::flush;
  QueryLedger ledger;
  while (std::getline(in, line)) {
    const auto x = parse_point(line, *m);
    if (!x) throw ProtocolError("serve: malformed request line");
    out << format_reply(decide(oracle, *x, ledger, Phase::Init)) << '\n' << std::flush;
  }
  return ledger.total();
}

}  // namespace lhsba::protocol
