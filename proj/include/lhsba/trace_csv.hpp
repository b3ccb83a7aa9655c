#ifndef LHSBA_TRACE_CSV_HPP
#define LHSBA_TRACE_CSV_HPP

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "lhsba/attack.hpp"

namespace lhsba {

inline constexpr std::string_view kTraceHeader =
    "t,M_t,delta_t,epsilon_t,queries,distortion,agree_count,step_retries,binsearch_steps";

// Header, one row per iteration (reals at 17 significant digits), then
// "# status=<status>".
void write_trace_csv(const AttackTrace& trace, std::ostream& out);
void emit_trace_csv(const AttackTrace& trace, const std::filesystem::path& path);

}  // namespace lhsba

#endif  // LHSBA_TRACE_CSV_HPP
