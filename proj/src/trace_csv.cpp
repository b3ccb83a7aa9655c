#include "lhsba/trace_csv.hpp"

#include <fstream>
#include <ostream>

#include "lhsba/error.hpp"
#include "lhsba/protocol.hpp"

namespace lhsba {

void write_trace_csv(const AttackTrace& trace, std::ostream& out) {
  using protocol::format_real;
  out << kTraceHeader << '\n';
  for (const auto& r : trace.rows) {
    out << r.t << ',' << r.sample_count << ',' << format_real(r.delta) << ',' << format_real(r.epsilon) << ','
        << r.queries << ',' << format_real(r.distortion) << ',' << r.agree_count << ',' << r.step_retries << ','
        << r.binsearch_steps << '\n';
  }
  out << "# status=" << to_string(trace.status) << '\n';
}

void emit_trace_csv(const AttackTrace& trace, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_trace_csv(trace, out);
  out.flush();
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace lhsba
