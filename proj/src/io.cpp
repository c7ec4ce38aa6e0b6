#include "sparsedyn/harness/io.hpp"

#include "sparsedyn/harness/config.hpp"

namespace sparsedyn::harness {

void write_report_csv(std::ostream& out, const RunReport& report) {
  out << report_header << '\n';
  for (const auto& r : report.records) {
    out << r.step << ',' << format_double(r.time) << ',' << r.n_s << ',' << format_double(r.sparsity_fraction) << ','
        << (r.l2_error ? format_double(*r.l2_error) : "") << ',' << (r.linf_error ? format_double(*r.linf_error) : "")
        << ',' << format_double(r.mean.real()) << ',' << format_double(r.mean.imag()) << '\n';
  }
}

void write_field_csv(std::ostream& out, const SpatialField<double>& field) {
  const GridSpec& g = field.grid();
  const int n = g.n_per_dim();
  if (g.dims() == 1) {
    out << "x,u\n";
    for (int i = 0; i < n; ++i) out << format_double(g.coordinate(i)) << ',' << format_double(field(i)) << '\n';
    return;
  }
  out << "x,y,u\n";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out << format_double(g.coordinate(i)) << ',' << format_double(g.coordinate(j)) << ',' << format_double(field(i, j))
          << '\n';
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace sparsedyn::harness
