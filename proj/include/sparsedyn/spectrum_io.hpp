#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "sparsedyn/sparse_spectrum.hpp"

namespace sparsedyn {

/// Text dump of a sparse spectrum: a `# grid=<n,..> n_s=<count>` header, then one
/// tab-separated line `k_0 [k_1] re im` per entry in slot order. Values use %.17g
/// so a dump reads back bit-exactly.
template <typename Scalar>
void write_spectrum(std::ostream& out, const SparseSpectrum<Scalar>& spec) {
  const GridSpec& grid = spec.grid();
  out << "# grid=" << grid.n_per_dim();
  if (grid.dims() == 2) out << ',' << grid.n_per_dim();
  out << " n_s=" << spec.size() << '\n';
  char buf[64];
  for (const auto& e : spec.entries()) {
    const Wavevector k = grid.wavenumber_of(e.index);
    out << k[0] << '\t';
    if (grid.dims() == 2) out << k[1] << '\t';
    std::snprintf(buf, sizeof buf, "%.17g", double(e.value.real()));
    out << buf << '\t';
    std::snprintf(buf, sizeof buf, "%.17g", double(e.value.imag()));
    out << buf << '\n';
  }
}

/// Reads a dump written by write_spectrum; the grid period is not stored and is
/// taken from `domain_length`.
template <typename Scalar = double>
SparseSpectrum<Scalar> read_spectrum(std::istream& in, double domain_length = 2 * 3.14159265358979323846) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# grid=", 0) != 0) throw Error("spectrum dump: missing header");
  int n0 = 0, n1 = 0;
  std::size_t count = 0;
  const int dims = std::sscanf(line.c_str(), "# grid=%d,%d n_s=%zu", &n0, &n1, &count) == 3 ? 2 : 1;
  if (dims == 1 && std::sscanf(line.c_str(), "# grid=%d n_s=%zu", &n0, &count) != 2)
    throw Error("spectrum dump: malformed header '" + line + "'");
  const GridSpec grid(dims, n0, domain_length);
  std::vector<std::pair<Wavevector, std::complex<Scalar>>> modes;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    Wavevector k{0, 0};
    double re = 0, im = 0;
    row >> k[0];
    if (dims == 2) row >> k[1];
    if (!(row >> re >> im)) throw Error("spectrum dump: malformed row '" + line + "'");
    modes.push_back({k, std::complex<Scalar>(Scalar(re), Scalar(im))});
  }
  if (modes.size() != count) throw Error("spectrum dump: header count does not match rows");
  return SparseSpectrum<Scalar>::from_wavenumbers(grid, modes);
}

}  // namespace sparsedyn
