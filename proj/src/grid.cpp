#include "cmclab/grid.hpp"

#include <limits>

#include "cmclab/error.hpp"

namespace cmclab {

Grid make_grid(int n_u, int n_v, double h, double u0, double v0) {
  if (n_u < 1 || n_v < 1) throw Error(ErrorKind::InvalidInput, "grid needs positive node counts");
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidInput, "grid spacing must be positive");
  return Grid{n_u, n_v, h, h, u0, v0};
}

Range field_range(const ScalarField& f, bool interior_only) {
  const Grid& g = f.grid();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double sum = 0.0;
  long count = 0;
  for (int i = 0; i < g.n_u; ++i) {
    for (int j = 0; j < g.n_v; ++j) {
      if (interior_only && !g.interior(i, j)) continue;
      const double x = f(i, j);
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      sum += x;
      ++count;
    }
  }
  if (count == 0) return Range{};
  return Range{lo, hi, sum / static_cast<double>(count)};
}

}  // namespace cmclab
