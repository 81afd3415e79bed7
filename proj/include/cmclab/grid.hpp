#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace cmclab {

using Complex = std::complex<double>;
inline constexpr Complex kI{0.0, 1.0};

// Uniform rectangular (u, v) lattice. Node (i, j) sits at
// (u0 + i h_u, v0 + j h_v); storage is row-major with u as the row index.
struct Grid {
  int n_u = 0;
  int n_v = 0;
  double h_u = 0.0;
  double h_v = 0.0;
  double u0 = 0.0;
  double v0 = 0.0;

  int size() const noexcept { return n_u * n_v; }
  int index(int i, int j) const noexcept { return i * n_v + j; }
  double u(int i) const noexcept { return u0 + i * h_u; }
  double v(int j) const noexcept { return v0 + j * h_v; }
  bool interior(int i, int j) const noexcept {
    return i > 0 && j > 0 && i < n_u - 1 && j < n_v - 1;
  }
  bool operator==(const Grid&) const = default;
};

// Square lattice of n_u x n_v nodes with spacing h.
Grid make_grid(int n_u, int n_v, double h, double u0 = 0.0, double v0 = 0.0);

template <class T>
class Field {
 public:
  Field() = default;
  explicit Field(const Grid& grid, T init = T{})
      : grid_(grid), data_(static_cast<std::size_t>(grid.size()), init) {}

  const Grid& grid() const noexcept { return grid_; }
  T& operator()(int i, int j) { return data_[static_cast<std::size_t>(grid_.index(i, j))]; }
  const T& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(grid_.index(i, j))];
  }
  std::vector<T>& values() noexcept { return data_; }
  const std::vector<T>& values() const noexcept { return data_; }

 private:
  Grid grid_;
  std::vector<T> data_;
};

using ScalarField = Field<double>;
using ComplexField = Field<Complex>;
using MaskField = Field<std::uint8_t>;

// Finite-difference stencils. First derivatives are central in the interior
// and second-order one-sided on the border; the Laplacian is the 5-point
// stencil and is only defined at interior nodes.
namespace stencil {

template <class T>
T d_u(const Field<T>& f, int i, int j) {
  const Grid& g = f.grid();
  if (i == 0) return (-3.0 * f(0, j) + 4.0 * f(1, j) - f(2, j)) / (2.0 * g.h_u);
  if (i == g.n_u - 1) {
    return (3.0 * f(i, j) - 4.0 * f(i - 1, j) + f(i - 2, j)) / (2.0 * g.h_u);
  }
  return (f(i + 1, j) - f(i - 1, j)) / (2.0 * g.h_u);
}

template <class T>
T d_v(const Field<T>& f, int i, int j) {
  const Grid& g = f.grid();
  if (j == 0) return (-3.0 * f(i, 0) + 4.0 * f(i, 1) - f(i, 2)) / (2.0 * g.h_v);
  if (j == g.n_v - 1) {
    return (3.0 * f(i, j) - 4.0 * f(i, j - 1) + f(i, j - 2)) / (2.0 * g.h_v);
  }
  return (f(i, j + 1) - f(i, j - 1)) / (2.0 * g.h_v);
}

// d/dz = (d_u - i d_v) / 2
template <class T>
Complex d_z(const Field<T>& f, int i, int j) {
  return 0.5 * (Complex(d_u(f, i, j)) - kI * Complex(d_v(f, i, j)));
}

// d/dzbar = (d_u + i d_v) / 2
template <class T>
Complex d_zbar(const Field<T>& f, int i, int j) {
  return 0.5 * (Complex(d_u(f, i, j)) + kI * Complex(d_v(f, i, j)));
}

// Second derivatives, central inside and 4-point one-sided on the border.
template <class T>
T d_uu(const Field<T>& f, int i, int j) {
  const Grid& g = f.grid();
  const double h2 = g.h_u * g.h_u;
  if (i == 0) return (2.0 * f(0, j) - 5.0 * f(1, j) + 4.0 * f(2, j) - f(3, j)) / h2;
  if (i == g.n_u - 1) {
    return (2.0 * f(i, j) - 5.0 * f(i - 1, j) + 4.0 * f(i - 2, j) - f(i - 3, j)) / h2;
  }
  return (f(i + 1, j) - 2.0 * f(i, j) + f(i - 1, j)) / h2;
}

template <class T>
T d_vv(const Field<T>& f, int i, int j) {
  const Grid& g = f.grid();
  const double h2 = g.h_v * g.h_v;
  if (j == 0) return (2.0 * f(i, 0) - 5.0 * f(i, 1) + 4.0 * f(i, 2) - f(i, 3)) / h2;
  if (j == g.n_v - 1) {
    return (2.0 * f(i, j) - 5.0 * f(i, j - 1) + 4.0 * f(i, j - 2) - f(i, j - 3)) / h2;
  }
  return (f(i, j + 1) - 2.0 * f(i, j) + f(i, j - 1)) / h2;
}

template <class T>
T laplacian(const Field<T>& f, int i, int j) {
  const Grid& g = f.grid();
  return (f(i + 1, j) - 2.0 * f(i, j) + f(i - 1, j)) / (g.h_u * g.h_u) +
         (f(i, j + 1) - 2.0 * f(i, j) + f(i, j - 1)) / (g.h_v * g.h_v);
}

}  // namespace stencil

// Running sup / mean of absolute values; the mean uses Neumaier summation.
class NormAccumulator {
 public:
  void add(double value) {
    const double a = std::abs(value);
    if (std::isnan(a)) {
      nan_ = true;
      return;
    }
    if (a > sup_) sup_ = a;
    const double t = sum_ + a;
    if (std::abs(sum_) >= a) {
      comp_ += (sum_ - t) + a;
    } else {
      comp_ += (a - t) + sum_;
    }
    sum_ = t;
    ++count_;
  }
  double sup() const noexcept { return nan_ ? std::nan("") : sup_; }
  double mean() const noexcept {
    if (nan_) return std::nan("");
    return count_ == 0 ? 0.0 : (sum_ + comp_) / static_cast<double>(count_);
  }
  long count() const noexcept { return count_; }

 private:
  double sup_ = 0.0;
  double sum_ = 0.0;
  double comp_ = 0.0;
  long count_ = 0;
  bool nan_ = false;
};

struct Range {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double spread() const noexcept { return max - min; }
};

// min / max / mean over all nodes, or interior nodes only.
Range field_range(const ScalarField& f, bool interior_only = false);

}  // namespace cmclab
