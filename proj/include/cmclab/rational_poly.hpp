#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cmclab {

using Rational = boost::multiprecision::cpp_rational;

// Exact rational conversion of a finite double (every double is a dyadic
// rational, so this loses nothing).
Rational to_rational(double x);

// Dense univariate polynomial with exact rational coefficients; coeff(k) is
// the coefficient of x^k. Trailing zeros are trimmed, so the zero
// polynomial has degree -1.
class RationalPoly {
 public:
  RationalPoly() = default;
  RationalPoly(std::initializer_list<Rational> coeffs);
  explicit RationalPoly(std::vector<Rational> coeffs);
  static RationalPoly constant(const Rational& c) { return RationalPoly({c}); }
  static RationalPoly x() { return RationalPoly({Rational(0), Rational(1)}); }

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  Rational coeff(int k) const;
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  Rational operator()(const Rational& x) const;

  RationalPoly& operator+=(const RationalPoly& o);
  RationalPoly& operator-=(const RationalPoly& o);
  RationalPoly& operator*=(const RationalPoly& o);
  RationalPoly& operator*=(const Rational& c);

  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
  friend RationalPoly operator*(RationalPoly a, const RationalPoly& b) { return a *= b; }
  friend RationalPoly operator*(RationalPoly a, const Rational& c) { return a *= c; }
  friend RationalPoly operator*(const Rational& c, RationalPoly a) { return a *= c; }
  friend bool operator==(const RationalPoly& a, const RationalPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

}  // namespace cmclab
