#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sgmc/polynomial.hpp"

namespace sgmc {

/// Quotient N / prod(f_i^m_i). The denominator is kept as a sorted list of
/// distinct normalized factors (first graded-lex term has coefficient 1; no
/// monomial content except single-variable factors x_v). No multivariate gcd
/// is ever taken, so equality goes through cross-multiplication.
class RationalFunction {
 public:
  struct Factor {
    Polynomial poly;
    std::uint32_t multiplicity = 1;
    friend bool operator==(const Factor& a, const Factor& b) {
      return a.multiplicity == b.multiplicity && a.poly == b.poly;
    }
  };

  RationalFunction() = default;
  RationalFunction(Polynomial numerator);  // NOLINT(google-explicit-constructor)
  RationalFunction(const Rational& c) : RationalFunction(Polynomial(c)) {}  // NOLINT
  RationalFunction(long c) : RationalFunction(Polynomial(c)) {}  // NOLINT
  /// Throws Error(kZeroDenominator) if the denominator is identically zero.
  RationalFunction(Polynomial numerator, const Polynomial& denominator);

  /// Builds from an arbitrary (unnormalized) factor list.
  static RationalFunction from_factors(Polynomial numerator, const std::vector<Factor>& factors);

  const Polynomial& numerator() const { return num_; }
  const std::vector<Factor>& factors() const { return factors_; }
  /// Expanded product of the factors.
  Polynomial denominator() const;
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return factors_.empty(); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  /// Throws Error(kDivisionByZero) when b is the zero function.
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction operator-() const;
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

 private:
  Polynomial num_;
  std::vector<Factor> factors_;
};

/// Cancels every denominator factor that divides the numerator exactly.
RationalFunction rf_simplify(const RationalFunction& r);

/// True iff a.num * b.den == b.num * a.den after cancelling shared factors.
bool rf_equal(const RationalFunction& a, const RationalFunction& b);

/// Throws Error(kZeroDenominator) if the substituted denominator vanishes.
RationalFunction rf_substitute(const RationalFunction& r, VarId v, const Polynomial& value);

/// Throws Error(kZeroDenominator) when the denominator vanishes at the point.
Rational rf_eval(const RationalFunction& r, const Point& point);

RationalFunction rf_partial(const RationalFunction& r, VarId v);

struct SeriesTruncation {
  Polynomial coefficients;
  std::uint32_t bound = 0;
};

/// Power series of r, all terms of total degree < bound. Throws
/// Error(kNonUnitDenominator) if a denominator factor has zero constant term.
SeriesTruncation rf_series(const RationalFunction& r, std::uint32_t bound);

/// Values at `point` of the homogeneous parts of degree 0..bound-1 of the
/// series of r, via the univariate series in z of r(z*point).
std::vector<Rational> rf_graded_values(const RationalFunction& r, const Point& point, std::uint32_t bound);

/// Limit x_box -> 0 under sum(all_vars) + x_box = 1, with elim eliminated.
/// Throws Error(kPoleAtLimit) if the denominator carries the larger x_box power.
RationalFunction rf_limit_box(const RationalFunction& r, VarId box, VarId elim, const std::vector<VarId>& all_vars);

/// "num" for polynomials, "(num)/(den)" otherwise.
std::string to_string(const RationalFunction& r, const VariableTable& vars);

}  // namespace sgmc
