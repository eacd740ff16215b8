#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sgmc/rational.hpp"

namespace sgmc {

using VarId = std::uint32_t;

/// Names of the probability variables. Variable `v` renders as `x_<label(v)>`.
class VariableTable {
 public:
  VariableTable() = default;
  explicit VariableTable(std::vector<std::string> labels);

  VarId add(std::string label);
  std::optional<VarId> find(std::string_view label) const;
  const std::string& label(VarId v) const { return labels_.at(v); }
  std::string name(VarId v) const { return "x_" + label(v); }
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> labels_;
};

/// Power product of variables. Exponents are stored densely by variable id
/// with trailing zeros trimmed, so equal monomials compare equal bytewise.
class Monomial {
 public:
  Monomial() = default;

  static Monomial variable(VarId v, std::uint32_t exponent = 1);

  std::uint32_t exponent(VarId v) const { return v < exps_.size() ? exps_[v] : 0; }
  std::uint32_t degree() const { return degree_; }
  std::span<const std::uint32_t> exponents() const { return exps_; }
  bool is_one() const { return exps_.empty(); }

  Monomial with_exponent(VarId v, std::uint32_t exponent) const;
  Monomial operator*(const Monomial& other) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

  std::size_t hash() const;

 private:
  void trim();

  std::vector<std::uint32_t> exps_;
  std::uint32_t degree_ = 0;
};

/// Graded lexicographic order: lower total degree first; within a degree the
/// monomial with the larger exponent on the smallest variable id comes first.
bool graded_lex_less(const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

using Point = std::map<VarId, Rational>;

/// Sparse multivariate polynomial with exact rational coefficients in
/// canonical form: terms sorted by graded_lex_less, no zero coefficients.
class Polynomial {
 public:
  using Term = std::pair<Monomial, Rational>;

  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT(google-explicit-constructor)
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static Polynomial variable(VarId v);
  static Polynomial monomial(Monomial m, Rational c = 1);
  /// Combines like terms and drops zeros; input order is irrelevant.
  static Polynomial from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  std::vector<VarId> variables() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial pow(std::uint32_t n) const;

  /// Product truncated to terms of total degree < bound.
  static Polynomial multiply_truncated(const Polynomial& a, const Polynomial& b, std::uint32_t bound);

  /// Throws Error(kInvalidArgument) if a variable of the polynomial is unassigned.
  Rational evaluate(const Point& point) const;

  Polynomial substitute(VarId v, const Polynomial& value) const;
  Polynomial partial(VarId v) const;

  /// Smallest exponent of `v` over all terms (0 for the zero polynomial).
  std::uint32_t min_exponent(VarId v) const;
  /// Exact division by v^k; requires min_exponent(v) >= k.
  Polynomial divide_by_variable_power(VarId v, std::uint32_t k) const;
  /// Largest monomial dividing every term (the one monomial for zero).
  Monomial monomial_content() const;
  Polynomial divide_by_monomial(const Monomial& m) const;
  /// Quotient if d divides this polynomial exactly, nullopt otherwise.
  std::optional<Polynomial> divide_exact(const Polynomial& d) const;

  /// Terms of total degree < bound.
  Polynomial truncate(std::uint32_t bound) const;
  Polynomial homogeneous_part(std::uint32_t degree) const;

  /// Sum of coefficients of the degree-d part, i.e. the value at x = 1 of that part.
  Rational coefficient_sum(std::uint32_t degree) const;

  std::size_t hash() const;

 private:
  std::vector<Term> terms_;
};

/// Total order on canonical polynomials (used to sort factor lists).
bool polynomial_less(const Polynomial& a, const Polynomial& b);

std::string to_string(const Monomial& m, const VariableTable& vars);
std::string to_string(const Polynomial& p, const VariableTable& vars);

}  // namespace sgmc
