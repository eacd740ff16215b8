#include "sgmc/rational_function.hpp"

#include <algorithm>
#include <map>

#include "sgmc/error.hpp"

namespace sgmc {

namespace {

using Factor = RationalFunction::Factor;

bool factor_less(const Factor& a, const Factor& b) {
  return polynomial_less(a.poly, b.poly);
}

// Splits p^mult into normalized factors; returns the scalar that was divided out,
// i.e. p^mult = scale * prod(out).
Rational normalize_into(const Polynomial& p, std::uint32_t mult, std::vector<Factor>& out) {
  if (p.is_zero()) throw Error(ErrorKind::kZeroDenominator, "denominator factor is identically zero");
  Monomial content = p.monomial_content();
  Polynomial q = content.is_one() ? p : p.divide_by_monomial(content);
  auto e = content.exponents();
  for (std::size_t v = 0; v < e.size(); ++v) {
    if (e[v] != 0) out.push_back({Polynomial::variable(static_cast<VarId>(v)), e[v] * mult});
  }
  Rational lead = q.terms().front().second;
  Rational scale = 1;
  for (std::uint32_t i = 0; i < mult; ++i) scale *= lead;
  if (!q.is_constant()) {
    q *= Rational(1 / lead);
    out.push_back({std::move(q), mult});
  }
  return scale;
}

std::vector<Factor> merge_sorted(std::vector<Factor> fs) {
  std::sort(fs.begin(), fs.end(), factor_less);
  std::vector<Factor> out;
  for (auto& f : fs) {
    if (!out.empty() && out.back().poly == f.poly) {
      out.back().multiplicity += f.multiplicity;
    } else {
      out.push_back(std::move(f));
    }
  }
  return out;
}

Polynomial product(const std::vector<Factor>& fs) {
  Polynomial p(1);
  for (const auto& f : fs) p *= f.poly.pow(f.multiplicity);
  return p;
}

// For sorted factor lists a, b: lcm and the cofactors lcm/a, lcm/b.
struct LcmSplit {
  std::vector<Factor> lcm;
  std::vector<Factor> only_a;  // lcm / b
  std::vector<Factor> only_b;  // lcm / a
};

LcmSplit lcm_split(const std::vector<Factor>& a, const std::vector<Factor>& b) {
  LcmSplit s;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && factor_less(a[i], b[j]))) {
      s.lcm.push_back(a[i]);
      s.only_a.push_back(a[i]);
      ++i;
    } else if (i == a.size() || factor_less(b[j], a[i])) {
      s.lcm.push_back(b[j]);
      s.only_b.push_back(b[j]);
      ++j;
    } else {
      std::uint32_t ma = a[i].multiplicity;
      std::uint32_t mb = b[j].multiplicity;
      s.lcm.push_back({a[i].poly, std::max(ma, mb)});
      if (ma > mb) s.only_a.push_back({a[i].poly, ma - mb});
      if (mb > ma) s.only_b.push_back({a[i].poly, mb - ma});
      ++i;
      ++j;
    }
  }
  return s;
}

Rational rational_pow(const Rational& r, std::uint32_t e) {
  Rational out = 1;
  for (std::uint32_t i = 0; i < e; ++i) out *= r;
  return out;
}

// Graded values of p(z*point): coefficient of z^d.
std::vector<Rational> graded_eval(const Polynomial& p, const Point& point) {
  std::vector<Rational> out(static_cast<std::size_t>(std::max(p.degree(), 0)) + 1, Rational(0));
  for (const auto& [m, c] : p.terms()) {
    out[m.degree()] += Polynomial::monomial(m, c).evaluate(point);
  }
  return out;
}

std::vector<Rational> univariate_mul(const std::vector<Rational>& a, const std::vector<Rational>& b, std::size_t n) {
  std::vector<Rational> out(n, Rational(0));
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<Rational> univariate_inverse(const std::vector<Rational>& f, std::size_t n) {
  if (f.empty() || f[0] == 0) {
    throw Error(ErrorKind::kNonUnitDenominator, "denominator has zero constant term");
  }
  std::vector<Rational> inv(n, Rational(0));
  Rational c0 = 1 / f[0];
  for (std::size_t k = 0; k < n; ++k) {
    Rational s = k == 0 ? Rational(1) : Rational(0);
    for (std::size_t i = 1; i <= k && i < f.size(); ++i) s -= f[i] * inv[k - i];
    inv[k] = s * c0;
  }
  return inv;
}

// Truncated inverse of a polynomial with nonzero constant term.
Polynomial series_inverse(const Polynomial& f, std::uint32_t bound) {
  if (f.constant_term() == 0) {
    throw Error(ErrorKind::kNonUnitDenominator, "denominator has zero constant term");
  }
  Rational c = f.constant_term();
  Polynomial g = -(f - Polynomial(c)) * Rational(1 / c);  // f = c (1 - g)
  Polynomial inv(1);
  for (std::uint32_t k = 1; k < bound; ++k) {
    inv = Polynomial(1) + Polynomial::multiply_truncated(g, inv, bound);
  }
  return inv * Rational(1 / c);
}

}  // namespace

RationalFunction::RationalFunction(Polynomial numerator) : num_(std::move(numerator)) {}

RationalFunction::RationalFunction(Polynomial numerator, const Polynomial& denominator) {
  if (denominator.is_zero()) throw Error(ErrorKind::kZeroDenominator, "denominator is identically zero");
  *this = from_factors(std::move(numerator), {{denominator, 1}});
}

RationalFunction RationalFunction::from_factors(Polynomial numerator, const std::vector<Factor>& factors) {
  RationalFunction r;
  std::vector<Factor> fs;
  Rational scale = 1;
  for (const auto& f : factors) {
    if (f.multiplicity == 0) continue;
    scale *= normalize_into(f.poly, f.multiplicity, fs);
  }
  if (numerator.is_zero()) return r;
  r.num_ = std::move(numerator);
  if (scale != 1) r.num_ *= Rational(1 / scale);
  r.factors_ = merge_sorted(std::move(fs));
  return r;
}

Polynomial RationalFunction::denominator() const {
  return product(factors_);
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.factors_ == b.factors_) {
    RationalFunction r;
    r.num_ = a.num_ + b.num_;
    if (!r.num_.is_zero()) r.factors_ = a.factors_;
    return r;
  }
  LcmSplit s = lcm_split(a.factors_, b.factors_);
  RationalFunction r;
  r.num_ = a.num_ * product(s.only_b) + b.num_ * product(s.only_a);
  if (!r.num_.is_zero()) r.factors_ = std::move(s.lcm);
  return r;
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return a + (-b);
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return {};
  RationalFunction r;
  r.num_ = a.num_ * b.num_;
  std::vector<Factor> fs = a.factors_;
  fs.insert(fs.end(), b.factors_.begin(), b.factors_.end());
  r.factors_ = merge_sorted(std::move(fs));
  return r;
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw Error(ErrorKind::kDivisionByZero, "division by the zero function");
  if (a.is_zero()) return {};
  std::vector<Factor> fs = a.factors_;
  fs.push_back({b.num_, 1});
  return RationalFunction::from_factors(a.num_ * b.denominator(), fs);
}

RationalFunction rf_simplify(const RationalFunction& r) {
  if (r.is_zero()) return r;
  Polynomial num = r.numerator();
  std::vector<Factor> kept;
  for (const auto& f : r.factors()) {
    std::uint32_t m = f.multiplicity;
    while (m > 0) {
      auto q = num.divide_exact(f.poly);
      if (!q) break;
      num = std::move(*q);
      --m;
    }
    if (m > 0) kept.push_back({f.poly, m});
  }
  return RationalFunction::from_factors(std::move(num), kept);
}

bool rf_equal(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  LcmSplit s = lcm_split(a.factors(), b.factors());
  // a.num / a.den == b.num / b.den  <=>  a.num * (lcm/a.den) == b.num * (lcm/b.den)
  return a.numerator() * product(s.only_b) == b.numerator() * product(s.only_a);
}

RationalFunction rf_substitute(const RationalFunction& r, VarId v, const Polynomial& value) {
  std::vector<Factor> fs;
  fs.reserve(r.factors().size());
  for (const auto& f : r.factors()) {
    Polynomial p = f.poly.substitute(v, value);
    if (p.is_zero()) throw Error(ErrorKind::kZeroDenominator, "denominator vanishes after substitution");
    fs.push_back({std::move(p), f.multiplicity});
  }
  return RationalFunction::from_factors(r.numerator().substitute(v, value), fs);
}

Rational rf_eval(const RationalFunction& r, const Point& point) {
  Rational den = 1;
  for (const auto& f : r.factors()) {
    Rational x = f.poly.evaluate(point);
    if (x == 0) throw Error(ErrorKind::kZeroDenominator, "denominator vanishes at the evaluation point");
    den *= rational_pow(x, f.multiplicity);
  }
  return r.numerator().evaluate(point) / den;
}

RationalFunction rf_partial(const RationalFunction& r, VarId v) {
  std::vector<std::size_t> involved;
  for (std::size_t i = 0; i < r.factors().size(); ++i) {
    if (!r.factors()[i].poly.partial(v).is_zero()) {
      involved.push_back(i);
    }
  }
  const auto& fs = r.factors();
  Polynomial all(1);
  for (auto i : involved) all *= fs[i].poly;
  Polynomial num = r.numerator().partial(v) * all;
  for (auto i : involved) {
    Polynomial others(1);
    for (auto j : involved) {
      if (j != i) others *= fs[j].poly;
    }
    num -= r.numerator() * fs[i].poly.partial(v) * Rational(fs[i].multiplicity) * others;
  }
  std::vector<Factor> out = fs;
  for (auto i : involved) out[i].multiplicity += 1;
  return RationalFunction::from_factors(std::move(num), out);
}

SeriesTruncation rf_series(const RationalFunction& r, std::uint32_t bound) {
  SeriesTruncation s;
  s.bound = bound;
  if (bound == 0) return s;
  Polynomial acc = r.numerator().truncate(bound);
  for (const auto& f : r.factors()) {
    Polynomial inv = series_inverse(f.poly, bound);
    for (std::uint32_t k = 0; k < f.multiplicity; ++k) acc = Polynomial::multiply_truncated(acc, inv, bound);
  }
  s.coefficients = std::move(acc);
  return s;
}

std::vector<Rational> rf_graded_values(const RationalFunction& r, const Point& point, std::uint32_t bound) {
  std::vector<Rational> acc = graded_eval(r.numerator(), point);
  acc.resize(std::max<std::size_t>(acc.size(), bound), Rational(0));
  acc.resize(bound);
  for (const auto& f : r.factors()) {
    std::vector<Rational> inv = univariate_inverse(graded_eval(f.poly, point), bound);
    for (std::uint32_t k = 0; k < f.multiplicity; ++k) acc = univariate_mul(acc, inv, bound);
  }
  return acc;
}

RationalFunction rf_limit_box(const RationalFunction& r, VarId box, VarId elim, const std::vector<VarId>& all_vars) {
  Polynomial value(1);
  value -= Polynomial::variable(box);
  for (VarId v : all_vars) {
    if (v != elim) value -= Polynomial::variable(v);
  }
  Polynomial num = r.numerator().substitute(elim, value);
  if (num.is_zero()) return {};
  std::uint32_t j = num.min_exponent(box);
  std::uint64_t k = 0;
  std::vector<Factor> fs;
  for (const auto& f : r.factors()) {
    Polynomial p = f.poly.substitute(elim, value);
    if (p.is_zero()) throw Error(ErrorKind::kZeroDenominator, "denominator vanishes under the constraint");
    std::uint32_t kf = p.min_exponent(box);
    k += static_cast<std::uint64_t>(kf) * f.multiplicity;
    Polynomial d = p.divide_by_variable_power(box, kf).substitute(box, Polynomial());
    fs.push_back({std::move(d), f.multiplicity});
  }
  if (j > k) return {};
  if (j < k) {
    throw Error(ErrorKind::kPoleAtLimit,
                "denominator carries x_box^" + std::to_string(k) + " against numerator x_box^" + std::to_string(j));
  }
  return RationalFunction::from_factors(num.divide_by_variable_power(box, j).substitute(box, Polynomial()), fs);
}

std::string to_string(const RationalFunction& r, const VariableTable& vars) {
  if (r.is_polynomial()) return to_string(r.numerator(), vars);
  return "(" + to_string(r.numerator(), vars) + ")/(" + to_string(r.denominator(), vars) + ")";
}

}  // namespace sgmc
