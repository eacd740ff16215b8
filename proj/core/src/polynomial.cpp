#include "sgmc/polynomial.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "sgmc/error.hpp"

namespace sgmc {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

using Accumulator = std::unordered_map<Monomial, Rational, MonomialHash>;

std::vector<Polynomial::Term> drain(Accumulator& acc) {
  std::vector<Polynomial::Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c != 0) out.emplace_back(m, std::move(c));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return graded_lex_less(a.first, b.first); });
  return out;
}

}  // namespace

VariableTable::VariableTable(std::vector<std::string> labels) : labels_(std::move(labels)) {}

VarId VariableTable::add(std::string label) {
  if (auto v = find(label)) return *v;
  labels_.push_back(std::move(label));
  return static_cast<VarId>(labels_.size() - 1);
}

std::optional<VarId> VariableTable::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return static_cast<VarId>(i);
  }
  return std::nullopt;
}

Monomial Monomial::variable(VarId v, std::uint32_t exponent) {
  Monomial m;
  if (exponent == 0) return m;
  m.exps_.assign(v + 1, 0);
  m.exps_[v] = exponent;
  m.degree_ = exponent;
  return m;
}

Monomial Monomial::with_exponent(VarId v, std::uint32_t exponent) const {
  Monomial m = *this;
  if (v >= m.exps_.size()) {
    if (exponent == 0) return m;
    m.exps_.resize(v + 1, 0);
  }
  m.degree_ = m.degree_ - m.exps_[v] + exponent;
  m.exps_[v] = exponent;
  m.trim();
  return m;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial m;
  const auto& longer = exps_.size() >= other.exps_.size() ? exps_ : other.exps_;
  const auto& shorter = exps_.size() >= other.exps_.size() ? other.exps_ : exps_;
  m.exps_ = longer;
  for (std::size_t i = 0; i < shorter.size(); ++i) m.exps_[i] += shorter[i];
  m.degree_ = degree_ + other.degree_;
  return m;
}

void Monomial::trim() {
  while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
}

std::size_t Monomial::hash() const {
  std::size_t h = exps_.size();
  for (auto e : exps_) h = mix(h, e);
  return h;
}

bool graded_lex_less(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  auto ea = a.exponents();
  auto eb = b.exponents();
  std::size_t n = std::max(ea.size(), eb.size());
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t x = i < ea.size() ? ea[i] : 0;
    std::uint32_t y = i < eb.size() ? eb[i] : 0;
    if (x != y) return x > y;
  }
  return false;
}

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_.emplace_back(Monomial{}, c);
}

Polynomial Polynomial::variable(VarId v) {
  return monomial(Monomial::variable(v), 1);
}

Polynomial Polynomial::monomial(Monomial m, Rational c) {
  Polynomial p;
  if (c != 0) p.terms_.emplace_back(std::move(m), std::move(c));
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return graded_lex_less(a.first, b.first); });
  Polynomial p;
  for (auto& t : terms) {
    t.second.canonicalize();
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
    } else {
      if (!p.terms_.empty() && p.terms_.back().second == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().second == 0) p.terms_.pop_back();
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
}

Rational Polynomial::constant_term() const {
  if (!terms_.empty() && terms_[0].first.is_one()) return terms_[0].second;
  return 0;
}

int Polynomial::degree() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.back().first.degree());
}

std::vector<VarId> Polynomial::variables() const {
  std::vector<bool> seen;
  for (const auto& [m, c] : terms_) {
    auto e = m.exponents();
    if (seen.size() < e.size()) seen.resize(e.size(), false);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) seen[i] = true;
    }
  }
  std::vector<VarId> out;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i]) out.push_back(static_cast<VarId>(i));
  }
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.terms_.empty()) return *this;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && graded_lex_less(a->first, b->first))) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || graded_lex_less(b->first, a->first)) {
      merged.push_back(*b++);
    } else {
      Rational c = a->second + b->second;
      if (c != 0) merged.emplace_back(std::move(a->first), std::move(c));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  return *this += -other;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.second = -t.second;
  return p;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_constant()) return b * a.terms_[0].second;
  if (b.is_constant()) return a * b.terms_[0].second;
  Accumulator acc;
  acc.reserve(a.size() * b.size());
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      acc[ma * mb] += ca * cb;
    }
  }
  Polynomial p;
  p.terms_ = drain(acc);
  return p;
}

Polynomial Polynomial::multiply_truncated(const Polynomial& a, const Polynomial& b, std::uint32_t bound) {
  Accumulator acc;
  for (const auto& [ma, ca] : a.terms_) {
    if (ma.degree() >= bound) break;
    for (const auto& [mb, cb] : b.terms_) {
      if (ma.degree() + mb.degree() >= bound) break;
      acc[ma * mb] += ca * cb;
    }
  }
  Polynomial p;
  p.terms_ = drain(acc);
  return p;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.terms_ == b.terms_;
}

Polynomial Polynomial::pow(std::uint32_t n) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (n > 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

Rational Polynomial::evaluate(const Point& point) const {
  std::vector<const Rational*> values;
  std::vector<std::vector<Rational>> powers;
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    auto e = m.exponents();
    if (values.size() < e.size()) {
      values.resize(e.size(), nullptr);
      powers.resize(e.size());
    }
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (values[v] == nullptr) {
        auto it = point.find(static_cast<VarId>(v));
        if (it == point.end()) {
          throw Error(ErrorKind::kInvalidArgument,
                      "variable id " + std::to_string(v) + " has no value at the evaluation point");
        }
        values[v] = &it->second;
        powers[v].push_back(1);
      }
      while (powers[v].size() <= e[v]) powers[v].push_back(powers[v].back() * *values[v]);
      term *= powers[v][e[v]];
    }
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::substitute(VarId v, const Polynomial& value) const {
  std::vector<Polynomial> value_powers{Polynomial(1)};
  Accumulator acc;
  for (const auto& [m, c] : terms_) {
    std::uint32_t e = m.exponent(v);
    if (e == 0) {
      acc[m] += c;
      continue;
    }
    while (value_powers.size() <= e) value_powers.push_back(value_powers.back() * value);
    Monomial rest = m.with_exponent(v, 0);
    for (const auto& [mv, cv] : value_powers[e].terms_) acc[rest * mv] += c * cv;
  }
  Polynomial p;
  p.terms_ = drain(acc);
  return p;
}

Polynomial Polynomial::partial(VarId v) const {
  std::vector<Term> out;
  for (const auto& [m, c] : terms_) {
    std::uint32_t e = m.exponent(v);
    if (e == 0) continue;
    out.emplace_back(m.with_exponent(v, e - 1), c * e);
  }
  return from_terms(std::move(out));
}

std::uint32_t Polynomial::min_exponent(VarId v) const {
  if (terms_.empty()) return 0;
  std::uint32_t k = UINT32_MAX;
  for (const auto& [m, c] : terms_) k = std::min(k, m.exponent(v));
  return k;
}

Polynomial Polynomial::divide_by_variable_power(VarId v, std::uint32_t k) const {
  if (k == 0) return *this;
  if (min_exponent(v) < k) {
    throw Error(ErrorKind::kInvalidArgument, "polynomial is not divisible by the requested variable power");
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) out.emplace_back(m.with_exponent(v, m.exponent(v) - k), c);
  return from_terms(std::move(out));
}

Monomial Polynomial::monomial_content() const {
  if (terms_.empty()) return {};
  std::vector<std::uint32_t> mins(terms_[0].first.exponents().begin(), terms_[0].first.exponents().end());
  for (const auto& [m, c] : terms_) {
    auto e = m.exponents();
    if (mins.size() > e.size()) mins.resize(e.size());
    for (std::size_t i = 0; i < mins.size(); ++i) mins[i] = std::min(mins[i], e[i]);
  }
  Monomial out;
  for (std::size_t i = 0; i < mins.size(); ++i) {
    if (mins[i] != 0) out = out * Monomial::variable(static_cast<VarId>(i), mins[i]);
  }
  return out;
}

Polynomial Polynomial::divide_by_monomial(const Monomial& d) const {
  Polynomial p = *this;
  auto e = d.exponents();
  for (std::size_t v = 0; v < e.size(); ++v) {
    if (e[v] != 0) p = p.divide_by_variable_power(static_cast<VarId>(v), e[v]);
  }
  return p;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& d) const {
  if (d.is_zero()) throw Error(ErrorKind::kDivisionByZero, "polynomial division by zero");
  if (is_zero()) return Polynomial();
  const auto& [ld, cd] = d.terms_.back();
  if (ld.degree() > terms_.back().first.degree()) return std::nullopt;
  const auto ed = ld.exponents();
  // Remainder keyed in graded-lex order; the leading term is the last entry.
  std::map<Monomial, Rational, bool (*)(const Monomial&, const Monomial&)> r(graded_lex_less);
  for (const auto& [m, c] : terms_) r.emplace(m, c);
  std::vector<Term> q;
  while (!r.empty()) {
    auto lead = std::prev(r.end());
    auto er = lead->first.exponents();
    if (ed.size() > er.size()) return std::nullopt;
    Monomial t;
    for (std::size_t v = 0; v < er.size(); ++v) {
      std::uint32_t dv = v < ed.size() ? ed[v] : 0;
      if (er[v] < dv) return std::nullopt;
      if (er[v] > dv) t = t.with_exponent(static_cast<VarId>(v), er[v] - dv);
    }
    Rational c = lead->second / cd;
    for (const auto& [m, dc] : d.terms_) {
      Monomial mm = t * m;
      auto it = r.find(mm);
      if (it == r.end()) {
        r.emplace(std::move(mm), -c * dc);
      } else {
        it->second -= c * dc;
        if (it->second == 0) r.erase(it);
      }
    }
    q.emplace_back(std::move(t), std::move(c));
  }
  return from_terms(std::move(q));
}

Polynomial Polynomial::truncate(std::uint32_t bound) const {
  Polynomial p;
  for (const auto& t : terms_) {
    if (t.first.degree() >= bound) break;
    p.terms_.push_back(t);
  }
  return p;
}

Polynomial Polynomial::homogeneous_part(std::uint32_t degree) const {
  Polynomial p;
  for (const auto& t : terms_) {
    if (t.first.degree() == degree) p.terms_.push_back(t);
  }
  return p;
}

Rational Polynomial::coefficient_sum(std::uint32_t degree) const {
  Rational s = 0;
  for (const auto& [m, c] : terms_) {
    if (m.degree() == degree) s += c;
  }
  return s;
}

std::size_t Polynomial::hash() const {
  std::size_t h = terms_.size();
  for (const auto& [m, c] : terms_) {
    h = mix(h, m.hash());
    h = mix(h, mpz_get_ui(c.get_num_mpz_t()));
    h = mix(h, mpz_get_ui(c.get_den_mpz_t()));
  }
  return h;
}

bool polynomial_less(const Polynomial& a, const Polynomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& [ma, ca] = a.terms()[i];
    const auto& [mb, cb] = b.terms()[i];
    if (graded_lex_less(ma, mb)) return true;
    if (graded_lex_less(mb, ma)) return false;
    if (ca != cb) return ca < cb;
  }
  return false;
}

std::string to_string(const Monomial& m, const VariableTable& vars) {
  std::string out;
  auto e = m.exponents();
  for (std::size_t v = 0; v < e.size(); ++v) {
    if (e[v] == 0) continue;
    if (!out.empty()) out += '*';
    out += v < vars.size() ? vars.name(static_cast<VarId>(v)) : "x_" + std::to_string(v);
    if (e[v] > 1) out += "^" + std::to_string(e[v]);
  }
  return out;
}

std::string to_string(const Polynomial& p, const VariableTable& vars) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational mag = abs(c);
    bool negative = c < 0;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (m.is_one()) {
      os << to_string(mag);
    } else {
      if (mag != 1) os << to_string(mag) << '*';
      os << to_string(m, vars);
    }
  }
  return os.str();
}

}  // namespace sgmc
