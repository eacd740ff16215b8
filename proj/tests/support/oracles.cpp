#include "oracles.hpp"

#include <algorithm>
#include <stdexcept>

#include "sgmc/error.hpp"

namespace sgmc::testing {

Map compose(const Map& s, const Map& t) {
  Map out(t.size());
  for (std::size_t w = 0; w < t.size(); ++w) out[w] = s[t[w]];
  return out;
}

std::set<Map> naive_closure(const std::vector<Map>& gens) {
  std::set<Map> s(gens.begin(), gens.end());
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Map> cur(s.begin(), s.end());
    for (const auto& x : cur) {
      for (const auto& y : cur) {
        if (s.insert(compose(x, y)).second) grew = true;
      }
    }
  }
  return s;
}

std::set<Map> naive_minimal_ideal(const std::set<Map>& s) {
  std::optional<std::set<Map>> best;
  for (const auto& x : s) {
    std::set<Map> ideal{x};
    for (const auto& u : s) {
      ideal.insert(compose(u, x));
      ideal.insert(compose(x, u));
      for (const auto& v : s) ideal.insert(compose(compose(u, x), v));
    }
    if (!best || ideal.size() < best->size()) best = ideal;
  }
  return *best;
}

std::optional<Distribution> naive_stationary(const MarkovChainSpec& spec, const Point& point) {
  const std::size_t n = spec.states.size();
  // A[s'][s] = T[s'][s] - [s' == s]
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1, Rational(0)));
  for (std::size_t g = 0; g < spec.generators.size(); ++g) {
    Rational p = point.at(static_cast<VarId>(g));
    for (std::size_t s = 0; s < n; ++s) a[spec.generators[g].action.images[s]][s] += p;
  }
  for (std::size_t s = 0; s < n; ++s) a[s][s] -= 1;
  // Kernel dimension first: rank of T - I must be n - 1.
  auto rank_of = [&](std::vector<std::vector<Rational>> m) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < n; ++col) {
      std::size_t piv = rank;
      while (piv < n && m[piv][col] == 0) ++piv;
      if (piv == n) continue;
      std::swap(m[piv], m[rank]);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == rank || m[r][col] == 0) continue;
        Rational f = m[r][col] / m[rank][col];
        for (std::size_t c = 0; c < n; ++c) m[r][c] -= f * m[rank][c];
      }
      ++rank;
    }
    return rank;
  };
  if (rank_of(a) != n - 1) return std::nullopt;
  // Replace the last row by the normalization and solve.
  for (std::size_t c = 0; c < n; ++c) a[n - 1][c] = 1;
  a[n - 1][n] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t c = 0; c <= n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  Distribution d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i][n] / a[i][i];
  return d;
}

Distribution naive_step_distribution(const MarkovChainSpec& spec, const Point& point, std::uint32_t start,
                                     std::uint32_t t) {
  Distribution d(spec.states.size(), Rational(0));
  d[start] = 1;
  for (std::uint32_t step = 0; step < t; ++step) {
    Distribution next(d.size(), Rational(0));
    for (std::size_t g = 0; g < spec.generators.size(); ++g) {
      Rational p = point.at(static_cast<VarId>(g));
      for (std::size_t s = 0; s < d.size(); ++s) next[spec.generators[g].action.images[s]] += p * d[s];
    }
    d = std::move(next);
  }
  return d;
}

std::vector<Rational> naive_hitting_tail(const MarkovChainSpec& spec, const Point& point, std::uint32_t tmax) {
  std::vector<Map> gens;
  for (const auto& g : spec.generators) gens.push_back(g.action.images);
  std::set<Map> k = naive_minimal_ideal(naive_closure(gens));
  std::vector<Rational> tail{Rational(1)};
  // alive: words of the current length whose product is still outside K.
  std::map<std::optional<Map>, Rational> alive{{std::nullopt, Rational(1)}};
  for (std::uint32_t t = 1; t <= tmax; ++t) {
    Rational mass(0);
    for (const auto& [e, p] : alive) mass += p;
    tail.push_back(mass);
    std::map<std::optional<Map>, Rational> next;
    for (const auto& [e, p] : alive) {
      for (std::size_t g = 0; g < gens.size(); ++g) {
        Map f = e ? compose(*e, gens[g]) : gens[g];
        if (k.count(f)) continue;
        next[f] += p * point.at(static_cast<VarId>(g));
      }
    }
    alive = std::move(next);
  }
  return tail;
}

std::map<Word, std::size_t> brute_force_words(const RootedGraph& g, VertexId target, std::size_t maxlen) {
  std::map<Word, std::size_t> out;
  std::vector<std::pair<Word, VertexId>> layer{{Word{}, g.root()}};
  if (g.root() == target) {
    out[Word{}] = 1;
    return out;
  }
  const auto k = static_cast<LabelId>(g.labels().size());
  for (std::size_t len = 1; len <= maxlen; ++len) {
    std::vector<std::pair<Word, VertexId>> next;
    for (const auto& [w, v] : layer) {
      for (LabelId a = 0; a < k; ++a) {
        auto u = g.follow(v, a);
        if (!u) continue;
        Word x = w;
        x.push_back(a);
        if (*u == target) {
          out[x] += 1;
        } else {
          next.emplace_back(std::move(x), *u);
        }
      }
    }
    layer = std::move(next);
  }
  return out;
}

Rational naive_eval(const Polynomial& p, const Point& point) {
  Rational sum(0);
  for (const auto& [m, c] : p.terms()) {
    Rational term = c;
    for (const auto& [v, value] : point) {
      for (std::uint32_t i = 0; i < m.exponent(v); ++i) term *= value;
    }
    sum += term;
  }
  return sum;
}

Rational naive_eval(const RationalFunction& r, const Point& point) {
  return naive_eval(r.numerator(), point) / naive_eval(r.denominator(), point);
}

Rational naive_tv(const Distribution& u, const Distribution& v) {
  // Max over all subsets of |u(A) - v(A)|.
  Rational best(0);
  const std::size_t n = u.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Rational d(0);
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) d += u[i] - v[i];
    }
    if (abs(d) > best) best = abs(d);
  }
  return best;
}

namespace {

std::size_t cp_len(unsigned char c) {
  if (c >= 0xF0) return 4;
  if (c >= 0xE0) return 3;
  if (c >= 0xC0) return 2;
  return 1;
}

struct KleeneParser {
  const std::string& s;
  const std::vector<std::string>& labels;
  std::size_t i = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error("kleene parse error at " + std::to_string(i) + ": " + msg + " in '" + s + "'");
  }
  bool at(char c) const { return i < s.size() && s[i] == c; }

  Kleene seq() {
    std::vector<Kleene> parts;
    while (i < s.size() && !at(')') && !at('}') && !at(',')) parts.push_back(postfix());
    if (parts.empty()) return k_epsilon();
    return k_concat(std::move(parts));
  }
  Kleene postfix() {
    Kleene a = atom();
    while (at('*')) {
      ++i;
      a = k_star(a);
    }
    return a;
  }
  Kleene atom() {
    if (at('(')) {
      ++i;
      Kleene e = seq();
      if (!at(')')) fail("expected ')'");
      ++i;
      return e;
    }
    if (at('{')) {
      ++i;
      std::vector<Kleene> alts{seq()};
      while (at(',')) {
        ++i;
        alts.push_back(seq());
      }
      if (!at('}')) fail("expected '}'");
      ++i;
      return k_union(std::move(alts));
    }
    std::size_t len = cp_len(static_cast<unsigned char>(s[i]));
    std::string letter = s.substr(i, len);
    auto it = std::find(labels.begin(), labels.end(), letter);
    if (it == labels.end()) fail("unknown letter '" + letter + "'");
    i += len;
    return k_letter(static_cast<LabelId>(it - labels.begin()));
  }
};

struct PolyParser {
  const std::string& s;
  const VariableTable& vars;
  std::size_t i = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error("polynomial parse error at " + std::to_string(i) + ": " + msg + " in '" + s + "'");
  }
  void skip() {
    while (i < s.size() && s[i] == ' ') ++i;
  }
  bool at(char c) {
    skip();
    return i < s.size() && s[i] == c;
  }
  Polynomial expr() {
    Polynomial p;
    bool neg = false;
    if (at('-')) {
      ++i;
      neg = true;
    }
    p = term();
    if (neg) p = Polynomial() - p;
    while (at('+') || at('-')) {
      char op = s[i++];
      Polynomial t = term();
      p = op == '+' ? p + t : p - t;
    }
    return p;
  }
  Polynomial term() {
    Polynomial p = factor();
    for (;;) {
      if (at('*')) {
        ++i;
        p = p * factor();
      } else if (at('(') || at('x') || (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))) {
        p = p * factor();
      } else {
        return p;
      }
    }
  }
  Polynomial factor() {
    Polynomial b = base();
    if (at('^')) {
      ++i;
      skip();
      std::size_t j = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (j == i) fail("expected exponent");
      b = b.pow(static_cast<std::uint32_t>(std::stoul(s.substr(j, i - j))));
    }
    return b;
  }
  Polynomial base() {
    skip();
    if (at('(')) {
      ++i;
      Polynomial e = expr();
      if (!at(')')) fail("expected ')'");
      ++i;
      return e;
    }
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      std::size_t j = i;
      while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) ++i;
      return Polynomial(parse_rational(s.substr(j, i - j)));
    }
    if (s.compare(i, 2, "x_") == 0) {
      i += 2;
      std::size_t len = cp_len(static_cast<unsigned char>(s[i]));
      std::string label = s.substr(i, len);
      i += len;
      auto v = vars.find(label);
      if (!v) fail("unknown variable x_" + label);
      return Polynomial::variable(*v);
    }
    fail("unexpected character");
  }
};

}  // namespace

Kleene parse_kleene(const std::string& text, const std::vector<std::string>& labels) {
  KleeneParser p{text, labels};
  Kleene e = p.seq();
  if (p.i != text.size()) p.fail("trailing input");
  return e;
}

Polynomial parse_poly(const std::string& text, const VariableTable& vars) {
  PolyParser p{text, vars};
  Polynomial e = p.expr();
  p.skip();
  if (p.i != text.size()) p.fail("trailing input");
  return e;
}

RationalFunction parse_rf(const std::string& num, const std::string& den, const VariableTable& vars) {
  return RationalFunction(parse_poly(num, vars), parse_poly(den, vars));
}

MarkovChainSpec d2_spec(bool with_c, bool numeric) {
  MarkovChainSpec spec;
  spec.states = {"1", "a", "b", "ab"};
  Rational p = with_c ? Rational(1, 3) : Rational(1, 2);
  auto prob = [&]() -> std::optional<Rational> {
    if (numeric) return p;
    return std::nullopt;
  };
  spec.generators.push_back({"a", Transformation{{1, 0, 3, 2}}, prob()});
  spec.generators.push_back({"b", Transformation{{2, 3, 0, 1}}, prob()});
  if (with_c) spec.generators.push_back({"c", Transformation{{0, 1, 2, 3}}, prob()});
  return spec;
}

MarkovChainSpec example210_spec() {
  MarkovChainSpec spec;
  spec.states = {"1", "2"};
  spec.generators.push_back({"1", Transformation{{0, 0}}, Rational(1, 3)});
  spec.generators.push_back({"2", Transformation{{1, 1}}, Rational(1, 3)});
  spec.generators.push_back({"3", Transformation{{1, 0}}, Rational(1, 3)});
  return spec;
}

MarkovChainSpec random_chain(std::mt19937_64& rng, const RandomChainOptions& opts, std::size_t* rejected, StationaryResult* result) {
  static const char* kLabels[] = {"a", "b", "c", "d", "e"};
  for (;;) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, opts.max_states)(rng);
    std::size_t k = std::uniform_int_distribution<std::size_t>(1, opts.max_generators)(rng);
    MarkovChainSpec spec;
    for (std::size_t s = 0; s < n; ++s) spec.states.push_back("s" + std::to_string(s));
    std::vector<unsigned long> weights;
    unsigned long total = 0;
    for (std::size_t g = 0; g < k; ++g) {
      weights.push_back(std::uniform_int_distribution<unsigned long>(1, 6)(rng));
      total += weights.back();
    }
    std::vector<Map> maps;
    for (std::size_t g = 0; g < k; ++g) {
      Transformation t;
      for (std::size_t s = 0; s < n; ++s) {
        t.images.push_back(std::uniform_int_distribution<std::uint32_t>(0, static_cast<std::uint32_t>(n - 1))(rng));
      }
      maps.push_back(t.images);
      Rational prob(weights[g], total);
      prob.canonicalize();
      spec.generators.push_back({kLabels[g], t, prob});
    }
    auto reject = [&] {
      if (rejected != nullptr) ++*rejected;
    };
    if (opts.require_left_zero) {
      auto ideal = naive_minimal_ideal(naive_closure(maps));
      bool lz = std::all_of(ideal.begin(), ideal.end(), [&](const Map& x) {
        return std::all_of(ideal.begin(), ideal.end(), [&](const Map& y) { return compose(x, y) == x; });
      });
      if (!lz) {
        reject();
        continue;
      }
    }
    if (!naive_stationary(spec, *spec.numeric_point())) {
      reject();
      continue;
    }
    if (opts.require_aperiodic && ergodicity(spec).recurrent_period != 1) {
      reject();
      continue;
    }
    if (!opts.run_pipeline) return spec;
    try {
      auto r = stationary(generate(spec.generator_specs(), opts.caps.max_elements), opts.caps);
      if (result != nullptr) *result = std::move(r);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kCapExceeded) throw;
      reject();
      continue;
    }
    return spec;
  }
}

std::vector<VarId> identity_vars(std::size_t n) {
  std::vector<VarId> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<VarId>(i);
  return v;
}

}  // namespace sgmc::testing
