#include "sgmc/markov.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "sgmc/error.hpp"
#include "sgmc/graph.hpp"

namespace sgmc {

std::vector<GeneratorSpec> MarkovChainSpec::generator_specs() const {
  std::vector<GeneratorSpec> out;
  for (const auto& g : generators) out.push_back({g.label, g.action});
  return out;
}

VariableTable MarkovChainSpec::variables() const {
  VariableTable vars;
  for (const auto& g : generators) vars.add(g.label);
  return vars;
}

std::optional<Point> MarkovChainSpec::numeric_point() const {
  Point p;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (!generators[i].prob) return std::nullopt;
    p[static_cast<VarId>(i)] = *generators[i].prob;
  }
  return p;
}

MarkovChainSpec MarkovChainSpec::without_null_generators() const {
  MarkovChainSpec out;
  out.states = states;
  for (const auto& g : generators) {
    if (!g.prob || *g.prob != 0) out.generators.push_back(g);
  }
  return out;
}

Point restrict_to_support(const MarkovChainSpec& spec, const Point& point) {
  Point out;
  VarId j = 0;
  for (std::size_t i = 0; i < spec.generators.size(); ++i) {
    if (spec.generators[i].prob && *spec.generators[i].prob == 0) continue;
    auto it = point.find(static_cast<VarId>(i));
    if (it == point.end()) throw Error(ErrorKind::kInvalidArgument, "no value for generator " + spec.generators[i].label);
    out[j++] = it->second;
  }
  return out;
}

SymbolicMatrix transition_matrix(const MarkovChainSpec& spec) {
  const std::size_t n = spec.states.size();
  SymbolicMatrix m(n, std::vector<Polynomial>(n));
  for (std::size_t a = 0; a < spec.generators.size(); ++a) {
    const auto& act = spec.generators[a].action;
    for (std::size_t s = 0; s < n; ++s) m[act(static_cast<std::uint32_t>(s))][s] += Polynomial::variable(static_cast<VarId>(a));
  }
  return m;
}

Matrix evaluate(const SymbolicMatrix& m, const Point& point) {
  Matrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (const auto& p : m[i]) out[i].push_back(p.evaluate(point));
  }
  return out;
}

Distribution apply(const Matrix& m, const Distribution& v) {
  Distribution out(m.size(), Rational(0));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (m[i][j] != 0 && v[j] != 0) out[i] += m[i][j] * v[j];
    }
  }
  return out;
}

namespace {

std::uint32_t gcd_u(std::uint32_t a, std::uint32_t b) { return std::gcd(a, b); }

}  // namespace

Ergodicity ergodicity(const MarkovChainSpec& spec) {
  MarkovChainSpec live = spec.without_null_generators();
  const std::size_t n = live.states.size();
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (const auto& g : live.generators) {
    for (std::size_t s = 0; s < n; ++s) adj[s].push_back(g.action(static_cast<std::uint32_t>(s)));
  }
  SccResult comp = strongly_connected(adj);
  Ergodicity out;
  out.irreducible = comp.count == 1;
  std::vector<bool> closed(comp.count, true);
  for (const auto& [a, b] : comp.dag) closed[a] = false;
  out.closed_classes = static_cast<std::size_t>(std::count(closed.begin(), closed.end(), true));
  // BFS depths inside each component.
  std::vector<std::int64_t> depth(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    if (depth[s] >= 0) continue;
    depth[s] = 0;
    std::vector<std::size_t> queue{s};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::size_t u = queue[qi];
      for (auto v : adj[u]) {
        if (comp.component_of[v] == comp.component_of[u] && depth[v] < 0) {
          depth[v] = depth[u] + 1;
          queue.push_back(v);
        }
      }
    }
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (auto v : adj[u]) {
      if (comp.component_of[u] != comp.component_of[v]) continue;
      auto diff = static_cast<std::uint32_t>(std::llabs(depth[u] + 1 - depth[v]));
      out.period = gcd_u(out.period, diff);
      if (closed[comp.component_of[u]]) out.recurrent_period = gcd_u(out.recurrent_period, diff);
    }
  }
  return out;
}

namespace {

using IntMatrix = std::vector<std::vector<Integer>>;

IntMatrix to_integer_rows(const Matrix& m) {
  IntMatrix out;
  for (const auto& row : m) {
    Integer l = 1;
    for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Integer> r;
    for (const auto& x : row) r.push_back(Integer(x.get_num() * (l / x.get_den())));
    out.push_back(std::move(r));
  }
  return out;
}

// Bareiss elimination to row echelon form; returns pivot columns.
std::vector<std::size_t> bareiss(IntMatrix& a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivots;
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t exact_rank(const Matrix& m) {
  IntMatrix a = to_integer_rows(m);
  return bareiss(a).size();
}

Distribution stationary_oracle(const Matrix& t) {
  const std::size_t n = t.size();
  Matrix m = t;
  for (std::size_t i = 0; i < n; ++i) m[i][i] -= 1;
  IntMatrix a = to_integer_rows(m);
  std::vector<std::size_t> pivots = bareiss(a);
  if (pivots.size() + 1 != n) {
    throw Error(ErrorKind::kSingular, "kernel of T - I has dimension " + std::to_string(n - pivots.size()));
  }
  std::size_t free_col = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) {
      free_col = c;
      break;
    }
  }
  Distribution x(n, Rational(0));
  x[free_col] = 1;
  for (std::size_t r = pivots.size(); r-- > 0;) {
    std::size_t c = pivots[r];
    Rational s = 0;
    for (std::size_t j = c + 1; j < n; ++j) s += Rational(a[r][j]) * x[j];
    x[c] = -s / Rational(a[r][c]);
  }
  Rational total = std::accumulate(x.begin(), x.end(), Rational(0));
  if (total == 0) throw Error(ErrorKind::kSingular, "kernel vector sums to zero");
  for (auto& v : x) v /= total;
  return x;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31U);
}

std::vector<double> simulate(const MarkovChainSpec& spec, const Point& point, std::size_t steps, std::size_t trials,
                             std::uint64_t seed, std::uint32_t start) {
  const std::size_t n = spec.states.size();
  if (start >= n) throw Error(ErrorKind::kInvalidArgument, "start state out of range");
  // Thresholds floor(cumulative * 2^64); the last generator takes the remainder.
  std::vector<std::uint64_t> thresholds;
  Rational cum = 0;
  Integer two64;
  mpz_ui_pow_ui(two64.get_mpz_t(), 2, 64);
  for (std::size_t a = 0; a + 1 < spec.generators.size(); ++a) {
    auto it = point.find(static_cast<VarId>(a));
    if (it == point.end()) throw Error(ErrorKind::kInvalidArgument, "simulation point misses a generator");
    cum += it->second;
    Integer th = floor(cum * Rational(two64));
    if (th >= two64) th = two64 - 1;
    if (th < 0) th = 0;
    Integer hi = th >> 32;
    Integer lo = th - (hi << 32);
    thresholds.push_back((static_cast<std::uint64_t>(hi.get_ui()) << 32U) | lo.get_ui());
  }
  std::vector<std::vector<std::uint32_t>> act;
  for (const auto& g : spec.generators) act.push_back(g.action.images);
  std::vector<std::size_t> counts(n, 0);
  for (std::size_t block = 0; block * kSimulationBlock < trials; ++block) {
    std::mt19937_64 rng(splitmix64(seed + block));
    std::size_t end = std::min(trials, (block + 1) * kSimulationBlock);
    for (std::size_t t = block * kSimulationBlock; t < end; ++t) {
      std::uint32_t s = start;
      for (std::size_t k = 0; k < steps; ++k) {
        std::uint64_t u = rng();
        std::size_t a = 0;
        while (a < thresholds.size() && u >= thresholds[a]) ++a;
        s = act[a][s];
      }
      ++counts[s];
    }
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = trials ? static_cast<double>(counts[i]) / static_cast<double>(trials) : 0.0;
  return out;
}

Rational tv_distance(const Distribution& u, const Distribution& v) {
  Rational s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += abs(u[i] - v[i]);
  return s / 2;
}

double tv_distance(const std::vector<double>& u, const std::vector<double>& v) {
  double s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::abs(u[i] - v[i]);
  return s / 2;
}

}  // namespace sgmc
