#include "sgmc/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <map>

#include "sgmc/error.hpp"
#include "sgmc/loop_graph.hpp"

namespace sgmc {

namespace {

std::vector<VarId> identity_vars(std::size_t n) {
  std::vector<VarId> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<VarId>(i);
  return v;
}

// Psi of each vertex: paths from the root to it, loops at the vertex itself omitted.
// Lexicographically last generator label.
VarId last_label(const FiniteSemigroup& s) {
  const auto& labels = s.labels();
  return static_cast<VarId>(std::max_element(labels.begin(), labels.begin() + s.num_labels()) - labels.begin());
}

std::vector<TerminalResult> psi_for(const McGraph& mc, const std::vector<VertexId>& vertices) {
  PictContext pict(mc.graph);
  KleeneContext kleene(identity_vars(mc.graph.labels().size()));
  std::vector<TerminalResult> out;
  out.reserve(vertices.size());
  for (VertexId v : vertices) {
    TerminalResult t;
    t.vertex = v;
    t.word = mc.word(v);
    LoopGraph lg = pict.pict_vertex(v, PictOptions{true});
    t.expression = kleene.expand(algorithm1(lg));
    t.psi = rf_simplify(kleene.to_rf(t.expression));
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.word < b.word; });
  return out;
}

std::vector<std::pair<ElementId, RationalFunction>> group(const IdealInfo& ideal,
                                                         const std::vector<TerminalResult>& terminals,
                                                         bool use_limit) {
  std::map<ElementId, RationalFunction> sums;
  for (ElementId e : ideal.members) sums[e] = RationalFunction();
  for (const auto& t : terminals) {
    if (!t.in_ideal) continue;
    sums[t.element] += use_limit ? *t.limit : t.psi;
  }
  std::vector<std::pair<ElementId, RationalFunction>> out;
  for (auto& [e, f] : sums) out.emplace_back(e, rf_simplify(f));
  return out;
}

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::vector<VarId> generator_vars(const StationaryResult& r) {
  return identity_vars(r.semigroup.num_labels());
}

StationaryResult stationary_left_zero(const FiniteSemigroup& s, const PipelineOptions& options) {
  auto start = Clock::now();
  StationaryResult r;
  r.method = StationaryResult::Method::kLeftZero;
  r.semigroup = s;
  r.ideal = minimal_ideal(s);
  if (!r.ideal.is_left_zero) throw Error(ErrorKind::kNotLeftZero, "the minimal ideal is not left zero");
  r.expanded = s;
  r.vars = VariableTable(s.labels());
  r.elim = last_label(s);
  r.kr = kr_expand(s, options.max_kr);
  r.mc = mc_expand(r.kr, options.max_mc);
  std::vector<VertexId> targets;
  for (VertexId v = 0; v < r.mc.graph.num_vertices(); ++v) {
    if (r.ideal.contains(r.mc.element[v])) targets.push_back(v);
  }
  r.terminals = psi_for(r.mc, targets);
  for (auto& t : r.terminals) {
    t.element = r.mc.element[t.vertex];
    t.in_ideal = true;
  }
  r.per_element = group(r.ideal, r.terminals, false);
  r.seconds = since(start);
  return r;
}

StationaryResult stationary_general(const FiniteSemigroup& s, const PipelineOptions& options) {
  auto start = Clock::now();
  StationaryResult r;
  r.method = StationaryResult::Method::kGeneral;
  r.semigroup = s;
  r.ideal = minimal_ideal(s);
  r.expanded = adjoin_zero(s);
  r.vars = VariableTable(r.expanded.labels());
  r.box = *r.expanded.box_label();
  r.elim = last_label(s);
  r.kr = kr_expand(r.expanded, options.max_kr);
  r.mc = mc_expand(r.kr, options.max_mc);
  const ElementId zero = *r.expanded.zero();
  std::vector<VertexId> targets;
  for (VertexId v = 0; v < r.mc.graph.num_vertices(); ++v) {
    if (r.mc.element[v] == zero) targets.push_back(v);
  }
  r.terminals = psi_for(r.mc, targets);
  const std::vector<VarId> gens = generator_vars(r);
  for (auto& t : r.terminals) {
    t.element = r.mc.element[static_cast<std::size_t>(r.mc.parent[t.vertex])];
    t.in_ideal = r.ideal.contains(t.element);
    t.limit = rf_simplify(rf_limit_box(t.psi, *r.box, r.elim, gens));
    if (!t.in_ideal) r.residual_mass += *t.limit;
  }
  if (!r.residual_mass.is_zero()) {
    throw Error(ErrorKind::kResidualMassNonzero, "terminals outside the minimal ideal keep mass in the limit");
  }
  r.per_element = group(r.ideal, r.terminals, true);
  r.seconds = since(start);
  return r;
}

StationaryResult stationary(const FiniteSemigroup& s, const PipelineOptions& options) {
  return minimal_ideal(s).is_left_zero ? stationary_left_zero(s, options) : stationary_general(s, options);
}

bool normalization_holds(const StationaryResult& r) {
  RationalFunction sum = r.residual_mass;
  for (const auto& [e, f] : r.per_element) sum += f;
  if (r.method == StationaryResult::Method::kLeftZero) {
    Polynomial value(1);
    for (VarId v : generator_vars(r)) {
      if (v != r.elim) value -= Polynomial::variable(v);
    }
    sum = rf_substitute(sum, r.elim, value);
  }
  return rf_equal(sum, RationalFunction(1));
}

std::vector<std::pair<ElementId, Rational>> evaluate_per_element(const StationaryResult& r, const Point& point) {
  std::vector<std::pair<ElementId, Rational>> out;
  for (const auto& [e, f] : r.per_element) out.emplace_back(e, rf_eval(f, point));
  return out;
}

Distribution pushforward(const StationaryResult& r, const Point& point, std::uint32_t start) {
  Distribution d(r.semigroup.degree(), Rational(0));
  for (const auto& [e, value] : evaluate_per_element(r, point)) d[r.semigroup.action(e)(start)] += value;
  return d;
}

Point random_interior_point(std::size_t n, std::mt19937_64& rng, std::uint32_t max_den) {
  if (n == 0) return {};
  if (n > max_den) throw Error(ErrorKind::kInvalidArgument, "too many variables for the denominator bound");
  std::uniform_int_distribution<std::uint32_t> den_dist(static_cast<std::uint32_t>(n), max_den);
  std::uint32_t d = den_dist(rng);
  // n-1 distinct cut points in 1..d-1.
  std::vector<std::uint32_t> cuts;
  for (std::uint32_t i = 1; i < d; ++i) cuts.push_back(i);
  std::shuffle(cuts.begin(), cuts.end(), rng);
  cuts.resize(n - 1);
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(d);
  Point p;
  std::uint32_t prev = 0;
  for (std::size_t i = 0; i < n; ++i) {
    p[static_cast<VarId>(i)] = Rational(cuts[i] - prev, d);
    p[static_cast<VarId>(i)].canonicalize();
    prev = cuts[i];
  }
  return p;
}

HittingResult hitting_psi(const FiniteSemigroup& s, const PipelineOptions& options) {
  HittingResult h;
  h.ideal = minimal_ideal(s);
  KrGraph kr = kr_expand(s, options.max_kr);
  h.mc = mc_expand(kr, options.max_mc);
  std::vector<VertexId> targets;
  for (VertexId v = 0; v < h.mc.graph.num_vertices(); ++v) {
    if (!h.ideal.contains(h.mc.element[v])) continue;
    auto p = h.mc.parent[v];
    if (p < 0 || !h.ideal.contains(h.mc.element[static_cast<std::size_t>(p)])) targets.push_back(v);
  }
  h.first_entry = psi_for(h.mc, targets);
  for (auto& t : h.first_entry) {
    t.element = h.mc.element[t.vertex];
    t.in_ideal = true;
    h.psi += t.psi;
  }
  h.per_element = group(h.ideal, h.first_entry, false);
  return h;
}

std::string format_point(const Point& p, const VariableTable& vars) {
  std::string out;
  for (const auto& [v, value] : p) {
    if (!out.empty()) out += ", ";
    out += (v < vars.size() ? vars.name(v) : "x_" + std::to_string(v)) + "=" + to_string(value);
  }
  return out;
}

FullReport full_report(const MarkovChainSpec& input, const PipelineOptions& options, std::size_t points,
                       std::uint64_t seed, bool throw_on_failure) {
  FullReport rep;
  rep.spec = input.without_null_generators();
  FiniteSemigroup s = generate(rep.spec.generator_specs(), options.max_elements);
  rep.result = stationary(s, options);
  rep.normalization_ok = normalization_holds(rep.result);

  std::vector<Point> pts;
  if (auto own = rep.spec.numeric_point()) {
    bool interior = std::all_of(own->begin(), own->end(), [](const auto& kv) { return kv.second > 0; });
    if (interior) pts.push_back(*own);
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < points; ++i) pts.push_back(random_interior_point(rep.spec.generators.size(), rng));

  SymbolicMatrix tm = transition_matrix(rep.spec);
  rep.verified = rep.normalization_ok;
  for (const Point& p : pts) {
    VerificationRecord rec;
    rec.point = p;
    try {
      rec.symbolic = pushforward(rep.result, p);
      rec.oracle = stationary_oracle(evaluate(tm, p));
      rec.ok = rec.symbolic == rec.oracle;
    } catch (const Error& e) {
      rec.error = e.what();
    }
    rep.verified = rep.verified && rec.ok;
    rep.checks.push_back(std::move(rec));
  }
  if (throw_on_failure && !rep.verified) {
    std::string where = "normalization identity";
    for (const auto& c : rep.checks) {
      if (!c.ok) {
        where = "point " + format_point(c.point, rep.spec.variables());
        break;
      }
    }
    throw Error(ErrorKind::kVerificationFailed, "symbolic result disagrees with the exact solve at " + where);
  }
  return rep;
}

}  // namespace sgmc
