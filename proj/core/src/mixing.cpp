#include "sgmc/mixing.hpp"

#include <numeric>

#include "sgmc/error.hpp"

namespace sgmc {

std::vector<Rational> hitting_tails(const RationalFunction& psi, std::uint32_t tmax, const Point& point) {
  Rational total = rf_eval(psi, point);
  if (total == 0) throw Error(ErrorKind::kZeroDenominator, "hitting generating function vanishes at the point");
  std::vector<Rational> graded = rf_graded_values(psi, point, tmax);
  std::vector<Rational> out;
  out.reserve(tmax + 1);
  Rational below(0);
  for (std::uint32_t t = 0; t <= tmax; ++t) {
    out.push_back(1 - below / total);
    if (t < tmax) below += graded[t];
  }
  return out;
}

Rational hitting_tail(const RationalFunction& psi, std::uint32_t t, const Point& point) {
  return hitting_tails(psi, t, point).back();
}

RationalFunction expected_tau(const RationalFunction& psi, const std::vector<VarId>& vars) {
  RationalFunction euler;
  for (VarId v : vars) euler += RationalFunction(Polynomial::variable(v)) * rf_partial(psi, v);
  return rf_simplify(euler / psi);
}

Integer markov_bound(const Rational& expected, const Rational& epsilon) {
  if (epsilon <= 0 || epsilon > 1) throw Error(ErrorKind::kInvalidArgument, "epsilon must lie in (0, 1]");
  if (expected < 0) throw Error(ErrorKind::kInvalidArgument, "expected hitting time is negative");
  return ceil(expected / epsilon);
}

std::vector<AsstRow> tv_bound_check(const MarkovChainSpec& spec, const StationaryResult& result, const Point& point,
                                    std::uint32_t tmax, std::uint32_t start, std::size_t trials, std::uint64_t seed) {
  if (result.method != StationaryResult::Method::kLeftZero) {
    throw Error(ErrorKind::kNotLeftZero, "the minimal ideal is not left zero");
  }
  if (start >= spec.states.size()) throw Error(ErrorKind::kInvalidArgument, "start state out of range");
  RationalFunction psi;
  for (const auto& t : result.terminals) psi += t.psi;
  std::vector<Rational> tails = hitting_tails(psi, tmax + 1, point);
  Distribution pi = pushforward(result, point, start);
  Matrix m = evaluate(transition_matrix(spec), point);
  Distribution nu(spec.states.size(), Rational(0));
  nu[start] = 1;
  std::vector<AsstRow> rows;
  for (std::uint32_t t = 0; t <= tmax; ++t) {
    AsstRow row;
    row.t = t;
    row.tv = tv_distance(nu, pi);
    row.tail = tails[t + 1];
    row.holds = row.tv <= row.tail;
    if (trials > 0) {
      auto sim = simulate(spec, point, t, trials, seed + t, start);
      std::vector<double> target;
      for (const auto& p : pi) target.push_back(to_double(p));
      row.simulated_tv = tv_distance(sim, target);
    }
    rows.push_back(std::move(row));
    nu = sgmc::apply(m, nu);
  }
  return rows;
}

MixingReport mixing_report(const MarkovChainSpec& input, const Point& point, const MixingOptions& mixing,
                           const PipelineOptions& options) {
  MixingReport rep;
  rep.point = point;
  rep.epsilon = mixing.epsilon;
  MarkovChainSpec spec = input.without_null_generators();
  Point pt = restrict_to_support(input, point);
  FiniteSemigroup s = generate(spec.generator_specs(), options.max_elements);
  HittingResult h = hitting_psi(s, options);
  std::vector<VarId> vars(spec.generators.size());
  std::iota(vars.begin(), vars.end(), VarId{0});

  rep.psi = h.psi;
  rep.tail = hitting_tails(h.psi, mixing.tmax + 1, pt);
  rep.expected = expected_tau(h.psi, vars);
  rep.expected_value = rf_eval(rep.expected, pt);
  rep.tmix_bound = markov_bound(rep.expected_value, mixing.epsilon);
  for (const auto& [e, f] : h.per_element) {
    if (f.is_zero()) continue;  // never the first element of K(S) reached
    ElementMixing em;
    em.element = e;
    em.psi = f;
    em.tail = hitting_tails(f, mixing.tmax + 1, pt);
    em.expected = expected_tau(f, vars);
    em.expected_value = rf_eval(em.expected, pt);
    rep.per_element.push_back(std::move(em));
  }
  if (!h.ideal.is_left_zero) {
    rep.asst_skipped = "minimal ideal is not left zero";
    return rep;
  }
  StationaryResult r = stationary_left_zero(s, options);
  rep.asst = tv_bound_check(spec, r, pt, mixing.tmax, mixing.start, mixing.trials, mixing.seed);
  return rep;
}

}  // namespace sgmc
