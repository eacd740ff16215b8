#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sgmc/error.hpp"
#include "sgmc/mixing.hpp"

using namespace sgmc;
namespace T = sgmc::testing;

namespace {

const VariableTable k123({"1", "2", "3"});
const Point kThird{{0, Rational(1, 3)}, {1, Rational(1, 3)}, {2, Rational(1, 3)}};

RationalFunction psi_m1() { return T::parse_rf("x_1 + x_2 x_3", "1 - x_3^2", k123); }

}  // namespace

TEST_CASE("hitting tail basics") {
  CHECK(hitting_tail(psi_m1(), 0, kThird) == 1);
  VariableTable a({"a"});
  RationalFunction xa(Polynomial::variable(0));
  Point one{{0, Rational(1)}};
  CHECK(hitting_tail(xa, 2, one) == 0);
  CHECK(hitting_tail(xa, 1, one) == 1);
  CHECK_THROWS_AS(hitting_tail(RationalFunction(), 1, one), Error);
  CHECK_THROWS_AS(hitting_tail(T::parse_rf("1", "x_a", a), 2, one), Error);
}

TEST_CASE("two-state example: tails match brute force and are monotone") {
  auto spec = T::example210_spec();
  auto h = hitting_psi(generate(spec.generator_specs()));
  auto tails = hitting_tails(h.psi, 12, kThird);
  auto naive = T::naive_hitting_tail(spec, kThird, 12);
  CHECK(tails == naive);
  for (std::size_t t = 1; t < tails.size(); ++t) CHECK(tails[t] <= tails[t - 1]);
  CHECK(tails[0] == 1);
}

TEST_CASE("expected hitting time of the two-state example") {
  auto e = expected_tau(psi_m1(), T::identity_vars(3));
  auto expected = T::parse_rf("x_1", "x_1 + x_2 x_3", k123) + T::parse_rf("2 x_2 x_3", "x_1 + x_2 x_3", k123) +
               T::parse_rf("2 x_3^2", "1 - x_3^2", k123);
  CHECK(rf_equal(e, expected));
  CHECK(rf_eval(e, kThird) == Rational(3, 2));
  // the x_3 component reproduces 2x_3^2/(1-x_3^2) at the uniform point
  auto part3 = RationalFunction(Polynomial::variable(2)) * rf_partial(psi_m1(), 2) / psi_m1();
  Rational extra = rf_eval(part3, kThird) - rf_eval(T::parse_rf("2 x_3^2", "1 - x_3^2", k123), kThird);
  // remaining x_3 share comes from the x_2 x_3 term of the numerator
  CHECK(extra == rf_eval(T::parse_rf("x_2 x_3", "x_1 + x_2 x_3", k123), kThird));
  CHECK(rf_equal(expected_tau(RationalFunction(Polynomial::variable(0)), {0}), RationalFunction(1)));
}

TEST_CASE("Markov bound") {
  CHECK(markov_bound(Rational(3, 2), Rational(1, 2)) == 3);
  CHECK(markov_bound(Rational(0), Rational(1, 4)) == 0);
  // Pr(tau >= t) <= E/t <= eps first at t = ceil(E/eps)
  CHECK(markov_bound(Rational(5), Rational(1, 4)) == 20);
  CHECK(markov_bound(Rational(3, 2), Rational(1)) == 2);
  CHECK_THROWS_AS(markov_bound(Rational(1), Rational(0)), Error);
  CHECK_THROWS_AS(markov_bound(Rational(1), Rational(3, 2)), Error);
  CHECK_THROWS_AS(markov_bound(Rational(-1), Rational(1, 2)), Error);
}

TEST_CASE("sum of tails converges to the expectation") {
  for (const auto& spec : {T::example210_spec(), T::d2_spec(true)}) {
    auto h = hitting_psi(generate(spec.generator_specs()));
    auto pt = *spec.numeric_point();
    std::vector<VarId> vars = T::identity_vars(spec.generators.size());
    Rational e = rf_eval(expected_tau(h.psi, vars), pt);
    auto tails = hitting_tails(h.psi, 200, pt);
    Rational sum = 0;
    for (std::size_t t = 1; t <= 200; ++t) sum += tails[t];
    CHECK(sum <= e);
    CHECK(to_double(e - sum) < 1e-6);
  }
}

TEST_CASE("expectation equals the degree-weighted series") {
  // sum_l l * [deg l part](point) / Psi(point) up to degree 40 equals the
  // truncation of the Euler operator series at the same degree.
  auto spec = T::example210_spec();
  auto h = hitting_psi(generate(spec.generator_specs()));
  auto vars = T::identity_vars(3);
  auto series = rf_series(h.psi, 41).coefficients;
  Polynomial weighted;
  for (const auto& [m, c] : series.terms()) weighted += Polynomial::monomial(m, c * m.degree());
  Polynomial euler;
  for (VarId v : vars) euler += Polynomial::variable(v) * series.partial(v);
  CHECK(weighted == euler);
  Rational psi_value = rf_eval(h.psi, kThird);
  Rational truncated = weighted.evaluate(kThird) / psi_value;
  Rational exact = rf_eval(expected_tau(h.psi, vars), kThird);
  CHECK(truncated <= exact);
  CHECK(to_double(exact - truncated) < 1e-6);
  // the Euler operator of the truncation equals the truncation of the Euler operator numerator
  auto num = rf_series(RationalFunction(Polynomial::variable(0)) * rf_partial(h.psi, 0) +
                           RationalFunction(Polynomial::variable(1)) * rf_partial(h.psi, 1) +
                           RationalFunction(Polynomial::variable(2)) * rf_partial(h.psi, 2),
                       41)
                 .coefficients;
  CHECK(num == weighted);
}

TEST_CASE("TV bound on the two-state example") {
  auto spec = T::example210_spec();
  auto r = stationary(generate(spec.generator_specs()));
  auto rows = tv_bound_check(spec, r, kThird, 10);
  REQUIRE(rows.size() == 11);
  for (const auto& row : rows) {
    CHECK(row.holds);
    CHECK(row.tv <= row.tail);
    auto exact = T::naive_step_distribution(spec, kThird, 0, row.t);
    CHECK(row.tv == tv_distance(exact, Distribution{Rational(1, 2), Rational(1, 2)}));
    if (row.tail == 0) CHECK(row.tv == 0);
  }
  auto with_sim = tv_bound_check(spec, r, kThird, 3, 1, 20000, 5);
  for (const auto& row : with_sim) CHECK(row.simulated_tv.has_value());
}

TEST_CASE("TV bound on a one-state chain") {
  MarkovChainSpec spec;
  spec.states = {"x"};
  spec.generators.push_back({"e", Transformation{{0}}, Rational(1)});
  auto r = stationary(generate(spec.generator_specs()));
  for (const auto& row : tv_bound_check(spec, r, Point{{0, Rational(1)}}, 5)) {
    CHECK(row.tv == 0);
    // tau >= 1 since the empty word is not in the ideal
    CHECK(row.tail == (row.t == 0 ? 1 : 0));
    CHECK(row.holds);
  }
}

TEST_CASE("TV bound refuses non-left-zero ideals") {
  auto spec = T::d2_spec(true);
  auto r = stationary(generate(spec.generator_specs()));
  try {
    tv_bound_check(spec, r, *spec.numeric_point(), 3);
    FAIL("expected NotLeftZero");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNotLeftZero);
  }
}

TEST_CASE("mixing report") {
  auto spec = T::example210_spec();
  MixingOptions o;
  o.epsilon = Rational(1, 2);
  auto rep = mixing_report(spec, kThird, o);
  CHECK(rep.expected_value == Rational(3, 2));
  CHECK(rep.tmix_bound == 3);
  CHECK(rep.tail.size() == o.tmax + 2);
  CHECK(rep.tail[0] == 1);
  REQUIRE(rep.asst.has_value());
  for (const auto& row : *rep.asst) CHECK(row.holds);
  CHECK(rep.per_element.size() == 2);
  auto d2c = T::d2_spec(true);
  auto rep2 = mixing_report(d2c, *d2c.numeric_point(), o);
  CHECK_FALSE(rep2.asst.has_value());
  CHECK_FALSE(rep2.asst_skipped.empty());
  // a null generator is dropped before the analysis
  auto with_null = T::d2_spec(true);
  with_null.generators[2].prob = Rational(0);
  with_null.generators[0].prob = Rational(1, 2);
  with_null.generators[1].prob = Rational(1, 2);
  Point pt{{0, Rational(1, 2)}, {1, Rational(1, 2)}, {2, Rational(0)}};
  auto rep3 = mixing_report(with_null, pt, o);
  CHECK(rep3.expected_value == 1);
}

TEST_CASE("random left-zero chains: exact tails and the TV bound") {
  std::mt19937_64 rng(71);
  T::RandomChainOptions o;
  o.require_left_zero = true;
  o.max_states = 3;
  o.caps = {500, 2000, 5000};
  for (int i = 0; i < 8; ++i) {
    StationaryResult r;
    auto spec = T::random_chain(rng, o, nullptr, &r);
    auto pt = *spec.numeric_point();
    auto h = hitting_psi(r.semigroup);
    CHECK(hitting_tails(h.psi, 10, pt) == T::naive_hitting_tail(spec, pt, 10));
    for (const auto& row : tv_bound_check(spec, r, pt, 10)) {
      CHECK(row.holds);
      CHECK(row.tv == tv_distance(T::naive_step_distribution(spec, pt, 0, row.t), *T::naive_stationary(spec, pt)));
    }
  }
}
