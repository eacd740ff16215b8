#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sgmc/error.hpp"
#include "sgmc/pipeline.hpp"

using namespace sgmc;
namespace T = sgmc::testing;

namespace {

FiniteSemigroup gen(const MarkovChainSpec& spec) { return generate(spec.generator_specs()); }

const TerminalResult& terminal(const StationaryResult& r, const std::string& word) {
  for (const auto& t : r.terminals) {
    if (r.expanded.format_word(t.word) == word) return t;
  }
  FAIL("no terminal " << word);
  throw 0;
}

const RationalFunction& element_psi(const StationaryResult& r, const std::string& name) {
  for (const auto& [e, f] : r.per_element) {
    if (r.semigroup.name(e) == name) return f;
  }
  FAIL("no element " << name);
  throw 0;
}

RationalFunction eliminate(const StationaryResult& r, const RationalFunction& f) {
  Polynomial value(1);
  for (VarId v : generator_vars(r)) {
    if (v != r.elim) value -= Polynomial::variable(v);
  }
  return rf_substitute(f, r.elim, value);
}

}  // namespace

TEST_CASE("two-state example: per-vertex and grouped functions") {
  auto r = stationary_left_zero(gen(T::example210_spec()));
  VariableTable vars(r.expanded.labels());
  auto rf = [&](const std::string& n, const std::string& d) { return T::parse_rf(n, d, vars); };
  CHECK(r.terminals.size() == 6);
  CHECK(rf_equal(terminal(r, "1").psi, rf("x_1", "1")));
  CHECK(rf_equal(terminal(r, "2").psi, rf("x_2", "1")));
  CHECK(rf_equal(terminal(r, "32").psi, rf("x_2 x_3", "1 - x_3^2")));
  CHECK(rf_equal(terminal(r, "31").psi, rf("x_1 x_3", "1 - x_3^2")));
  CHECK(rf_equal(terminal(r, "331").psi, rf("x_1 x_3^2", "1 - x_3^2")));
  CHECK(rf_equal(terminal(r, "332").psi, rf("x_2 x_3^2", "1 - x_3^2")));
  CHECK(r.semigroup.name(terminal(r, "32").element) == "1");
  CHECK(rf_equal(element_psi(r, "1"), rf("x_1 + x_2 x_3", "1 - x_3^2")));
  CHECK(rf_equal(element_psi(r, "2"), rf("x_2 + x_1 x_3", "1 - x_3^2")));
  CHECK(normalization_holds(r));
  CHECK(r.residual_mass.is_zero());
}

TEST_CASE("left-zero band") {
  auto s = generate({{"u", Transformation{{0, 0}}}, {"v", Transformation{{1, 1}}}});
  auto r = stationary(s);
  CHECK(r.method == StationaryResult::Method::kLeftZero);
  VariableTable vars(r.expanded.labels());
  // on the simplex the mass of u is x_u
  Point p{{0, Rational(2, 7)}, {1, Rational(5, 7)}};
  CHECK(rf_eval(element_psi(r, "u"), p) == Rational(2, 7));
  CHECK(rf_eval(element_psi(r, "v"), p) == Rational(5, 7));
  CHECK(normalization_holds(r));
}

TEST_CASE("dihedral chain: general theorem") {
  auto r = stationary(gen(T::d2_spec()));
  REQUIRE(r.method == StationaryResult::Method::kGeneral);
  REQUIRE(r.box.has_value());
  CHECK(r.expanded.label(r.elim) == "b");
  VariableTable vars(r.expanded.labels());
  const std::string den = "1 - 2x_a^2 - 2x_b^2 + (x_a^2 - x_b^2)^2";
  struct Row {
    std::string word, num, limit;
  };
  std::vector<Row> rows{{"a□", "x_a(1 - x_a^2 - x_b^2)x_□", "x_a/4"},
                        {"ab□", "x_a x_b x_□(1 - x_b^2)", "(1 - x_b^2)/8"},
                        {"aba□", "x_a^2 x_b x_□", "x_a/8"},
                        {"abab□", "x_a^2 x_b^2 x_□", "x_a x_b/8"},
                        {"aa□", "x_a^2(1 - x_a^2)x_□", "x_a(1 + x_a)/8"},
                        {"aab□", "x_a^2 x_b x_□", "x_a/8"},
                        {"aaba□", "x_a^3 x_b x_□", "x_a^2/8"}};
  auto in_a = [&](const std::string& text) {
    auto slash = text.rfind('/');
    auto rfn = T::parse_rf(text.substr(0, slash), text.substr(slash + 1), vars);
    return rf_substitute(rfn, r.elim, T::parse_poly("1 - x_a", vars));
  };
  for (const auto& row : rows) {
    CAPTURE(row.word);
    const auto& t = terminal(r, row.word);
    CHECK(rf_equal(t.psi, T::parse_rf(row.num, den, vars)));
    REQUIRE(t.limit.has_value());
    CHECK(rf_equal(*t.limit, in_a(row.limit)));
  }
  CHECK(rf_equal(terminal(r, "□").psi, T::parse_rf("x_□", "1", vars)));
  CHECK(terminal(r, "□").limit->is_zero());
  REQUIRE(r.per_element.size() == 4);
  for (const auto& [e, f] : r.per_element) CHECK(rf_equal(f, RationalFunction(Rational(1, 4))));
  CHECK(r.residual_mass.is_zero());
  CHECK(normalization_holds(r));
  CHECK_THROWS_AS(stationary_left_zero(gen(T::d2_spec())), Error);
}

TEST_CASE("dihedral chain with identity generator") {
  auto r = stationary(gen(T::d2_spec(true)));
  VariableTable vars(r.expanded.labels());
  CHECK(r.expanded.label(r.elim) == "c");
  auto expected = T::parse_rf("(1 + x_b - x_c)(1 - x_b - x_c)", "8(x_a + x_b)", vars);
  auto expected_in_ab = rf_substitute(expected, r.elim, T::parse_poly("1 - x_a - x_b", vars));
  const auto& t = terminal(r, "ab□");
  REQUIRE(t.limit.has_value());
  CHECK(rf_equal(*t.limit, expected_in_ab));
  for (const auto& [e, f] : r.per_element) CHECK(rf_equal(f, RationalFunction(Rational(1, 4))));
  CHECK(normalization_holds(r));
}

TEST_CASE("full report examples") {
  auto d2 = full_report(T::d2_spec(), {}, 3, 1);
  CHECK(d2.verified);
  for (const auto& c : d2.checks) CHECK(c.symbolic == Distribution(4, Rational(1, 4)));
  auto ex = full_report(T::example210_spec(), {}, 3, 1);
  CHECK(ex.verified);
  REQUIRE_FALSE(ex.checks.empty());
  CHECK(ex.checks[0].point == *T::example210_spec().numeric_point());
  CHECK(ex.checks[0].symbolic == Distribution{Rational(1, 2), Rational(1, 2)});
  std::mt19937_64 rng(61);
  T::RandomChainOptions o;
  o.max_states = 2;
  o.max_generators = 2;
  for (int i = 0; i < 5; ++i) {
    auto spec = T::random_chain(rng, o);
    auto rep = full_report(spec, {}, 5, 2);
    CHECK(rep.verified);
    CHECK(rep.checks.size() >= 5);
  }
}

TEST_CASE("oracle comparison detects a mismatched chain") {
  auto corrupted = T::example210_spec();
  corrupted.generators[2].action = Transformation{{1, 1}};
  auto r = stationary(gen(T::example210_spec()));
  auto pt = *corrupted.numeric_point();
  CHECK(pushforward(r, pt) != *T::naive_stationary(corrupted, pt));
}

TEST_CASE("random chains: normalization, oracle, left-zero vs general") {
  std::mt19937_64 rng(62);
  T::RandomChainOptions o;
  o.max_states = 3;
  o.caps = {500, 2000, 5000};
  for (int i = 0; i < 12; ++i) {
    StationaryResult r;
    auto spec = T::random_chain(rng, o, nullptr, &r);
    CHECK(normalization_holds(r));
    CHECK(r.residual_mass.is_zero());
    for (int j = 0; j < 2; ++j) {
      auto p = random_interior_point(spec.generators.size(), rng);
      CHECK(pushforward(r, p) == *T::naive_stationary(spec, p));
    }
    if (r.method == StationaryResult::Method::kLeftZero) {
      auto g = stationary_general(r.semigroup, o.caps);
      REQUIRE(g.per_element.size() == r.per_element.size());
      for (std::size_t k = 0; k < g.per_element.size(); ++k) {
        CHECK(g.per_element[k].first == r.per_element[k].first);
        CHECK(rf_equal(g.per_element[k].second, eliminate(r, r.per_element[k].second)));
      }
    }
  }
}

TEST_CASE("per-vertex series have nonnegative integer coefficients") {
  for (const auto& spec : {T::example210_spec(), T::d2_spec()}) {
    auto r = stationary(gen(spec));
    for (const auto& t : r.terminals) {
      auto series = rf_series(t.psi, 9);
      for (const auto& [m, c] : series.coefficients.terms()) {
        CHECK(c > 0);
        CHECK(c.get_den() == 1);
      }
    }
  }
}

TEST_CASE("random interior points") {
  std::mt19937_64 rng(63);
  for (int i = 0; i < 50; ++i) {
    auto p = random_interior_point(3, rng);
    Rational total = 0;
    for (const auto& [v, x] : p) {
      CHECK(x > 0);
      CHECK(x.get_den() <= 20);
      total += x;
    }
    CHECK(total == 1);
  }
  CHECK_THROWS_AS(random_interior_point(30, rng), Error);
}

TEST_CASE("hitting generating function of the two-state example") {
  auto h = hitting_psi(gen(T::example210_spec()));
  VariableTable vars({"1", "2", "3"});
  CHECK(rf_equal(h.psi, T::parse_rf("x_1 + x_2", "1 - x_3", vars)));
  CHECK(h.per_element.size() == 2);
}
