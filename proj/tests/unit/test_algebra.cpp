#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sgmc/error.hpp"
#include "sgmc/rational_function.hpp"

using namespace sgmc;
using sgmc::testing::naive_eval;
using sgmc::testing::parse_poly;
using sgmc::testing::parse_rf;

namespace {

const VariableTable kAbBox({"a", "b", "□"});

Polynomial P(const std::string& s) { return parse_poly(s, kAbBox); }

Polynomial random_poly(std::mt19937_64& rng, std::size_t nvars, std::size_t terms, std::uint32_t maxdeg) {
  std::vector<Polynomial::Term> ts;
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<std::uint32_t> exp(0, maxdeg);
  for (std::size_t i = 0; i < terms; ++i) {
    Monomial m;
    for (std::size_t v = 0; v < nvars; ++v) m = m.with_exponent(static_cast<VarId>(v), exp(rng));
    ts.emplace_back(m, Rational(coef(rng), std::uniform_int_distribution<int>(1, 4)(rng)));
  }
  return Polynomial::from_terms(ts);
}

Point random_point(std::mt19937_64& rng, std::size_t nvars) {
  Point p;
  for (std::size_t v = 0; v < nvars; ++v) {
    p[static_cast<VarId>(v)] = Rational(std::uniform_int_distribution<int>(1, 30)(rng), 37);
  }
  return p;
}

}  // namespace

TEST_CASE("polynomial arithmetic examples") {
  CHECK(P("x_a") + P("x_b") == P("x_b + x_a"));
  CHECK(P("1 - x_a") * P("1 + x_a") == P("1 - x_a^2"));
  auto prod = P("(1-x_a-x_b)(1+x_a+x_b)(1-x_a+x_b)(1+x_a-x_b)");
  CHECK(prod == P("1 - 2x_a^2 - 2x_b^2 + (x_a^2 - x_b^2)^2"));
}

TEST_CASE("canonical form: terms sorted, no zeros, like terms merged") {
  auto p = P("x_b + x_a + x_a^2 - x_a^2 + 3");
  REQUIRE(p.size() == 3);
  for (std::size_t i = 1; i < p.terms().size(); ++i) {
    CHECK(graded_lex_less(p.terms()[i - 1].first, p.terms()[i].first));
  }
  for (const auto& t : p.terms()) CHECK(t.second != 0);
  CHECK((P("x_a") - P("x_a")).is_zero());
}

TEST_CASE("random round trip (p + q) - q == p") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    auto p = random_poly(rng, 3, 6, 3);
    auto q = random_poly(rng, 3, 6, 3);
    CHECK((p + q) - q == p);
    CHECK(p * q == q * p);
    auto d = (p * q).divide_exact(q);
    if (!q.is_zero()) {
      REQUIRE(d.has_value());
      CHECK(*d == p);
    }
  }
}

TEST_CASE("polynomial evaluation agrees with naive term-by-term evaluation") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 100; ++i) {
    auto p = random_poly(rng, 3, 8, 4);
    auto pt = random_point(rng, 3);
    CHECK(p.evaluate(pt) == naive_eval(p, pt));
  }
}

TEST_CASE("rational function arithmetic examples") {
  RationalFunction xa(P("x_a"));
  RationalFunction xb(P("x_b"));
  CHECK(rf_equal(xa + xb, RationalFunction(P("x_a + x_b"))));
  auto inv = RationalFunction(1) / RationalFunction(P("1 - x_a"));
  CHECK(rf_equal(inv, parse_rf("1", "1 - x_a", kAbBox)));
  CHECK_THROWS_AS(xa / RationalFunction(), Error);
  try {
    (void)(xa / RationalFunction());
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDivisionByZero);
  }
  CHECK_THROWS_AS(RationalFunction(P("x_a"), Polynomial()), Error);
}

TEST_CASE("rf_equal examples") {
  CHECK(rf_equal(parse_rf("x_a", "1 - x_b", kAbBox), parse_rf("x_a(1 + x_b)", "1 - x_b^2", kAbBox)));
  CHECK_FALSE(rf_equal(RationalFunction(P("x_a")), RationalFunction(P("x_b"))));
  CHECK(rf_equal(RationalFunction(), RationalFunction(P("0"))));
}

TEST_CASE("nested fraction for the ab-box terminal collapses to the closed form") {
  // Built by repeated field operations exactly as the nested display reads.
  using RF = RationalFunction;
  RF xa(P("x_a")), xb(P("x_b")), xbox(P("x_□"));
  RF one(1);
  RF a2 = xa * xa, b2 = xb * xb;
  RF inner_a = one - b2 / (one - a2);  // 1 - x_b^2/(1-x_a^2)
  RF inner_b = one - a2 / (one - b2);  // 1 - x_a^2/(1-x_b^2)
  RF big = one - a2 * b2 / (inner_a * (one - a2)) - a2 / inner_a - a2 * b2 / (inner_b * (one - b2)) - b2 / inner_b;
  RF psi = xa * xb * xbox / (big * inner_b);
  auto closed = parse_rf("x_a x_b x_□ (1 - x_b^2)", "1 - 2x_a^2 - 2x_b^2 + (x_a^2 - x_b^2)^2", kAbBox);
  CHECK(rf_equal(psi, closed));
  CHECK(rf_equal(rf_simplify(psi), closed));
}

TEST_CASE("rf_substitute examples") {
  auto r = rf_substitute(RationalFunction(P("x_a + x_b")), 1, P("1 - x_a - x_□"));
  CHECK(rf_equal(r, RationalFunction(P("1 - x_□"))));
  auto z = rf_substitute(parse_rf("x_a x_□", "1 - x_a", kAbBox), 2, Polynomial());
  CHECK(z.is_zero());
  CHECK_THROWS_AS(rf_substitute(parse_rf("1", "x_□", kAbBox), 2, Polynomial()), Error);

  VariableTable abc({"a", "b", "c"});
  auto lim = parse_rf("(1 + x_b - x_c)(1 - x_b - x_c)", "8(x_a + x_b)", abc);
  auto at_c0 = rf_substitute(rf_substitute(lim, 2, Polynomial()), 0, parse_poly("1 - x_b", abc));
  CHECK(rf_equal(at_c0, parse_rf("1 - x_b^2", "8", abc)));
}

TEST_CASE("rf_eval examples and naive oracle") {
  Point half{{1, Rational(1, 2)}};
  CHECK(rf_eval(parse_rf("1 - x_b^2", "8", kAbBox), half) == Rational(3, 32));
  CHECK_THROWS_AS(rf_eval(parse_rf("1", "1 - x_b - x_b", kAbBox), half), Error);

  VariableTable v123({"1", "2", "3"});
  auto e1 = parse_rf("x_1", "x_1 + x_2 x_3", v123) + parse_rf("2 x_2 x_3", "x_1 + x_2 x_3", v123) +
            parse_rf("2 x_3^2", "1 - x_3^2", v123);
  Point third{{0, Rational(1, 3)}, {1, Rational(1, 3)}, {2, Rational(1, 3)}};
  CHECK(rf_eval(e1, third) == Rational(3, 2));

  std::mt19937_64 rng(13);
  for (int i = 0; i < 50; ++i) {
    auto n = random_poly(rng, 3, 5, 3);
    auto d = random_poly(rng, 3, 4, 2) + Polynomial(Rational(7));
    auto pt = random_point(rng, 3);
    if (naive_eval(d, pt) == 0) continue;
    RationalFunction r(n, d);
    CHECK(rf_eval(r, pt) == naive_eval(r, pt));
  }
}

TEST_CASE("field operations commute with evaluation") {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 60; ++i) {
    RationalFunction r(random_poly(rng, 3, 4, 2), random_poly(rng, 3, 3, 2) + Polynomial(5));
    RationalFunction s(random_poly(rng, 3, 4, 2), random_poly(rng, 3, 3, 2) + Polynomial(5));
    auto pt = random_point(rng, 3);
    Rational rv, sv;
    try {
      rv = rf_eval(r, pt);
      sv = rf_eval(s, pt);
    } catch (const Error&) {
      continue;
    }
    CHECK(rf_eval(r + s, pt) == rv + sv);
    CHECK(rf_eval(r - s, pt) == rv - sv);
    CHECK(rf_eval(r * s, pt) == rv * sv);
    if (sv != 0 && !s.is_zero()) CHECK(rf_eval(r / s, pt) == rv / sv);
  }
}

TEST_CASE("rf_partial examples") {
  CHECK(rf_equal(rf_partial(RationalFunction(P("x_a x_b")), 0), RationalFunction(P("x_b"))));
  CHECK(rf_equal(rf_partial(parse_rf("1", "1 - x_a", kAbBox), 0), parse_rf("1", "(1 - x_a)^2", kAbBox)));
}

TEST_CASE("rf_partial agrees with central finite differences") {
  std::mt19937_64 rng(15);
  auto to_d = [](const Point& p) {
    std::map<VarId, double> m;
    for (const auto& [v, x] : p) m[v] = x.get_d();
    return m;
  };
  auto eval_d = [](const RationalFunction& r, const std::map<VarId, double>& pt) {
    auto pe = [&](const Polynomial& p) {
      double s = 0;
      for (const auto& [m, c] : p.terms()) {
        double t = c.get_d();
        for (std::size_t v = 0; v < m.exponents().size(); ++v) t *= std::pow(pt.at(static_cast<VarId>(v)), m.exponents()[v]);
        s += t;
      }
      return s;
    };
    return pe(r.numerator()) / pe(r.denominator());
  };
  int checked = 0;
  while (checked < 10) {
    RationalFunction r(random_poly(rng, 3, 4, 3), random_poly(rng, 3, 3, 2) + Polynomial(6));
    auto pt = random_point(rng, 3);
    for (VarId v = 0; v < 3; ++v) {
      auto dp = rf_partial(r, v);
      double exact;
      try {
        exact = rf_eval(dp, pt).get_d();
      } catch (const Error&) {
        continue;
      }
      const double h = 1e-6;
      auto lo = to_d(pt), hi = to_d(pt);
      lo[v] -= h;
      hi[v] += h;
      double fd = (eval_d(r, hi) - eval_d(r, lo)) / (2 * h);
      CHECK(std::abs(fd - exact) <= 1e-4 * std::max(1.0, std::abs(exact)));
    }
    ++checked;
  }
}

TEST_CASE("rf_series examples") {
  auto s = rf_series(parse_rf("1", "1 - x_a", kAbBox), 4);
  CHECK(s.coefficients == P("1 + x_a + x_a^2 + x_a^3"));
  CHECK(s.bound == 4);
  VariableTable v123({"1", "2", "3"});
  auto s32 = rf_series(parse_rf("x_2 x_3", "1 - x_3^2", v123), 6);
  CHECK(s32.coefficients == parse_poly("x_2 x_3 + x_2 x_3^3", v123));
  auto s32b = rf_series(parse_rf("x_2 x_3", "1 - x_3^2", v123), 7);
  CHECK(s32b.coefficients == parse_poly("x_2 x_3 + x_2 x_3^3 + x_2 x_3^5", v123));
  CHECK_THROWS_AS(rf_series(parse_rf("1", "x_a", kAbBox), 3), Error);
}

TEST_CASE("series truncation is consistent across bounds") {
  std::mt19937_64 rng(16);
  for (int i = 0; i < 30; ++i) {
    RationalFunction r(random_poly(rng, 2, 4, 2), random_poly(rng, 2, 3, 2) * Polynomial::variable(0) + Polynomial(1));
    auto big = rf_series(r, 9);
    for (std::uint32_t b = 0; b < 9; ++b) {
      CHECK(big.coefficients.truncate(b) == rf_series(r, b).coefficients);
    }
    for (const auto& t : big.coefficients.terms()) CHECK(t.first.degree() < 9);
  }
}

TEST_CASE("graded values match the evaluated homogeneous parts") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    RationalFunction r(random_poly(rng, 2, 4, 2), random_poly(rng, 2, 3, 2) * Polynomial::variable(1) + Polynomial(1));
    Point pt{{0, Rational(1, 3)}, {1, Rational(1, 5)}};
    auto g = rf_graded_values(r, pt, 8);
    auto s = rf_series(r, 8).coefficients;
    for (std::uint32_t d = 0; d < 8; ++d) CHECK(g[d] == s.homogeneous_part(d).evaluate(pt));
  }
}

TEST_CASE("limit at box -> 0 examples") {
  const VarId a = 0, b = 1, box = 2;
  const std::vector<VarId> all{a, b};
  CHECK(rf_limit_box(RationalFunction(P("x_□")), box, b, all).is_zero());
  const std::string den = "1 - 2x_a^2 - 2x_b^2 + (x_a^2 - x_b^2)^2";
  auto back = [&](const std::string& num) {
    // closed form in x_b rewritten in x_a via x_b = 1 - x_a
    return rf_substitute(parse_rf(num, "8", kAbBox), b, P("1 - x_a"));
  };
  auto lim_ab = rf_limit_box(parse_rf("x_a x_b x_□ (1 - x_b^2)", den, kAbBox), box, b, all);
  CHECK(rf_equal(lim_ab, back("1 - x_b^2")));
  auto lim_a = rf_limit_box(parse_rf("x_a (1 - x_a^2 - x_b^2) x_□", den, kAbBox), box, b, all);
  CHECK(rf_equal(lim_a, back("2 x_a")));
  // numerator carries the higher box power -> 0
  CHECK(rf_limit_box(parse_rf("x_□^2 x_a", "x_□ (1 + x_a)", kAbBox), box, b, all).is_zero());
  CHECK_THROWS_AS(rf_limit_box(parse_rf("x_a", "x_□", kAbBox), box, b, all), Error);
}

TEST_CASE("rf_simplify cancels exact factors and preserves value") {
  auto r = RationalFunction::from_factors(P("(1 - x_a)^2 x_b"), {{P("1 - x_a"), 3}, {P("1 + x_b"), 1}});
  auto s = rf_simplify(r);
  CHECK(rf_equal(r, s));
  REQUIRE(s.factors().size() == 2);
  CHECK(s.numerator() == P("x_b"));
}

TEST_CASE("rendering is deterministic") {
  auto r = parse_rf("x_a x_b", "1 - x_a^2", kAbBox);
  CHECK(to_string(r, kAbBox) == to_string(parse_rf("x_b x_a", "1 - x_a^2", kAbBox), kAbBox));
  CHECK(to_string(RationalFunction(P("x_a + x_b")), kAbBox) == "x_a + x_b");
}
