#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgmc/markov.hpp"
#include "sgmc/pipeline.hpp"
#include "sgmc/rational_function.hpp"

namespace sgmc {

/// Pr(tau >= t) = 1 - Psi^{<t}(point) / Psi(point). Throws
/// Error(kNonUnitDenominator) or Error(kZeroDenominator).
Rational hitting_tail(const RationalFunction& psi, std::uint32_t t, const Point& point);

/// Pr(tau >= t) for t = 0..tmax in one series expansion.
std::vector<Rational> hitting_tails(const RationalFunction& psi, std::uint32_t tmax, const Point& point);

/// Euler operator on ln Psi: sum_i x_i d_i Psi / Psi over `vars`.
RationalFunction expected_tau(const RationalFunction& psi, const std::vector<VarId>& vars);

/// Smallest t with Pr(tau >= t) <= expected / t <= epsilon, i.e. ceil(expected / epsilon).
Integer markov_bound(const Rational& expected, const Rational& epsilon);

struct AsstRow {
  std::uint32_t t = 0;
  Rational tv;    // exact || T^t nu - pi ||
  Rational tail;  // Pr(tau > t)
  bool holds = false;
  std::optional<double> simulated_tv;
};

/// Exact TV distance from the stationary law after t steps from `start`,
/// against Pr(tau > t), for t = 0..tmax. With trials > 0 a Monte Carlo TV is
/// recorded too. Throws Error(kNotLeftZero) unless the pipeline used the
/// left-zero theorem.
std::vector<AsstRow> tv_bound_check(const MarkovChainSpec& spec, const StationaryResult& result, const Point& point,
                                    std::uint32_t tmax, std::uint32_t start = 0, std::size_t trials = 0,
                                    std::uint64_t seed = 0);

struct ElementMixing {
  ElementId element = 0;
  RationalFunction psi;
  RationalFunction expected;  // conditional on entering K(S) at this element
  Rational expected_value;
  std::vector<Rational> tail;
};

struct MixingReport {
  Point point;
  RationalFunction psi;  // total hitting generating function of K(S)
  std::vector<Rational> tail;  // index t: Pr(tau >= t), t = 0..tmax+1
  RationalFunction expected;
  Rational expected_value;
  Rational epsilon;
  Integer tmix_bound;
  std::vector<ElementMixing> per_element;
  std::optional<std::vector<AsstRow>> asst;
  std::string asst_skipped;  // reason when asst is empty
};

struct MixingOptions {
  Rational epsilon{1, 4};
  std::uint32_t tmax = 15;
  std::uint32_t start = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

/// Hitting statistics of K(S) plus the TV table when K(S) is left zero.
/// `point` assigns every generator variable (ids = generator indices).
MixingReport mixing_report(const MarkovChainSpec& spec, const Point& point, const MixingOptions& mixing,
                           const PipelineOptions& options = {});

}  // namespace sgmc
