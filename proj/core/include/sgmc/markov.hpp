#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgmc/polynomial.hpp"
#include "sgmc/semigroup.hpp"

namespace sgmc {

struct ChainGenerator {
  std::string label;
  Transformation action;
  std::optional<Rational> prob;  // nullopt: symbolic x_label
};

/// Random letter representation: generator a is applied with probability x_a.
struct MarkovChainSpec {
  std::vector<std::string> states;
  std::vector<ChainGenerator> generators;

  std::vector<GeneratorSpec> generator_specs() const;
  VariableTable variables() const;
  /// Numeric probabilities as a point (only if none is symbolic).
  std::optional<Point> numeric_point() const;
  /// Drops generators with numeric probability zero.
  MarkovChainSpec without_null_generators() const;
};

/// Re-indexes a point given over spec's generators to the generators kept by
/// without_null_generators(). Throws Error(kInvalidArgument) if one is missing.
Point restrict_to_support(const MarkovChainSpec& spec, const Point& point);

using Distribution = std::vector<Rational>;
using Matrix = std::vector<std::vector<Rational>>;
/// Entry [s'][s] = sum of x_a over generators with a(s) = s'. Variable ids are generator indices.
using SymbolicMatrix = std::vector<std::vector<Polynomial>>;

SymbolicMatrix transition_matrix(const MarkovChainSpec& spec);
Matrix evaluate(const SymbolicMatrix& m, const Point& point);
Distribution apply(const Matrix& m, const Distribution& v);

struct Ergodicity {
  bool irreducible = false;
  /// gcd of d(u) + 1 - d(v) over edges inside strongly connected components.
  std::uint32_t period = 0;
  /// Same gcd restricted to closed classes.
  std::uint32_t recurrent_period = 0;
  std::size_t closed_classes = 0;
};

/// From the transition diagram; generators with numeric probability 0 are ignored.
Ergodicity ergodicity(const MarkovChainSpec& spec);

/// Exact normalized kernel vector of (T - I) by fraction-free elimination.
/// Throws Error(kSingular) when the kernel dimension is not one.
Distribution stationary_oracle(const Matrix& t);

/// Row-echelon rank over the rationals via Bareiss elimination on the integer
/// scaled matrix.
std::size_t exact_rank(const Matrix& m);

/// Empirical distribution at time `steps` over `trials` independent runs.
/// Trials are split in blocks of kSimulationBlock; block b draws from
/// mt19937_64 seeded with splitmix64(seed + b), so results do not depend on
/// how blocks are scheduled.
inline constexpr std::size_t kSimulationBlock = 4096;
std::vector<double> simulate(const MarkovChainSpec& spec, const Point& point, std::size_t steps, std::size_t trials,
                             std::uint64_t seed, std::uint32_t start = 0);

std::uint64_t splitmix64(std::uint64_t x);

Rational tv_distance(const Distribution& u, const Distribution& v);
double tv_distance(const std::vector<double>& u, const std::vector<double>& v);

}  // namespace sgmc
