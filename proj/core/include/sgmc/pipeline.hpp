#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sgmc/expansions.hpp"
#include "sgmc/kleene.hpp"
#include "sgmc/markov.hpp"
#include "sgmc/rational_function.hpp"
#include "sgmc/semigroup.hpp"

namespace sgmc {

struct PipelineOptions {
  std::size_t max_elements = 100000;
  std::size_t max_kr = 100000;
  std::size_t max_mc = 1000000;
};

struct TerminalResult {
  VertexId vertex = 0;
  Word word;                // Mc word of the terminal (ends in the box label in the general case)
  ElementId element = 0;    // [u]_S used for grouping
  bool in_ideal = false;
  Kleene expression;
  RationalFunction psi;
  std::optional<RationalFunction> limit;  // general case only
};

struct StationaryResult {
  enum class Method { kLeftZero, kGeneral };
  Method method = Method::kLeftZero;
  FiniteSemigroup semigroup;  // S, without the zero
  IdealInfo ideal;            // K(S)
  FiniteSemigroup expanded;   // S, or S with the zero adjoined
  KrGraph kr;
  McGraph mc;
  /// Variable ids are label ids of `expanded`.
  VariableTable vars;
  std::optional<VarId> box;
  /// Variable eliminated by the limit (general case); per_element functions
  /// then live in the remaining generator variables.
  VarId elim = 0;
  std::vector<TerminalResult> terminals;  // sorted by word
  std::vector<std::pair<ElementId, RationalFunction>> per_element;  // sorted by element id
  RationalFunction residual_mass;
  double seconds = 0;
};

/// Throws Error(kNotLeftZero) if K(S) is not left zero.
StationaryResult stationary_left_zero(const FiniteSemigroup& s, const PipelineOptions& options = {});

/// Adjoins the zero and takes the limit. Throws Error(kResidualMassNonzero).
StationaryResult stationary_general(const FiniteSemigroup& s, const PipelineOptions& options = {});

/// Left-zero theorem when it applies, the general one otherwise.
StationaryResult stationary(const FiniteSemigroup& s, const PipelineOptions& options = {});

/// Generator variables of S (box excluded).
std::vector<VarId> generator_vars(const StationaryResult& r);

/// Sum over elements plus residual, with the eliminated variable substituted,
/// compared to 1 by rf_equal.
bool normalization_holds(const StationaryResult& r);

/// Value of every per_element function at a stochastic point of the generator variables.
std::vector<std::pair<ElementId, Rational>> evaluate_per_element(const StationaryResult& r, const Point& point);

/// Distribution on states: pi(w) = sum over K(S) of Psi_e(point) [e(start) = w].
Distribution pushforward(const StationaryResult& r, const Point& point, std::uint32_t start = 0);

/// Uniformly random composition of a random D <= max_den into n positive parts.
Point random_interior_point(std::size_t n, std::mt19937_64& rng, std::uint32_t max_den = 20);

struct HittingResult {
  McGraph mc;
  IdealInfo ideal;
  std::vector<TerminalResult> first_entry;  // vertices entering K(S) for the first time
  RationalFunction psi;                     // sum over first_entry
  std::vector<std::pair<ElementId, RationalFunction>> per_element;
};

/// Generating function of words by the step at which the product first lies in K(S).
HittingResult hitting_psi(const FiniteSemigroup& s, const PipelineOptions& options = {});

struct VerificationRecord {
  Point point;
  Distribution symbolic;
  Distribution oracle;
  bool ok = false;
  std::string error;
};

struct FullReport {
  MarkovChainSpec spec;
  StationaryResult result;
  bool normalization_ok = false;
  std::vector<VerificationRecord> checks;
  bool verified = false;
};

/// Runs the whole pipeline and checks against the exact kernel of T - I at
/// `points` random interior points (plus the chain's own point if numeric and
/// interior). Throws Error(kVerificationFailed) when throw_on_failure is set.
FullReport full_report(const MarkovChainSpec& spec, const PipelineOptions& options, std::size_t points,
                       std::uint64_t seed, bool throw_on_failure = true);

std::string format_point(const Point& p, const VariableTable& vars);

}  // namespace sgmc
