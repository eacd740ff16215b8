#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "sgmc/markov.hpp"
#include "sgmc/pipeline.hpp"

namespace sgmc::cli {

struct ChainFile {
  MarkovChainSpec spec;
  PipelineOptions caps;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> series_order;
};

/// Throws Error(kInvalidArgument) naming the line (syntax errors) or the
/// offending field, e.g. "generators[1].action[2]".
ChainFile parse_chain_file(const std::string& text, const std::string& origin = "<input>");
ChainFile load_chain_file(const std::string& path);

/// "k=v,..." with k a generator label, x<label> or x_<label>. Values fill in
/// or override the file's probabilities; the result must be a probability
/// vector over all generators.
Point parse_eval(const std::string& text, const MarkovChainSpec& spec);

/// The file's own point when every probability is numeric.
std::optional<Point> default_point(const MarkovChainSpec& spec);

}  // namespace sgmc::cli
