#pragma once

#include <string>
#include <vector>

#include "sgmc/expansions.hpp"
#include "sgmc/graph.hpp"
#include "sgmc/loop_graph.hpp"

namespace sgmc {

struct DotEdgeStyle {
  std::vector<bool> blue;    // transition edges
  std::vector<bool> dashed;  // back-edges, drawn red
  std::vector<bool> hidden;
};

/// Vertices n0..n(k-1) labelled by their names, edges in id order.
std::string to_dot(const RootedGraph& g, const std::string& name, const DotEdgeStyle& style = {});

std::string dot_cayley(const CayleyGraph& c);
std::string dot_kr(const KrGraph& kr);
/// Back-edges red dashed. Self-loops at vertices whose element is flagged in
/// omit_loops_at (indexed by element id) are left out.
std::string dot_mc(const McGraph& mc, const std::vector<bool>& omit_loops_at = {});
/// Unfolded loop graph; loop-closing edges red dashed.
std::string dot_loop_graph(const LoopGraph& lg);

}  // namespace sgmc
