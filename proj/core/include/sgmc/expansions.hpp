#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sgmc/graph.hpp"
#include "sgmc/semigroup.hpp"

namespace sgmc {

/// RCay(S, A). Vertex ids coincide with element ids; edge (s, a) has id s*|A| + a.
struct CayleyGraph {
  RootedGraph graph;
  SccResult components;
  std::vector<bool> transition;
};

CayleyGraph right_cayley(const FiniteSemigroup& s);

/// Karnofsky-Rhodes expansion. Each vertex is a pair (element, set of RCay
/// transition edges crossed); out-edges are complete and in label order.
struct KrGraph {
  RootedGraph graph;
  std::vector<ElementId> element;
  std::vector<std::vector<EdgeId>> crossed;  // sorted RCay edge ids
  std::vector<Word> word;                    // BFS word reaching the vertex
  CayleyGraph cayley;
};

/// Throws Error(kCapExceeded) beyond `cap` vertices.
KrGraph kr_expand(const FiniteSemigroup& s, std::size_t cap = 100000);

/// McCammond expansion of a KR graph: vertices are the simple paths from the
/// root, numbered in DFS preorder (labels in order). Forward edges form the
/// spanning tree; every other edge points back to an initial segment.
struct McGraph {
  RootedGraph graph;
  std::vector<VertexId> kr_vertex;
  std::vector<ElementId> element;
  std::vector<std::int64_t> parent;  // -1 at the root
  std::vector<LabelId> tree_label;   // label of the forward edge into the vertex
  std::vector<std::uint32_t> depth;
  std::vector<bool> is_tree_edge;
  std::vector<bool> kr_transition;  // the KR edge underneath is transitional in KR

  Word word(VertexId v) const;
  /// The vertex whose simple path spells w (forward edges only).
  std::optional<VertexId> find_word(const Word& w) const;
};

/// Throws Error(kCapExceeded) beyond `cap` vertices.
McGraph mc_expand(const KrGraph& kr, std::size_t cap = 1000000);

/// [w]_S for the word of an Mc vertex.
inline ElementId project(const McGraph& mc, VertexId v) { return mc.element.at(v); }

}  // namespace sgmc
