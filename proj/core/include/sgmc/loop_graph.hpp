#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "sgmc/graph.hpp"

namespace sgmc {

struct Loop;
using LoopSet = std::shared_ptr<const std::vector<Loop>>;

/// A cycle v0 -a1-> v1 -> ... -ak-> v0 hanging off v0. Interior vertices
/// v1..v(k-1) carry their own loop sets, shared between all occurrences.
struct Loop {
  Word labels;
  std::vector<LoopSet> interior;  // size labels.size() - 1
  std::vector<VertexId> origin;   // source-graph vertices v0..v(k-1)
};

/// Straight path root = v0 -a1-> ... -am-> vm with loop sets at each vi.
struct LoopGraph {
  std::vector<std::string> labels;
  Word spine;
  std::vector<VertexId> spine_origin;  // size m+1
  std::vector<LoopSet> attached;       // size m+1, never null
  std::vector<std::string> origin_names;
};

struct PictOptions {
  /// Leave the terminal vertex without loops (loops on the ideal omitted).
  bool omit_terminal_loops = true;
};

/// Reusable Pict state for one graph: the DFS tree and the memoized loop sets
/// of every vertex, shared between all loop graphs built from it.
class PictContext {
 public:
  /// Throws Error(kNotUsp).
  explicit PictContext(const RootedGraph& g);
  ~PictContext();
  PictContext(const PictContext&) = delete;
  PictContext& operator=(const PictContext&) = delete;

  /// Throws Error(kPathNotInGraph).
  LoopGraph pict(const Word& path, PictOptions options = {});
  /// Loop graph along the tree path to v.
  LoopGraph pict_vertex(VertexId v, PictOptions options = {});
  LoopSet loops_at(VertexId v);
  const TreeView& tree() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Pict(g, p) for a graph with the unique simple path property and the simple
/// path spelled by `path`. The loops at a vertex x are the first-return cycles
/// at x inside the subtree of x; each is closed by one non-tree edge into x,
/// ordered by DFS postorder of the edge source, then by label. Throws
/// Error(kNotUsp) or Error(kPathNotInGraph).
LoopGraph pict(const RootedGraph& g, const Word& path, PictOptions options = {});

/// Expands the shared structure into an explicit rooted graph whose last
/// spine vertex id is returned through `terminal`. Throws Error(kCapExceeded).
RootedGraph unfold(const LoopGraph& lg, VertexId& terminal, std::size_t cap = 1000000);

/// Label-preserving bijection check between walks root -> end of path in g
/// and in pict(g, path), up to maxlen edges.
bool paths_bijection_check(const RootedGraph& g, const Word& path, const LoopGraph& lg, std::size_t maxlen,
                           bool first_visit = true);

}  // namespace sgmc
