#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sgmc/semigroup.hpp"

namespace sgmc {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  VertexId source;
  LabelId label;
  VertexId target;
};

/// Labeled directed multigraph with a root. Out-edges of a vertex are kept in
/// insertion order, which for every graph built here is label order.
class RootedGraph {
 public:
  RootedGraph() = default;
  explicit RootedGraph(std::vector<std::string> labels) : labels_(std::move(labels)) {}

  VertexId add_vertex(std::string name = {});
  EdgeId add_edge(VertexId source, LabelId label, VertexId target);
  void set_root(VertexId r) { root_ = r; }
  void set_name(VertexId v, std::string name) { names_.at(v) = std::move(name); }

  std::size_t num_vertices() const { return out_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  VertexId root() const { return root_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<EdgeId>& out_edges(VertexId v) const { return out_.at(v); }
  const std::string& name(VertexId v) const { return names_.at(v); }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Target of the first out-edge with this label, if any.
  std::optional<VertexId> follow(VertexId v, LabelId a) const;
  /// Follows a word from the root; nullopt if some step is missing.
  std::optional<VertexId> follow_word(const Word& w) const;

 private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::string> names_;
  VertexId root_ = 0;
};

struct SccResult {
  std::vector<std::uint32_t> component_of;
  std::size_t count = 0;
  /// Condensation edges (deduplicated, sorted).
  std::vector<std::pair<std::uint32_t, std::uint32_t>> dag;
};

/// Iterative Tarjan over an adjacency list.
SccResult strongly_connected(const std::vector<std::vector<std::uint32_t>>& adj);
SccResult scc(const RootedGraph& g);

/// Per-edge flag: endpoints in different components.
std::vector<bool> transition_edges(const RootedGraph& g, const SccResult& d);

/// True iff every vertex has exactly one simple path from the root. Throws
/// Error(kCapExceeded) after `cap` simple paths.
bool check_usp(const RootedGraph& g, std::size_t cap = 1000000);

/// DFS spanning tree of a rooted graph (children in out-edge order).
struct TreeView {
  std::vector<std::int64_t> parent;       // -1 for root and unreachable vertices
  std::vector<std::int64_t> parent_edge;  // -1 likewise
  std::vector<std::uint32_t> depth;
  std::vector<std::uint32_t> pre;   // preorder index
  std::vector<std::uint32_t> post;  // postorder index
  std::vector<std::uint32_t> last;  // largest preorder index in the subtree
  std::vector<bool> reachable;
  std::vector<bool> is_tree_edge;

  bool is_ancestor_or_self(VertexId a, VertexId v) const {
    return pre[a] <= pre[v] && pre[v] <= last[a];
  }
};

TreeView dfs_tree(const RootedGraph& g);

/// USP holds iff every vertex is reachable and every non-tree edge of the DFS
/// tree points to an ancestor-or-self of its source. O(V + E).
bool has_usp_structure(const RootedGraph& g, const TreeView& t);

/// Label words of walks root -> target with at most maxlen edges, with
/// multiplicity. With first_visit the walks touch the target only at their end.
std::map<Word, std::size_t> enumerate_walks(const RootedGraph& g, VertexId target, std::size_t maxlen,
                                            bool first_visit = true, std::size_t cap = 5000000);

}  // namespace sgmc
