#include "sgmc/graph.hpp"

#include <algorithm>

#include "sgmc/error.hpp"

namespace sgmc {

VertexId RootedGraph::add_vertex(std::string name) {
  out_.emplace_back();
  names_.push_back(std::move(name));
  return static_cast<VertexId>(out_.size() - 1);
}

EdgeId RootedGraph::add_edge(VertexId source, LabelId label, VertexId target) {
  edges_.push_back({source, label, target});
  auto id = static_cast<EdgeId>(edges_.size() - 1);
  out_.at(source).push_back(id);
  return id;
}

std::optional<VertexId> RootedGraph::follow(VertexId v, LabelId a) const {
  for (EdgeId e : out_.at(v)) {
    if (edges_[e].label == a) return edges_[e].target;
  }
  return std::nullopt;
}

std::optional<VertexId> RootedGraph::follow_word(const Word& w) const {
  VertexId v = root_;
  for (LabelId a : w) {
    auto next = follow(v, a);
    if (!next) return std::nullopt;
    v = *next;
  }
  return v;
}

SccResult strongly_connected(const std::vector<std::vector<std::uint32_t>>& adj) {
  const std::size_t n = adj.size();
  constexpr std::uint32_t kUnvisited = UINT32_MAX;
  std::vector<std::uint32_t> index(n, kUnvisited);
  std::vector<std::uint32_t> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  SccResult r;
  r.component_of.assign(n, 0);
  std::uint32_t counter = 0;
  struct Frame {
    std::uint32_t v;
    std::size_t next;
  };
  std::vector<Frame> call;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (index[s] != kUnvisited) continue;
    call.push_back({s, 0});
    index[s] = low[s] = counter++;
    stack.push_back(s);
    on_stack[s] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < adj[f.v].size()) {
        std::uint32_t w = adj[f.v][f.next++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      std::uint32_t v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::uint32_t w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          r.component_of[w] = static_cast<std::uint32_t>(r.count);
        } while (w != v);
        ++r.count;
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    for (auto w : adj[v]) {
      if (r.component_of[v] != r.component_of[w]) r.dag.emplace_back(r.component_of[v], r.component_of[w]);
    }
  }
  std::sort(r.dag.begin(), r.dag.end());
  r.dag.erase(std::unique(r.dag.begin(), r.dag.end()), r.dag.end());
  return r;
}

SccResult scc(const RootedGraph& g) {
  std::vector<std::vector<std::uint32_t>> adj(g.num_vertices());
  for (const auto& e : g.edges()) adj[e.source].push_back(e.target);
  return strongly_connected(adj);
}

std::vector<bool> transition_edges(const RootedGraph& g, const SccResult& d) {
  std::vector<bool> out(g.num_edges(), false);
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edge(static_cast<EdgeId>(i));
    out[i] = d.component_of[e.source] != d.component_of[e.target];
  }
  return out;
}

bool check_usp(const RootedGraph& g, std::size_t cap) {
  const std::size_t n = g.num_vertices();
  if (n == 0) return false;
  std::vector<std::size_t> arrivals(n, 0);
  std::vector<bool> on_path(n, false);
  struct Frame {
    VertexId v;
    std::size_t next;
  };
  std::vector<Frame> stack{{g.root(), 0}};
  on_path[g.root()] = true;
  arrivals[g.root()] = 1;
  std::size_t paths = 1;
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& out = g.out_edges(f.v);
    if (f.next == out.size()) {
      on_path[f.v] = false;
      stack.pop_back();
      continue;
    }
    VertexId w = g.edge(out[f.next++]).target;
    if (on_path[w]) continue;
    if (++paths > cap) throw Error(ErrorKind::kCapExceeded, "simple path enumeration exceeds " + std::to_string(cap));
    if (++arrivals[w] > 1) return false;
    on_path[w] = true;
    stack.push_back({w, 0});
  }
  return std::all_of(arrivals.begin(), arrivals.end(), [](std::size_t c) { return c == 1; });
}

TreeView dfs_tree(const RootedGraph& g) {
  const std::size_t n = g.num_vertices();
  TreeView t;
  t.parent.assign(n, -1);
  t.parent_edge.assign(n, -1);
  t.depth.assign(n, 0);
  t.pre.assign(n, 0);
  t.post.assign(n, 0);
  t.last.assign(n, 0);
  t.reachable.assign(n, false);
  t.is_tree_edge.assign(g.num_edges(), false);
  if (n == 0) return t;
  std::uint32_t pre = 0;
  std::uint32_t post = 0;
  struct Frame {
    VertexId v;
    std::size_t next;
  };
  std::vector<Frame> stack{{g.root(), 0}};
  t.reachable[g.root()] = true;
  t.pre[g.root()] = pre++;
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& out = g.out_edges(f.v);
    if (f.next == out.size()) {
      t.post[f.v] = post++;
      t.last[f.v] = pre - 1;
      stack.pop_back();
      continue;
    }
    EdgeId e = out[f.next++];
    VertexId w = g.edge(e).target;
    if (t.reachable[w]) continue;
    t.reachable[w] = true;
    t.parent[w] = f.v;
    t.parent_edge[w] = e;
    t.depth[w] = t.depth[f.v] + 1;
    t.pre[w] = pre++;
    t.is_tree_edge[e] = true;
    stack.push_back({w, 0});
  }
  return t;
}

bool has_usp_structure(const RootedGraph& g, const TreeView& t) {
  if (!std::all_of(t.reachable.begin(), t.reachable.end(), [](bool b) { return b; })) return false;
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    if (t.is_tree_edge[i]) continue;
    const Edge& e = g.edge(static_cast<EdgeId>(i));
    if (!t.is_ancestor_or_self(e.target, e.source)) return false;
  }
  return true;
}

std::map<Word, std::size_t> enumerate_walks(const RootedGraph& g, VertexId target, std::size_t maxlen,
                                            bool first_visit, std::size_t cap) {
  std::map<Word, std::size_t> words;
  // Vertices that can still reach the target.
  std::vector<std::vector<VertexId>> rev(g.num_vertices());
  for (const auto& e : g.edges()) rev[e.target].push_back(e.source);
  std::vector<bool> useful(g.num_vertices(), false);
  std::vector<VertexId> queue{target};
  useful[target] = true;
  while (!queue.empty()) {
    VertexId v = queue.back();
    queue.pop_back();
    for (VertexId u : rev[v]) {
      if (!useful[u]) {
        useful[u] = true;
        queue.push_back(u);
      }
    }
  }
  Word word;
  std::size_t visited = 0;
  struct Frame {
    VertexId v;
    std::size_t next;
  };
  std::vector<Frame> stack{{g.root(), 0}};
  if (g.root() == target) {
    words[word] += 1;
    if (first_visit) return words;
  }
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& out = g.out_edges(f.v);
    if (f.next == out.size() || word.size() == maxlen) {
      stack.pop_back();
      if (!word.empty()) word.pop_back();
      continue;
    }
    const Edge& e = g.edge(out[f.next++]);
    if (!useful[e.target]) continue;
    if (++visited > cap) throw Error(ErrorKind::kCapExceeded, "walk enumeration exceeds " + std::to_string(cap));
    word.push_back(e.label);
    if (e.target == target) {
      words[word] += 1;
      if (first_visit) {
        word.pop_back();
        continue;
      }
    }
    stack.push_back({e.target, 0});
  }
  return words;
}

}  // namespace sgmc
