#include "sgmc/expansions.hpp"

#include <algorithm>
#include <map>

#include "sgmc/error.hpp"

namespace sgmc {

CayleyGraph right_cayley(const FiniteSemigroup& s) {
  CayleyGraph c;
  c.graph = RootedGraph(s.labels());
  for (ElementId e = 0; e < s.size(); ++e) c.graph.add_vertex(s.name(e));
  for (ElementId e = 0; e < s.size(); ++e) {
    for (LabelId a = 0; a < s.num_labels(); ++a) c.graph.add_edge(e, a, s.right_mul(e, a));
  }
  c.graph.set_root(s.identity());
  c.components = scc(c.graph);
  c.transition = transition_edges(c.graph, c.components);
  return c;
}

KrGraph kr_expand(const FiniteSemigroup& s, std::size_t cap) {
  KrGraph kr;
  kr.cayley = right_cayley(s);
  kr.graph = RootedGraph(s.labels());
  const std::size_t k = s.num_labels();
  std::map<std::pair<ElementId, std::vector<EdgeId>>, VertexId> index;

  auto intern = [&](ElementId e, std::vector<EdgeId> crossed, Word w) -> VertexId {
    auto [it, inserted] = index.try_emplace({e, crossed}, static_cast<VertexId>(kr.element.size()));
    if (inserted) {
      if (kr.element.size() >= cap) {
        throw Error(ErrorKind::kCapExceeded, "Karnofsky-Rhodes expansion exceeds " + std::to_string(cap) + " vertices");
      }
      kr.graph.add_vertex(w.empty() ? std::string("𝟙") : s.format_word(w));
      kr.element.push_back(e);
      kr.crossed.push_back(std::move(crossed));
      kr.word.push_back(std::move(w));
    }
    return it->second;
  };

  intern(s.identity(), {}, {});
  kr.graph.set_root(0);
  for (VertexId v = 0; v < kr.element.size(); ++v) {
    for (LabelId a = 0; a < k; ++a) {
      ElementId e = kr.element[v];
      auto rcay_edge = static_cast<EdgeId>(e * k + a);
      std::vector<EdgeId> crossed = kr.crossed[v];
      if (kr.cayley.transition[rcay_edge]) {
        auto pos = std::lower_bound(crossed.begin(), crossed.end(), rcay_edge);
        if (pos == crossed.end() || *pos != rcay_edge) crossed.insert(pos, rcay_edge);
      }
      Word w = kr.word[v];
      w.push_back(a);
      VertexId target = intern(s.right_mul(e, a), std::move(crossed), std::move(w));
      kr.graph.add_edge(v, a, target);
    }
  }
  return kr;
}

Word McGraph::word(VertexId v) const {
  Word w;
  while (parent.at(v) >= 0) {
    w.push_back(tree_label[v]);
    v = static_cast<VertexId>(parent[v]);
  }
  std::reverse(w.begin(), w.end());
  return w;
}

std::optional<VertexId> McGraph::find_word(const Word& w) const {
  VertexId v = graph.root();
  for (LabelId a : w) {
    bool found = false;
    for (EdgeId e : graph.out_edges(v)) {
      if (is_tree_edge[e] && graph.edge(e).label == a) {
        v = graph.edge(e).target;
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  return v;
}

McGraph mc_expand(const KrGraph& kr, std::size_t cap) {
  McGraph mc;
  mc.graph = RootedGraph(kr.graph.labels());
  const std::size_t n_kr = kr.graph.num_vertices();
  SccResult kr_scc = scc(kr.graph);
  std::vector<bool> kr_trans = transition_edges(kr.graph, kr_scc);

  std::vector<std::int64_t> on_path(n_kr, -1);  // KR vertex -> Mc vertex on the current path
  auto add = [&](VertexId kv, std::int64_t parent, LabelId label, const std::string& name) -> VertexId {
    if (mc.kr_vertex.size() >= cap) {
      throw Error(ErrorKind::kCapExceeded, "McCammond expansion exceeds " + std::to_string(cap) + " vertices");
    }
    VertexId v = mc.graph.add_vertex(name);
    mc.kr_vertex.push_back(kv);
    mc.element.push_back(kr.element[kv]);
    mc.parent.push_back(parent);
    mc.tree_label.push_back(label);
    mc.depth.push_back(parent < 0 ? 0 : mc.depth[static_cast<std::size_t>(parent)] + 1);
    return v;
  };

  struct Frame {
    VertexId v;
    std::size_t next;
  };
  Word word;
  VertexId root = add(kr.graph.root(), -1, 0, "𝟙");
  mc.graph.set_root(root);
  on_path[kr.graph.root()] = root;
  std::vector<Frame> stack{{root, 0}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    VertexId kv = mc.kr_vertex[f.v];
    const auto& out = kr.graph.out_edges(kv);
    if (f.next == out.size()) {
      on_path[kv] = -1;
      stack.pop_back();
      if (!word.empty()) word.pop_back();
      continue;
    }
    EdgeId ke = out[f.next++];
    const Edge& e = kr.graph.edge(ke);
    VertexId src = f.v;
    if (on_path[e.target] >= 0) {
      mc.graph.add_edge(src, e.label, static_cast<VertexId>(on_path[e.target]));
      mc.is_tree_edge.push_back(false);
      mc.kr_transition.push_back(kr_trans[ke]);
      continue;
    }
    word.push_back(e.label);
    VertexId child = add(e.target, src, e.label, sgmc::format_word(kr.graph.labels(), word));
    mc.graph.add_edge(src, e.label, child);
    mc.is_tree_edge.push_back(true);
    mc.kr_transition.push_back(kr_trans[ke]);
    on_path[e.target] = child;
    stack.push_back({child, 0});
  }
  return mc;
}

}  // namespace sgmc
