#include "sgmc/loop_graph.hpp"

#include <algorithm>
#include <unordered_map>

#include "sgmc/error.hpp"

namespace sgmc {

namespace {

class PictBuilder {
 public:
  PictBuilder(const RootedGraph& g, const TreeView& t) : g_(g), t_(t), in_back_(g.num_vertices()) {
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (!t.is_tree_edge[e]) in_back_[g.edge(e).target].push_back(e);
    }
    for (auto& list : in_back_) {
      std::sort(list.begin(), list.end(), [&](EdgeId a, EdgeId b) {
        const Edge& ea = g.edge(a);
        const Edge& eb = g.edge(b);
        if (t.post[ea.source] != t.post[eb.source]) return t.post[ea.source] < t.post[eb.source];
        return ea.label < eb.label;
      });
    }
  }

  LoopSet loops_at(VertexId x) {
    if (auto it = memo_.find(x); it != memo_.end()) return it->second;
    auto loops = std::make_shared<std::vector<Loop>>();
    for (EdgeId e : in_back_[x]) {
      const Edge& closing = g_.edge(e);
      std::vector<VertexId> chain;  // d, parent(d), ..., up to but excluding x
      for (VertexId u = closing.source; u != x; u = static_cast<VertexId>(t_.parent[u])) chain.push_back(u);
      std::reverse(chain.begin(), chain.end());
      Loop loop;
      loop.origin.push_back(x);
      for (VertexId u : chain) {
        loop.labels.push_back(g_.edge(static_cast<EdgeId>(t_.parent_edge[u])).label);
        loop.origin.push_back(u);
      }
      loop.labels.push_back(closing.label);
      for (VertexId u : chain) loop.interior.push_back(loops_at(u));
      loops->push_back(std::move(loop));
    }
    LoopSet shared = std::move(loops);
    memo_.emplace(x, shared);
    return shared;
  }

 private:
  const RootedGraph& g_;
  const TreeView& t_;
  std::vector<std::vector<EdgeId>> in_back_;
  std::unordered_map<VertexId, LoopSet> memo_;
};

struct Unfolder {
  RootedGraph& out;
  const LoopGraph& lg;
  std::size_t cap;

  VertexId add(VertexId origin) {
    if (out.num_vertices() >= cap) {
      throw Error(ErrorKind::kCapExceeded, "loop graph unfolding exceeds " + std::to_string(cap) + " vertices");
    }
    std::string name = origin < lg.origin_names.size() ? lg.origin_names[origin] : std::to_string(origin);
    return out.add_vertex(std::move(name));
  }

  void attach(VertexId at, const LoopSet& set) {
    for (const Loop& loop : *set) {
      VertexId prev = at;
      for (std::size_t i = 0; i + 1 < loop.labels.size(); ++i) {
        VertexId v = add(loop.origin[i + 1]);
        out.add_edge(prev, loop.labels[i], v);
        attach(v, loop.interior[i]);
        prev = v;
      }
      out.add_edge(prev, loop.labels.back(), at);
    }
  }
};

}  // namespace

struct PictContext::Impl {
  const RootedGraph& g;
  TreeView tree;
  std::unique_ptr<PictBuilder> builder;
  LoopSet empty = std::make_shared<const std::vector<Loop>>();

  explicit Impl(const RootedGraph& graph) : g(graph), tree(dfs_tree(graph)) {
    if (!has_usp_structure(g, tree)) throw Error(ErrorKind::kNotUsp, "graph lacks the unique simple path property");
    builder = std::make_unique<PictBuilder>(g, tree);
  }

  LoopGraph build(std::vector<VertexId> spine_vertices, Word spine, PictOptions options) {
    LoopGraph lg;
    lg.labels = g.labels();
    for (VertexId v = 0; v < g.num_vertices(); ++v) lg.origin_names.push_back(g.name(v));
    lg.spine = std::move(spine);
    lg.spine_origin = std::move(spine_vertices);
    for (std::size_t i = 0; i < lg.spine_origin.size(); ++i) {
      bool terminal = i + 1 == lg.spine_origin.size();
      lg.attached.push_back(terminal && options.omit_terminal_loops ? empty : builder->loops_at(lg.spine_origin[i]));
    }
    return lg;
  }
};

PictContext::PictContext(const RootedGraph& g) : impl_(std::make_unique<Impl>(g)) {}
PictContext::~PictContext() = default;

const TreeView& PictContext::tree() const { return impl_->tree; }

LoopSet PictContext::loops_at(VertexId v) { return impl_->builder->loops_at(v); }

LoopGraph PictContext::pict(const Word& path, PictOptions options) {
  const RootedGraph& g = impl_->g;
  VertexId v = g.root();
  std::vector<VertexId> spine{v};
  for (LabelId a : path) {
    std::optional<VertexId> next;
    for (EdgeId e : g.out_edges(v)) {
      if (impl_->tree.is_tree_edge[e] && g.edge(e).label == a) next = g.edge(e).target;
    }
    if (!next) throw Error(ErrorKind::kPathNotInGraph, "word is not a simple path from the root");
    v = *next;
    spine.push_back(v);
  }
  return impl_->build(std::move(spine), path, options);
}

LoopGraph PictContext::pict_vertex(VertexId v, PictOptions options) {
  const RootedGraph& g = impl_->g;
  const TreeView& t = impl_->tree;
  std::vector<VertexId> spine;
  Word word;
  for (VertexId u = v;; u = static_cast<VertexId>(t.parent[u])) {
    spine.push_back(u);
    if (t.parent[u] < 0) break;
    word.push_back(g.edge(static_cast<EdgeId>(t.parent_edge[u])).label);
  }
  std::reverse(spine.begin(), spine.end());
  std::reverse(word.begin(), word.end());
  return impl_->build(std::move(spine), std::move(word), options);
}

LoopGraph pict(const RootedGraph& g, const Word& path, PictOptions options) {
  PictContext ctx(g);
  return ctx.pict(path, options);
}

RootedGraph unfold(const LoopGraph& lg, VertexId& terminal, std::size_t cap) {
  RootedGraph out(lg.labels);
  Unfolder u{out, lg, cap};
  std::vector<VertexId> spine;
  for (VertexId origin : lg.spine_origin) spine.push_back(u.add(origin));
  out.set_root(spine.front());
  for (std::size_t i = 0; i < lg.spine.size(); ++i) out.add_edge(spine[i], lg.spine[i], spine[i + 1]);
  for (std::size_t i = 0; i < spine.size(); ++i) u.attach(spine[i], lg.attached[i]);
  terminal = spine.back();
  return out;
}

bool paths_bijection_check(const RootedGraph& g, const Word& path, const LoopGraph& lg, std::size_t maxlen,
                           bool first_visit) {
  auto end = g.follow_word(path);
  if (!end) throw Error(ErrorKind::kPathNotInGraph, "word is not a path from the root");
  VertexId terminal = 0;
  RootedGraph unfolded = unfold(lg, terminal);
  return enumerate_walks(g, *end, maxlen, first_visit) == enumerate_walks(unfolded, terminal, maxlen, first_visit);
}

}  // namespace sgmc
