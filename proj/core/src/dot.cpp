#include "sgmc/dot.hpp"

#include <sstream>

namespace sgmc {
namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

bool flag(const std::vector<bool>& v, std::size_t i) { return i < v.size() && v[i]; }

}  // namespace

std::string to_dot(const RootedGraph& g, const std::string& name, const DotEdgeStyle& style) {
  std::ostringstream os;
  os << "digraph " << quote(name) << " {\n  rankdir=TB;\n  node [shape=circle];\n";
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    os << "  n" << v << " [label=" << quote(g.name(v)) << (v == g.root() ? ", shape=doublecircle" : "") << "];\n";
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (flag(style.hidden, e)) continue;
    const Edge& ed = g.edge(e);
    os << "  n" << ed.source << " -> n" << ed.target << " [label=" << quote(g.labels().at(ed.label));
    if (flag(style.blue, e)) os << ", color=blue";
    if (flag(style.dashed, e)) os << ", color=red, style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string dot_cayley(const CayleyGraph& c) { return to_dot(c.graph, "RCay", {c.transition, {}, {}}); }

std::string dot_kr(const KrGraph& kr) {
  return to_dot(kr.graph, "KR", {transition_edges(kr.graph, scc(kr.graph)), {}, {}});
}

std::string dot_mc(const McGraph& mc, const std::vector<bool>& omit_loops_at) {
  DotEdgeStyle style;
  const std::size_t m = mc.graph.num_edges();
  style.dashed.resize(m);
  style.hidden.resize(m);
  for (EdgeId e = 0; e < m; ++e) {
    style.dashed[e] = !mc.is_tree_edge[e];
    const Edge& ed = mc.graph.edge(e);
    style.hidden[e] = flag(omit_loops_at, mc.element[ed.source]) && ed.source == ed.target;
  }
  return to_dot(mc.graph, "Mc", style);
}

std::string dot_loop_graph(const LoopGraph& lg) {
  VertexId terminal = 0;
  RootedGraph g = unfold(lg, terminal);
  DotEdgeStyle style;
  style.dashed.resize(g.num_edges());
  // Unfolding creates every vertex before its outgoing forward edge, so an
  // edge closes a loop exactly when it points to an older vertex.
  for (EdgeId e = 0; e < g.num_edges(); ++e) style.dashed[e] = g.edge(e).target <= g.edge(e).source;
  return to_dot(g, "Pict", style);
}

}  // namespace sgmc
