#include "itl/condense.hpp"

#include <algorithm>
#include <map>

namespace itl {

UniversalGraph universal_graph(const std::vector<std::string>& alphabet, int k,
                               std::uint64_t node_guard) {
  if (k < 1) throw InputError("universal graph needs k >= 1");
  std::vector<std::string> alpha = alphabet;
  std::sort(alpha.begin(), alpha.end());
  alpha.erase(std::unique(alpha.begin(), alpha.end()), alpha.end());
  Bound est = e_number(alpha.size(), static_cast<std::uint64_t>(k));
  if (!est.is_exact() || !est.exact->fits_u64() ||
      est.exact->as_u64() > node_guard)
    throw CostGuardError("universal graph size bound exceeds the guard");

  UniversalGraph g;
  for (const auto& l : alpha) {
    g.labels.push_back(l);
    g.children.push_back({});
    g.layer.push_back(1);
  }
  int prev_end = g.size();
  for (int layer = 2; layer <= k; ++layer) {
    int base = prev_end;
    for (const auto& l : alpha) {
      // every subset of the previous graph, in bitmask order
      if (base > 62) throw CostGuardError("universal graph layer too wide");
      for (std::uint64_t mask = 0; mask < (1ull << base); ++mask) {
        g.labels.push_back(l);
        g.layer.push_back(layer);
        std::vector<int> ch;
        for (int y = 0; y < base; ++y)
          if (mask & (1ull << y)) ch.push_back(y);
        g.children.push_back(std::move(ch));
        if (static_cast<std::uint64_t>(g.size()) > node_guard)
          throw CostGuardError("universal graph exceeds the node guard");
      }
    }
    prev_end = g.size();
  }
  return g;
}

namespace {

LabelledTree unravel_impl(const std::vector<std::string>& labels,
                          const std::vector<std::vector<int>>& children,
                          int start, std::uint64_t node_guard,
                          const std::vector<std::vector<std::string>>* label_sets) {
  std::vector<std::vector<std::string>> out_labels;
  std::vector<std::string> out_names;
  std::vector<std::pair<int, int>> out_edges;
  auto rec = [&](auto&& self, int node, int parent_out,
                 const std::string& path) -> void {
    int id = static_cast<int>(out_labels.size());
    if (static_cast<std::uint64_t>(id) >= node_guard)
      throw CostGuardError("unravelling exceeds the node guard");
    out_labels.push_back(label_sets ? (*label_sets)[node]
                                    : std::vector<std::string>{labels[node]});
    out_names.push_back(path);
    if (parent_out >= 0) out_edges.emplace_back(parent_out, id);
    for (int c : children[node])
      self(self, c, id, path + "." + std::to_string(c));
  };
  rec(rec, start, -1, std::to_string(start));
  return LabelledTree::make(LabelledPoset::make(
      std::move(out_names), std::move(out_labels), std::move(out_edges)));
}

}  // namespace

LabelledTree unravel(const UniversalGraph& g, int start,
                     std::uint64_t node_guard) {
  if (start < 0 || start >= g.size()) throw InputError("unravel: bad start node");
  return unravel_impl(g.labels, g.children, start, node_guard, nullptr);
}

LabelledTree unravel(const LabelledPoset& g, int start,
                     std::uint64_t node_guard) {
  if (start < 0 || start >= g.size()) throw InputError("unravel: bad start node");
  std::vector<std::vector<int>> children(g.size());
  for (auto [a, b] : g.edges) children[a].push_back(b);
  for (auto& c : children) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  std::vector<std::string> dummy;
  return unravel_impl(dummy, children, start, node_guard, &g.labels);
}

namespace {

// Canonical shapes: (label key, sorted set of child shape ids). Two subtrees
// with the same shape are bimersive to the same universal unravelling.
struct ShapeTable {
  std::map<std::pair<std::string, std::vector<int>>, int> ids;
  int intern(std::string key, std::vector<int> children) {
    std::sort(children.begin(), children.end());
    children.erase(std::unique(children.begin(), children.end()), children.end());
    auto it = ids.emplace(std::make_pair(std::move(key), std::move(children)),
                          static_cast<int>(ids.size()));
    return it.first->second;
  }
};

struct Condenser {
  const LabelledTree& t;
  ShapeTable shapes;
  std::vector<int> shape_of_node;

  // output under construction
  std::vector<std::vector<std::string>> out_labels;
  std::vector<std::string> out_names;
  std::vector<std::pair<int, int>> out_edges;
  std::vector<int> rho, iota_of_out;
  std::vector<std::map<int, int>> child_by_shape;  // out node -> shape -> out child

  explicit Condenser(const LabelledTree& tree)
      : t(tree), shape_of_node(tree.p.size(), -1) {}

  // monochromatic region below w plus the minimal label-changing frontier
  void region(int w, std::vector<int>& mono, std::vector<int>& frontier) {
    std::vector<int> st{w};
    while (!st.empty()) {
      int x = st.back();
      st.pop_back();
      mono.push_back(x);
      for (int c : t.p.tree_children(x)) {
        if (t.p.label_key(c) == t.p.label_key(w))
          st.push_back(c);
        else
          frontier.push_back(c);
      }
    }
    std::sort(frontier.begin(), frontier.end());
  }

  int shape(int w) {
    if (shape_of_node[w] >= 0) return shape_of_node[w];
    std::vector<int> mono, frontier;
    region(w, mono, frontier);
    std::vector<int> child_shapes;
    for (int u : frontier) child_shapes.push_back(shape(u));
    int s = shapes.intern(t.p.label_key(w), std::move(child_shapes));
    for (int x : mono) shape_of_node[x] = s;
    return s;
  }

  int fresh_out(int src_node) {
    int id = static_cast<int>(out_labels.size());
    out_labels.push_back(t.p.labels[src_node]);
    out_names.push_back("c" + std::to_string(id));
    iota_of_out.push_back(src_node);
    child_by_shape.emplace_back();
    return id;
  }

  int build(int w) {
    int out = fresh_out(w);
    std::vector<int> mono, frontier;
    region(w, mono, frontier);
    for (int x : mono) rho[x] = out;
    // group the frontier by shape; the least node represents each shape
    std::map<int, std::vector<int>> groups;
    for (int u : frontier) groups[shape(u)].push_back(u);
    for (auto& [sid, nodes] : groups) {
      int rep = *std::min_element(nodes.begin(), nodes.end());
      int oc = build(rep);
      out_edges.emplace_back(out, oc);
      child_by_shape[out][sid] = oc;
      for (int u : nodes)
        if (u != rep) mirror(u, oc);
    }
    return out;
  }

  // map a non-representative subtree onto the already built output subtree
  void mirror(int w, int out) {
    std::vector<int> mono, frontier;
    region(w, mono, frontier);
    for (int x : mono) rho[x] = out;
    std::map<int, std::vector<int>> groups;
    for (int u : frontier) groups[shape(u)].push_back(u);
    for (auto& [sid, nodes] : groups) {
      int oc = child_by_shape[out].at(sid);
      for (int u : nodes) mirror(u, oc);
    }
  }
};

}  // namespace

CondenseResult condense(const LabelledTree& t, std::optional<int> pointed) {
  if (pointed) {
    // mark the point, condense over the doubled alphabet, then strip
    if (*pointed < 0 || *pointed >= t.p.size())
      throw InputError("condense: designated node out of range");
    static const std::string kMark = "\x01pt";
    auto labels = t.p.labels;
    labels[*pointed].push_back(kMark);
    LabelledTree marked = LabelledTree::make(
        LabelledPoset::make(t.p.node_names, std::move(labels), t.p.edges));
    CondenseResult r = condense(marked, std::nullopt);
    int pt = -1;
    auto stripped = r.tree.p.labels;
    for (int i = 0; i < r.tree.p.size(); ++i) {
      auto& l = stripped[i];
      auto it = std::find(l.begin(), l.end(), kMark);
      if (it != l.end()) {
        l.erase(it);
        pt = i;
      }
    }
    CondenseResult out;
    out.tree = LabelledTree::make(LabelledPoset::make(
        r.tree.p.node_names, std::move(stripped), r.tree.p.edges));
    out.maps = r.maps;
    out.point = pt;
    return out;
  }

  Condenser c(t);
  c.rho.assign(t.p.size(), -1);
  c.build(t.root);
  CondenseResult r;
  r.tree = LabelledTree::make(LabelledPoset::make(
      std::move(c.out_names), std::move(c.out_labels), std::move(c.out_edges)));
  r.maps.rho = std::move(c.rho);
  r.maps.iota = std::move(c.iota_of_out);
  return r;
}

}  // namespace itl
