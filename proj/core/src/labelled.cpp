#include "itl/labelled.hpp"

#include <algorithm>
#include <map>

#include "itl/parser.hpp"

namespace itl {

LabelledPoset LabelledPoset::make(std::vector<std::string> names,
                                  std::vector<std::vector<std::string>> labels,
                                  std::vector<std::pair<int, int>> edges) {
  LabelledPoset p;
  const int n = static_cast<int>(labels.size());
  if (names.empty()) {
    names.reserve(n);
    for (int i = 0; i < n; ++i) names.push_back("n" + std::to_string(i));
  }
  if (static_cast<int>(names.size()) != n)
    throw InputError("labelled poset: names/labels size mismatch");
  p.node_names = std::move(names);
  p.labels = std::move(labels);
  for (auto& l : p.labels) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  p.edges = std::move(edges);
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : p.edges) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw InputError("labelled poset: edge endpoint out of range");
    adj[a].push_back(b);
  }
  p.up.assign(n, {});
  for (int w = 0; w < n; ++w) {
    std::vector<bool> seen(n, false);
    std::vector<int> st{w};
    seen[w] = true;
    while (!st.empty()) {
      int x = st.back();
      st.pop_back();
      for (int y : adj[x])
        if (!seen[y]) {
          seen[y] = true;
          st.push_back(y);
        }
    }
    for (int v = 0; v < n; ++v)
      if (seen[v]) p.up[w].push_back(v);
  }
  for (int w = 0; w < n; ++w)
    for (int v : p.up[w])
      if (v != w && p.leq(v, w))
        throw InputError("labelled poset: edges are not acyclic");
  p.down.assign(n, {});
  for (int w = 0; w < n; ++w)
    for (int v : p.up[w]) p.down[v].push_back(w);
  for (auto& d : p.down) std::sort(d.begin(), d.end());
  p.keys_.resize(n);
  for (int w = 0; w < n; ++w) {
    std::string k;
    for (const auto& t : p.labels[w]) {
      k += t;
      k += '\x1f';
    }
    p.keys_[w] = std::move(k);
  }
  return p;
}

bool LabelledPoset::leq(int a, int b) const {
  return std::binary_search(up[a].begin(), up[a].end(), b);
}

bool LabelledPoset::has_token(int w, const std::string& t) const {
  return std::binary_search(labels[w].begin(), labels[w].end(), t);
}

std::vector<int> LabelledPoset::minimal_nodes() const {
  std::vector<int> out;
  for (int w = 0; w < size(); ++w)
    if (down[w].size() == 1) out.push_back(w);
  return out;
}

bool LabelledPoset::is_tree() const {
  if (size() == 0) return false;
  int roots = 0;
  for (int w = 0; w < size(); ++w) {
    if (down[w].size() == 1) ++roots;
    // the down-set of every node must be a chain
    for (int a : down[w])
      for (int b : down[w])
        if (!leq(a, b) && !leq(b, a)) return false;
  }
  return roots == 1;
}

int LabelledPoset::tree_root() const {
  for (int w = 0; w < size(); ++w)
    if (down[w].size() == 1) return w;
  throw Error("poset has no root");
}

std::vector<int> LabelledPoset::tree_children(int w) const {
  // immediate successors: v with down[v] = down[w] + {v}
  std::vector<int> out;
  for (int v : up[w]) {
    if (v == w) continue;
    if (down[v].size() == down[w].size() + 1) out.push_back(v);
  }
  return out;
}

LabelledTree LabelledTree::make(LabelledPoset poset) {
  if (!poset.is_tree()) throw InputError("labelled structure is not a tree");
  LabelledTree t;
  t.root = poset.tree_root();
  t.p = std::move(poset);
  return t;
}

int level(const LabelledPoset& a, std::optional<int> w, bool depth_mode) {
  const int n = a.size();
  std::vector<int> memo(n, -1);
  auto rec = [&](auto&& self, int x) -> int {
    if (memo[x] >= 0) return memo[x];
    int best = 1;
    for (int v : a.up[x]) {
      if (v == x || a.leq(v, x)) continue;
      if (!depth_mode && a.label_key(v) == a.label_key(x)) continue;
      best = std::max(best, 1 + self(self, v));
    }
    return memo[x] = best;
  };
  if (w) return rec(rec, *w);
  int best = 0;
  for (int x = 0; x < n; ++x) best = std::max(best, rec(rec, x));
  return best;
}

LabelledPoset to_labelled(const Model& m, const std::vector<Fptr>& sigma) {
  const int n = m.size();
  std::vector<std::vector<std::string>> labels(n);
  for (const auto& f : sigma) {
    auto t = m.truth_set(f);
    std::string tok = render(f);
    for (int w = 0; w < n; ++w)
      if (t[w]) labels[w].push_back(tok);
  }
  std::vector<std::string> names;
  for (int w = 0; w < n; ++w) names.push_back(m.name(w));
  std::vector<std::pair<int, int>> edges;
  for (int w = 0; w < n; ++w)
    for (int v : m.up(w))
      if (v != w) edges.emplace_back(w, v);
  return LabelledPoset::make(std::move(names), std::move(labels), std::move(edges));
}

QuasiReport is_quasimodel(const LabelledPoset& a, const std::vector<Fptr>& sigma) {
  QuasiReport r;
  const int n = a.size();
  for (int w = 0; w < n && r.violations.size() < 8; ++w) {
    for (int v : a.up[w]) {
      if (!std::includes(a.labels[v].begin(), a.labels[v].end(),
                         a.labels[w].begin(), a.labels[w].end())) {
        r.ok = false;
        r.violations.push_back("labels not monotone at " + a.node_names[w] +
                               " <= " + a.node_names[v]);
        break;
      }
    }
  }
  for (const auto& f : sigma) {
    if (f->conn != Conn::Imp) continue;
    std::string tok = render(f);
    std::string lt = render(f->left), rt = render(f->right);
    for (int w = 0; w < n; ++w) {
      bool in_label = a.has_token(w, tok);
      bool semantic = true;
      for (int v : a.up[w])
        if (a.has_token(v, lt) && !a.has_token(v, rt)) {
          semantic = false;
          break;
        }
      if (in_label != semantic) {
        r.ok = false;
        r.violations.push_back("implication clause fails for " + tok + " at " +
                               a.node_names[w]);
        if (r.violations.size() >= 8) return r;
      }
    }
  }
  return r;
}

SimReport check_simulation(const std::vector<std::pair<int, int>>& rel,
                           const LabelledPoset& a, const LabelledPoset& b,
                           SimKind kind) {
  SimReport r;
  auto bad = [&](const std::string& msg) {
    r.ok = false;
    if (r.violations.size() < 8) r.violations.push_back(msg);
  };
  std::vector<std::vector<int>> img(a.size());
  for (auto [w, v] : rel) {
    if (w < 0 || w >= a.size() || v < 0 || v >= b.size()) {
      bad("pair out of range");
      return r;
    }
    img[w].push_back(v);
  }
  for (int w = 0; w < a.size(); ++w)
    if (img[w].empty()) bad("domain misses node " + a.node_names[w]);
  if (kind == SimKind::Immersion)
    for (int w = 0; w < a.size(); ++w)
      if (img[w].size() > 1) bad("not a function at " + a.node_names[w]);
  for (auto [w, v] : rel)
    if (a.label_key(w) != b.label_key(v))
      bad("label mismatch at (" + a.node_names[w] + "," + b.node_names[v] + ")");
  // forth: w <= w' forces some v' >= v with w' rel v'
  for (auto [w, v] : rel) {
    for (int w2 : a.up[w]) {
      bool found = false;
      for (int v2 : img[w2])
        if (b.leq(v, v2)) {
          found = true;
          break;
        }
      if (!found)
        bad("forth fails from (" + a.node_names[w] + "," + b.node_names[v] +
            ") to " + a.node_names[w2]);
    }
  }
  return r;
}

SimReport check_condensation(const std::vector<int>& rho,
                             const std::vector<int>& iota,
                             const LabelledPoset& a, const LabelledPoset& b) {
  SimReport r;
  if (static_cast<int>(rho.size()) != a.size() ||
      static_cast<int>(iota.size()) != b.size()) {
    r.ok = false;
    r.violations.push_back("map sizes do not match the carriers");
    return r;
  }
  std::vector<std::pair<int, int>> rrel, irel;
  for (int w = 0; w < a.size(); ++w) rrel.emplace_back(w, rho[w]);
  for (int v = 0; v < b.size(); ++v) irel.emplace_back(v, iota[v]);
  SimReport rr = check_simulation(rrel, a, b, SimKind::Immersion);
  SimReport ir = check_simulation(irel, b, a, SimKind::Immersion);
  r.ok = rr.ok && ir.ok;
  for (auto& v : rr.violations) r.violations.push_back("rho: " + v);
  for (auto& v : ir.violations) r.violations.push_back("iota: " + v);
  std::vector<bool> hit(b.size(), false);
  for (int w = 0; w < a.size(); ++w)
    if (rho[w] >= 0 && rho[w] < b.size()) hit[rho[w]] = true;
  for (int v = 0; v < b.size(); ++v) {
    if (!hit[v]) {
      r.ok = false;
      r.violations.push_back("rho not surjective onto " + b.node_names[v]);
    }
    if (rho[iota[v]] != v) {
      r.ok = false;
      r.violations.push_back("rho(iota(x)) != x at " + b.node_names[v]);
    }
  }
  return r;
}

std::vector<std::pair<int, int>> immersion_from_simulation(
    const std::vector<std::pair<int, int>>& sigma, const LabelledTree& a,
    const LabelledPoset& b, int w, int wp) {
  SimReport sr = check_simulation(sigma, a.p, b, SimKind::Simulation);
  if (!sr.ok) throw InputError("relation is not a simulation");
  bool related = false;
  for (auto [x, y] : sigma)
    if (x == w && y == wp) related = true;
  if (!related) throw InputError("w sigma w' does not hold");
  std::vector<std::vector<int>> img(a.p.size());
  for (auto [x, y] : sigma) img[x].push_back(y);
  for (auto& v : img) std::sort(v.begin(), v.end());

  std::vector<std::pair<int, int>> out;
  auto rec = [&](auto&& self, int node, int target) -> void {
    out.emplace_back(node, target);
    for (int c : a.p.tree_children(node)) {
      // least qualifying image keeps the choice deterministic
      int pick = -1;
      for (int v2 : img[c])
        if (b.leq(target, v2)) {
          pick = v2;
          break;
        }
      if (pick < 0) throw Error("simulation lost the forth property");
      self(self, c, pick);
    }
  };
  rec(rec, w, wp);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Tree-into-poset embedding with memoized (node, target) feasibility.
bool tree_immersion(const LabelledPoset& a, int root, const LabelledPoset& b,
                    std::optional<std::pair<int, int>> pointed) {
  const int na = a.size(), nb = b.size();
  std::vector<signed char> memo(static_cast<std::size_t>(na) * nb, -1);
  auto ok = [&](auto&& self, int x, int y) -> bool {
    signed char& m = memo[static_cast<std::size_t>(x) * nb + y];
    if (m >= 0) return m;
    bool res = a.label_key(x) == b.label_key(y);
    if (pointed && res) {
      if ((x == pointed->first) != (y == pointed->second)) res = false;
    }
    if (res) {
      for (int c : a.tree_children(x)) {
        bool found = false;
        for (int y2 : b.up[y])
          if (self(self, c, y2)) {
            found = true;
            break;
          }
        if (!found) {
          res = false;
          break;
        }
      }
    }
    m = res;
    return res;
  };
  for (int y = 0; y < nb; ++y)
    if (ok(ok, root, y)) return true;
  return false;
}

// General poset backtracking; exponential worst case, desk scale only.
bool poset_immersion(const LabelledPoset& a, const LabelledPoset& b,
                     std::optional<std::pair<int, int>> pointed) {
  const int na = a.size(), nb = b.size();
  // topological order: fewer strict predecessors first
  std::vector<int> order(na);
  for (int i = 0; i < na; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return a.down[x].size() < a.down[y].size();
  });
  std::vector<int> assign(na, -1);
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == order.size()) return true;
    int x = order[i];
    for (int y = 0; y < nb; ++y) {
      if (a.label_key(x) != b.label_key(y)) continue;
      if (pointed && (x == pointed->first) != (y == pointed->second)) continue;
      bool fits = true;
      for (int p : a.down[x]) {
        if (p == x || assign[p] < 0) continue;
        if (!b.leq(assign[p], y)) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      assign[x] = y;
      if (self(self, i + 1)) return true;
      assign[x] = -1;
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace

bool has_immersion(const LabelledPoset& a, const LabelledPoset& b,
                   std::optional<std::pair<int, int>> pointed) {
  if (a.size() == 0) return true;
  if (a.is_tree()) return tree_immersion(a, a.tree_root(), b, pointed);
  return poset_immersion(a, b, pointed);
}

bool are_bimersive(const LabelledPoset& a, const LabelledPoset& b) {
  return has_immersion(a, b) && has_immersion(b, a);
}

bool are_bimersive_pointed(const LabelledPoset& a, int pa,
                           const LabelledPoset& b, int pb) {
  return has_immersion(a, b, std::make_pair(pa, pb)) &&
         has_immersion(b, a, std::make_pair(pb, pa));
}

}  // namespace itl
