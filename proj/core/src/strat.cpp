#include "itl/strat.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "itl/bignat.hpp"
#include "itl/condense.hpp"
#include "itl/parser.hpp"

namespace itl {

int StratifiedModel::root_of(int stratum) const {
  for (int w : strata[stratum])
    if (parent[w] < 0) return w;
  throw Error("stratum has no root");
}

bool StratifiedModel::tree_leq(int a, int b) const {
  if (stratum_of[a] != stratum_of[b]) return false;
  for (int x = b; x >= 0; x = parent[x])
    if (x == a) return true;
  return false;
}

StratifiedModel StratifiedModel::make(std::vector<std::string> names,
                                      std::vector<std::vector<std::string>> val,
                                      std::vector<std::vector<int>> strata,
                                      std::vector<int> parent,
                                      std::vector<int> step,
                                      std::optional<int> loop_a) {
  StratifiedModel s;
  const int n = static_cast<int>(names.size());
  s.names = std::move(names);
  s.val = std::move(val);
  for (auto& v : s.val) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  s.strata = std::move(strata);
  s.parent = std::move(parent);
  s.step = std::move(step);
  s.loop_a = loop_a;
  if (static_cast<int>(s.val.size()) != n ||
      static_cast<int>(s.parent.size()) != n ||
      static_cast<int>(s.step.size()) != n)
    throw InputError("stratified model: field sizes disagree");
  const int b = s.strata_count();
  if (b == 0) throw InputError("stratified model needs at least one stratum");
  s.stratum_of.assign(n, -1);
  for (int i = 0; i < b; ++i)
    for (int w : s.strata[i]) {
      if (w < 0 || w >= n || s.stratum_of[w] >= 0)
        throw InputError("strata do not partition the nodes");
      s.stratum_of[w] = i;
    }
  for (int w = 0; w < n; ++w)
    if (s.stratum_of[w] < 0) throw InputError("node missing from the strata");
  // intra-stratum trees
  for (int i = 0; i < b; ++i) {
    int roots = 0;
    for (int w : s.strata[i]) {
      if (s.parent[w] < 0) {
        ++roots;
        continue;
      }
      if (s.stratum_of[s.parent[w]] != i)
        throw InputError("tree parent crosses strata");
      // acyclicity via climbing with a bound
      int hops = 0, x = w;
      while (x >= 0 && hops <= n) {
        x = s.parent[x];
        ++hops;
      }
      if (hops > n) throw InputError("parent pointers contain a cycle");
    }
    if (roots != 1) throw InputError("stratum is not a tree");
  }
  if (loop_a && (*loop_a < 0 || *loop_a >= b))
    throw InputError("loop target out of range");
  for (int i = 0; i < b; ++i) {
    bool last = i == b - 1;
    for (int w : s.strata[i]) {
      int t = s.step[w];
      if (last && !loop_a) {
        if (t != -1) throw InputError("loopless model must not step from the last stratum");
        continue;
      }
      int want = last ? *loop_a : i + 1;
      if (t < 0 || t >= n || s.stratum_of[t] != want)
        throw InputError("step leaves the expected stratum");
    }
  }
  // forward confluence and monotonicity along tree edges
  for (int w = 0; w < n; ++w) {
    int p = s.parent[w];
    if (p < 0) continue;
    if (!std::includes(s.val[w].begin(), s.val[w].end(), s.val[p].begin(),
                       s.val[p].end()))
      throw InputError("valuation not monotone along the stratum tree");
    if (s.step[w] >= 0 && s.step[p] >= 0 && !s.tree_leq(s.step[p], s.step[w]))
      throw InputError("step is not forward confluent");
  }
  return s;
}

Model loop_back(const StratifiedModel& s) {
  if (!s.loop_a) throw InputError("loop absent");
  std::vector<std::pair<int, int>> edges;
  for (int w = 0; w < s.size(); ++w)
    if (s.parent[w] >= 0) edges.emplace_back(s.parent[w], w);
  return Model::make(s.names, edges, s.step, s.val);
}

int loop_back_root(const StratifiedModel& s) { return s.root_of(0); }

StratifiedModel unroll(const StratifiedModel& s, int periods) {
  if (!s.loop_a) throw InputError("loop absent");
  if (periods <= 0) return s;
  const int a = *s.loop_a;
  const int b = s.strata_count();
  std::vector<std::string> names = s.names;
  std::vector<std::vector<std::string>> val = s.val;
  std::vector<std::vector<int>> strata = s.strata;
  std::vector<int> parent = s.parent;
  std::vector<int> step = s.step;

  // copy_id[p][w]: the p-th copy of node w (w in strata a..b-1)
  std::vector<std::vector<int>> copy_id(periods, std::vector<int>(s.size(), -1));
  for (int p = 0; p < periods; ++p) {
    for (int i = a; i < b; ++i) {
      std::vector<int> new_stratum;
      for (int w : s.strata[i]) {
        int id = static_cast<int>(names.size());
        copy_id[p][w] = id;
        names.push_back(s.names[w] + "~" + std::to_string(p + 1));
        val.push_back(s.val[w]);
        parent.push_back(-1);  // fixed below
        step.push_back(-1);
        new_stratum.push_back(id);
      }
      strata.push_back(std::move(new_stratum));
    }
  }
  auto copy_of = [&](int p, int w) { return copy_id[p][w]; };
  for (int p = 0; p < periods; ++p)
    for (int i = a; i < b; ++i)
      for (int w : s.strata[i]) {
        int id = copy_of(p, w);
        if (s.parent[w] >= 0) parent[id] = copy_of(p, s.parent[w]);
        if (i < b - 1)
          step[id] = copy_of(p, s.step[w]);
        else if (p + 1 < periods)
          step[id] = copy_of(p + 1, s.step[w]);  // loop image lands in W_a
        else
          step[id] = s.step[w];  // back into the original W_a
      }
  // the original last stratum now steps into the first copy of W_a
  for (int w : s.strata[b - 1]) step[w] = copy_of(0, s.step[w]);
  return StratifiedModel::make(std::move(names), std::move(val),
                               std::move(strata), std::move(parent),
                               std::move(step), a);
}

LabelledTree stratum_tree(const StratifiedModel& s, int k,
                          const std::vector<std::vector<std::string>>& labels) {
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> ls;
  std::vector<std::pair<int, int>> edges;
  std::map<int, int> local;
  for (int w : s.strata[k]) {
    local[w] = static_cast<int>(names.size());
    names.push_back(s.names[w]);
    ls.push_back(labels[w]);
  }
  for (int w : s.strata[k])
    if (s.parent[w] >= 0) edges.emplace_back(local[s.parent[w]], local[w]);
  return LabelledTree::make(
      LabelledPoset::make(std::move(names), std::move(ls), std::move(edges)));
}

std::vector<std::vector<std::string>> sigma_labels(const StratifiedModel& s,
                                                   const std::vector<Fptr>& sigma) {
  Model lb = loop_back(s);
  std::vector<std::vector<std::string>> labels(s.size());
  for (const auto& f : sigma) {
    auto t = lb.truth_set(f);
    std::string tok = render(f);
    for (int w = 0; w < s.size(); ++w)
      if (t[w]) labels[w].push_back(tok);
  }
  for (auto& l : labels) std::sort(l.begin(), l.end());
  return labels;
}

std::variant<StratifiedAnnotation, std::string> check_stratified(const Model& m) {
  const int n = m.size();
  if (n == 0) return std::string("empty model");
  // order components
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int w = 0; w < n; ++w) {
    if (comp[w] >= 0) continue;
    std::vector<int> st{w};
    comp[w] = ncomp;
    while (!st.empty()) {
      int x = st.back();
      st.pop_back();
      for (int v = 0; v < n; ++v)
        if (comp[v] < 0 && (m.leq(x, v) || m.leq(v, x))) {
          comp[v] = ncomp;
          st.push_back(v);
        }
    }
    ++ncomp;
  }
  // each component must be a tree under the order
  std::vector<int> parent(n, -1);
  for (int w = 0; w < n; ++w) {
    const auto& dn = m.down(w);
    for (int a : dn)
      for (int b : dn)
        if (!m.leq(a, b) && !m.leq(b, a))
          return std::string("stratum is not a tree: incomparable predecessors of " +
                             m.name(w));
    int best = -1;
    for (int a : dn)
      if (a != w && (best < 0 || m.leq(best, a))) best = a;
    parent[w] = best;
  }
  std::vector<int> roots_in(ncomp, 0);
  for (int w = 0; w < n; ++w)
    if (parent[w] < 0) ++roots_in[comp[w]];
  for (int c = 0; c < ncomp; ++c)
    if (roots_in[c] != 1) return std::string("stratum is not a tree: it has " +
                                             std::to_string(roots_in[c]) + " roots");
  // quotient successor graph must be a single lasso path
  std::vector<int> next(ncomp, -1);
  for (int w = 0; w < n; ++w) {
    int c = comp[w], d = comp[m.succ(w)];
    if (next[c] >= 0 && next[c] != d)
      return std::string("S splits a stratum across strata");
    next[c] = d;
  }
  std::vector<int> indeg(ncomp, 0);
  for (int c = 0; c < ncomp; ++c) indeg[next[c]]++;
  int start = -1;
  int zero_in = 0;
  for (int c = 0; c < ncomp; ++c)
    if (indeg[c] == 0) {
      ++zero_in;
      start = c;
    }
  if (zero_in > 1) return std::string("strata are not linearly ordered by S");
  if (zero_in == 0) start = comp[0];  // pure cycle: begin at the first world
  std::vector<int> order;
  std::vector<int> pos(ncomp, -1);
  int cur = start;
  while (pos[cur] < 0) {
    pos[cur] = static_cast<int>(order.size());
    order.push_back(cur);
    cur = next[cur];
  }
  if (static_cast<int>(order.size()) != ncomp)
    return std::string("S does not arrange the strata in a single chain");
  int b = ncomp;
  int a = pos[cur];
  if (b == 1) return std::string("S maps a stratum into itself");

  StratifiedAnnotation ann;
  std::vector<std::vector<int>> strata(b);
  for (int w = 0; w < n; ++w) strata[pos[comp[w]]].push_back(w);
  std::vector<std::string> names(n);
  std::vector<std::vector<std::string>> val(n);
  std::vector<int> step(n);
  for (int w = 0; w < n; ++w) {
    names[w] = m.name(w);
    val[w] = m.val(w);
    step[w] = m.succ(w);
  }
  ann.model = StratifiedModel::make(std::move(names), std::move(val),
                                    std::move(strata), std::move(parent),
                                    std::move(step), a);
  ann.expanding = true;
  for (int i = 0; i + 1 < b && ann.expanding; ++i) {
    const auto& ws = ann.model.strata[i];
    for (int w : ws) {
      for (int v : ws)
        if (m.leq(m.succ(w), m.succ(v)) && !m.leq(w, v)) {
          ann.expanding = false;
          break;
        }
      if (!ann.expanding) break;
    }
  }
  return ann;
}

std::optional<Eventuality> fulfillment(const Model& m, int w, const Fptr& f) {
  if (f->conn != Conn::Box && f->conn != Conn::Until)
    throw InputError("fulfillment needs a [] or U shaped formula");
  const Lasso& o = m.orbit(w);
  Eventuality e;
  e.world = w;
  e.formula = f;
  if (f->conn == Conn::Box) {
    auto t = m.truth_set(f->left);
    for (int k = 0; k < o.span(); ++k) {
      e.fulfillment.push_back(o.at(k));
      if (!t[o.at(k)]) {
        e.time = k;
        return e;
      }
    }
    return std::nullopt;  // Box holds, not an eventuality
  }
  auto tpsi = m.truth_set(f->left);
  auto tchi = m.truth_set(f->right);
  for (int k = 0; k < o.span(); ++k) {
    e.fulfillment.push_back(o.at(k));
    if (tchi[o.at(k)]) {
      e.time = k;
      return e;
    }
    if (!tpsi[o.at(k)]) return std::nullopt;  // U fails here
  }
  return std::nullopt;
}

namespace {

struct ColumnData {
  int spawn = -1;
  int base_row = 0;
  std::vector<int> h;  // rows base_row .. horizon
  std::string demand;
  int depth = 0;
};

struct Demand {
  int depth, row, col;
  std::string label;
  bool operator<(const Demand& o) const {
    if (depth != o.depth) return depth > o.depth;  // deepest first
    if (row != o.row) return row < o.row;
    if (col != o.col) return col < o.col;
    return label < o.label;
  }
  bool operator==(const Demand& o) const {
    return depth == o.depth && row == o.row && col == o.col && label == o.label;
  }
};

}  // namespace

StratifyResult stratify_bounded(const Model& m, int w,
                                const std::vector<Fptr>& sigma, int rounds,
                                int horizon) {
  if (w < 0 || w >= m.size()) throw InputError("unknown world id");
  if (horizon < 0) throw InputError("horizon must be >= 0");
  if (!closed_under_subformulas(sigma))
    throw InputError("Sigma must be closed under subformulas");
  // world labels and, per world, the labels realizable strictly above
  std::vector<std::string> wkey(m.size());
  {
    std::vector<std::vector<std::string>> labels(m.size());
    for (const auto& f : sigma) {
      auto t = m.truth_set(f);
      std::string tok = render(f);
      for (int v = 0; v < m.size(); ++v)
        if (t[v]) labels[v].push_back(tok);
    }
    for (int v = 0; v < m.size(); ++v) {
      std::sort(labels[v].begin(), labels[v].end());
      std::string k = "{";
      for (const auto& t : labels[v]) {
        k += t;
        k += ';';
      }
      k += "}";
      wkey[v] = std::move(k);
    }
  }
  // minimal witness world per (base world, label)
  auto witness_for = [&](int base, const std::string& label) {
    for (int v : m.up(base))
      if (wkey[v] == label) return v;
    return -1;
  };

  std::vector<ColumnData> cols;
  {
    ColumnData spine;
    spine.spawn = -1;
    spine.base_row = 0;
    spine.depth = 0;
    const Lasso& o = m.orbit(w);
    for (int r = 0; r <= horizon; ++r) spine.h.push_back(o.at(r));
    spine.demand = wkey[w];
    cols.push_back(std::move(spine));
  }

  auto children_at = [&](int c, int r) {
    std::vector<int> out;
    for (int k = 0; k < static_cast<int>(cols.size()); ++k)
      if (cols[k].spawn == c && cols[k].base_row <= r) out.push_back(k);
    return out;
  };
  // labels realized at or above (c, r) inside the truncation
  auto realized_above = [&](int c, int r) {
    std::set<std::string> out;
    std::vector<int> st{c};
    while (!st.empty()) {
      int x = st.back();
      st.pop_back();
      out.insert(wkey[cols[x].h[r - cols[x].base_row]]);
      for (int k : children_at(x, r)) st.push_back(k);
    }
    return out;
  };
  auto collect_demands = [&]() {
    std::vector<Demand> ds;
    for (int c = 0; c < static_cast<int>(cols.size()); ++c) {
      for (int r = cols[c].base_row; r <= horizon; ++r) {
        int base = cols[c].h[r - cols[c].base_row];
        std::set<std::string> have = realized_above(c, r);
        std::set<std::string> want;
        for (int v : m.up(base)) want.insert(wkey[v]);
        for (const auto& l : want)
          if (!have.count(l)) ds.push_back({cols[c].depth, r, c, l});
      }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
  };

  StratifyResult res;
  res.state.horizon = horizon;
  int fired = 0;
  while (fired < rounds) {
    auto ds = collect_demands();
    if (ds.empty()) break;
    const Demand& d = ds.front();
    int v = witness_for(cols[d.col].h[d.row - cols[d.col].base_row], d.label);
    if (v < 0) throw Error("demand without a witness");
    ColumnData nc;
    nc.spawn = d.col;
    nc.base_row = d.row;
    nc.depth = cols[d.col].depth + 1;
    nc.demand = d.label;
    const Lasso& o = m.orbit(v);
    for (int r = d.row; r <= horizon; ++r) nc.h.push_back(o.at(r - d.row));
    // a column can only hang off an earlier one
    if (!(d.col < static_cast<int>(cols.size())))
      throw Error("defect source created after its own column");
    cols.push_back(std::move(nc));
    ++fired;
    res.state.fired_defects.push_back("(" + std::to_string(d.col) + "," +
                                      std::to_string(d.row) + "," + d.label +
                                      ")");
  }
  res.state.fired = fired;
  res.state.pending = static_cast<int>(collect_demands().size());
  res.state.complete = res.state.pending == 0;
  for (const auto& c : cols)
    res.state.columns.push_back({c.spawn, c.base_row, c.h, c.demand});

  // assemble the truncation
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> val;
  std::vector<std::vector<int>> strata(horizon + 1);
  std::vector<int> parent, step, hmap;
  std::map<std::pair<int, int>, int> id_of;
  for (int c = 0; c < static_cast<int>(cols.size()); ++c)
    for (int r = cols[c].base_row; r <= horizon; ++r) {
      int id = static_cast<int>(names.size());
      id_of[{c, r}] = id;
      names.push_back("c" + std::to_string(c) + "r" + std::to_string(r));
      int base = cols[c].h[r - cols[c].base_row];
      val.push_back(m.val(base));
      hmap.push_back(base);
      strata[r].push_back(id);
      parent.push_back(-1);
      step.push_back(-1);
    }
  for (int c = 0; c < static_cast<int>(cols.size()); ++c)
    for (int r = cols[c].base_row; r <= horizon; ++r) {
      int id = id_of[{c, r}];
      if (cols[c].spawn >= 0) parent[id] = id_of[{cols[c].spawn, r}];
      if (r < horizon) step[id] = id_of[{c, r + 1}];
    }
  res.truncation = StratifiedModel::make(std::move(names), std::move(val),
                                         std::move(strata), std::move(parent),
                                         std::move(step), std::nullopt);
  res.h = std::move(hmap);
  return res;
}

namespace {

std::vector<std::string> atoms_of_label(const std::vector<Fptr>& sigma,
                                        const std::vector<std::string>& label) {
  std::vector<std::string> out;
  for (const auto& f : sigma)
    if (f->conn == Conn::Atom &&
        std::binary_search(label.begin(), label.end(), render(f)))
      out.push_back(f->name);
  return out;
}

std::string fresh_name(const std::set<std::string>& used, std::string base) {
  while (used.count(base)) base += "'";
  return base;
}

}  // namespace

SuResult su_normalize(const StratifiedModel& s, int k,
                      const std::vector<Fptr>& sigma, std::optional<int> point) {
  if (k < 0 || k >= s.strata_count()) throw InputError("stratum index out of range");
  if (point && s.stratum_of[*point] != k)
    throw InputError("designated node must lie in the replaced stratum");
  auto labels = sigma_labels(s, sigma);  // throws when the loop is absent
  LabelledTree tree = stratum_tree(s, k, labels);
  std::map<int, int> local;  // global -> local
  for (int i = 0; i < static_cast<int>(s.strata[k].size()); ++i)
    local[s.strata[k][i]] = i;
  std::optional<int> lpoint;
  if (point) lpoint = local[*point];
  CondenseResult cr = condense(tree, lpoint);

  const int b = s.strata_count();
  const int out_n = cr.tree.p.size();
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> val;
  std::vector<std::vector<int>> strata(b);
  std::vector<int> parent, step, pi;
  std::set<std::string> used;
  for (int w = 0; w < s.size(); ++w)
    if (s.stratum_of[w] != k) used.insert(s.names[w]);

  std::vector<int> old_id(s.size(), -1);   // surviving old -> new id
  std::vector<int> new_id(out_n, -1);      // condensed node -> new id
  for (int i = 0; i < b; ++i) {
    if (i == k) {
      for (int t = 0; t < out_n; ++t) {
        int id = static_cast<int>(names.size());
        new_id[t] = id;
        names.push_back(fresh_name(used, "q" + std::to_string(k) + "_" +
                                             std::to_string(t)));
        used.insert(names.back());
        val.push_back(atoms_of_label(sigma, cr.tree.p.labels[t]));
        strata[i].push_back(id);
        parent.push_back(-1);
        step.push_back(-1);
        pi.push_back(s.strata[k][cr.maps.iota[t]]);
      }
    } else {
      for (int w : s.strata[i]) {
        int id = static_cast<int>(names.size());
        old_id[w] = id;
        names.push_back(s.names[w]);
        val.push_back(s.val[w]);
        strata[i].push_back(id);
        parent.push_back(-1);
        step.push_back(-1);
        pi.push_back(w);
      }
    }
  }
  auto rho_global = [&](int w) {  // old stratum-k node -> new id
    return new_id[cr.maps.rho[local.at(w)]];
  };
  // wiring
  for (int i = 0; i < b; ++i) {
    if (i == k) continue;
    for (int w : s.strata[i]) {
      int id = old_id[w];
      if (s.parent[w] >= 0) parent[id] = old_id[s.parent[w]];
      int t = s.step[w];
      if (t < 0) continue;
      step[id] = s.stratum_of[t] == k ? rho_global(t) : old_id[t];
    }
  }
  for (int t = 0; t < out_n; ++t) {
    int id = new_id[t];
    // tree structure of the condensed stratum
    for (int c : cr.tree.p.tree_children(t)) parent[new_id[c]] = id;
    int old = s.strata[k][cr.maps.iota[t]];
    int tgt = s.step[old];
    if (tgt < 0) continue;
    step[id] = s.stratum_of[tgt] == k ? rho_global(tgt) : old_id[tgt];
  }
  SuResult r;
  r.model = StratifiedModel::make(std::move(names), std::move(val),
                                  std::move(strata), std::move(parent),
                                  std::move(step), s.loop_a);
  r.pi = std::move(pi);
  if (cr.point) r.point = new_id[*cr.point];
  return r;
}

SuResult su_collapse(const StratifiedModel& s, int k, int l,
                     const std::vector<int>& sigma_map,
                     const std::vector<Fptr>& sigma,
                     std::optional<std::pair<int, int>> points) {
  const int b = s.strata_count();
  if (!(0 <= k && k < l && l < b)) throw InputError("need 0 <= k < l < b");
  auto labels = sigma_labels(s, sigma);
  // sigma_map is total on W_k with images in W_l
  std::map<int, int> local_k, local_l;
  for (int i = 0; i < static_cast<int>(s.strata[k].size()); ++i)
    local_k[s.strata[k][i]] = i;
  for (int i = 0; i < static_cast<int>(s.strata[l].size()); ++i)
    local_l[s.strata[l][i]] = i;
  if (sigma_map.size() != s.strata[k].size())
    throw InputError("sigma must be total on W_k");
  LabelledTree tk = stratum_tree(s, k, labels);
  LabelledTree tl = stratum_tree(s, l, labels);
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i < static_cast<int>(sigma_map.size()); ++i) {
    auto it = local_l.find(sigma_map[i]);
    if (it == local_l.end()) throw InputError("sigma image outside W_l");
    rel.emplace_back(i, it->second);
  }
  SimReport sr = check_simulation(rel, tk.p, tl.p, SimKind::Immersion);
  if (!sr.ok) throw InputError("sigma is not an immersion of the labelled strata");
  if (points) {
    if (s.stratum_of[points->first] != k || s.stratum_of[points->second] != l)
      throw InputError("designated nodes must lie in W_k and W_l");
    if (sigma_map[local_k.at(points->first)] != points->second)
      throw InputError("sigma must map the designated node accordingly");
  }
  if (s.loop_a && *s.loop_a > k && *s.loop_a <= l)
    throw InputError("loop target falls in the removed strata");

  std::vector<std::string> names;
  std::vector<std::vector<std::string>> val;
  std::vector<std::vector<int>> strata;
  std::vector<int> parent, step, pi;
  std::vector<int> old_id(s.size(), -1);
  for (int i = 0; i < b; ++i) {
    if (i > k && i <= l) continue;
    std::vector<int> ns;
    for (int w : s.strata[i]) {
      int id = static_cast<int>(names.size());
      old_id[w] = id;
      names.push_back(s.names[w]);
      val.push_back(s.val[w]);
      parent.push_back(-1);
      step.push_back(-1);
      ns.push_back(id);
      pi.push_back(i == k ? sigma_map[local_k.at(w)] : w);
    }
    strata.push_back(std::move(ns));
  }
  for (int i = 0; i < b; ++i) {
    if (i > k && i <= l) continue;
    for (int w : s.strata[i]) {
      int id = old_id[w];
      if (s.parent[w] >= 0) parent[id] = old_id[s.parent[w]];
      if (i == k) {
        int tgt = s.step[sigma_map[local_k.at(w)]];  // step out of W_l
        if (tgt >= 0) step[id] = old_id[tgt];
      } else {
        if (s.step[w] >= 0) step[id] = old_id[s.step[w]];
      }
    }
  }
  std::optional<int> new_loop = s.loop_a;
  if (new_loop && *new_loop > l) *new_loop -= (l - k);
  SuResult r;
  r.model = StratifiedModel::make(std::move(names), std::move(val),
                                  std::move(strata), std::move(parent),
                                  std::move(step), new_loop);
  r.pi = std::move(pi);
  if (points) r.point = old_id[points->first];
  return r;
}

GoodReport is_good(const StratifiedModel& s, int a, int b,
                   const std::vector<Fptr>& sigma) {
  GoodReport r;
  if (!s.loop_a || *s.loop_a != a || s.strata_count() != b)
    throw InputError("loop must be set at (a, b)");
  const std::uint64_t n = sigma.size();
  r.details.push_back("clause 1 evaluated with n = |Sigma| = " +
                      std::to_string(n));

  // clause 1: a < b <= 2 E(2^{n+1}, n+1) + Q(2^n, n+1) E(2^{n+1}, n+3)
  Bound e1 = e_number(1ull << (n + 1), n + 1);
  Bound q1 = q_number(1ull << n, n + 1);
  Bound e3 = e_number(1ull << (n + 1), n + 3);
  bool bound_ok = a < b;
  if (bound_ok) {
    if (e1.is_exact() && q1.is_exact() && e3.is_exact()) {
      BigNat lim = BigNat(2) * *e1.exact + *q1.exact * *e3.exact;
      bound_ok = BigNat(static_cast<std::uint64_t>(b)) <= lim;
    }
    // symbolic towers dwarf any representable b
  }
  r.clause_bound = bound_ok;
  if (!bound_ok) r.details.push_back("clause 1: b exceeds the computable bound");

  auto labels = sigma_labels(s, sigma);
  LabelledTree ta = stratum_tree(s, a, labels);
  LabelledTree tb = stratum_tree(s, b - 1, labels);
  r.clause_bimersive = are_bimersive(ta.p, tb.p);
  if (!r.clause_bimersive)
    r.details.push_back("clause 2: loop strata are not bimersive");

  Model lb = loop_back(s);
  r.clause_fulfillment = true;
  for (int w : s.strata[a]) {
    for (const auto& f : sigma) {
      if (f->conn != Conn::Box && f->conn != Conn::Until) continue;
      auto ev = fulfillment(lb, w, f);
      if (ev && ev->time >= b - a) {
        r.clause_fulfillment = false;
        r.details.push_back("clause 3: fulfillment time " +
                            std::to_string(ev->time) + " of (" + s.names[w] +
                            ", " + render(f) + ") is not below " +
                            std::to_string(b - a));
      }
    }
  }

  Bound qbound = q_number(1ull << (n + 1), n + 3);
  r.clause_sizes = true;
  for (int c = 0; c < b; ++c) {
    std::uint64_t sz = s.strata[c].size();
    bool ok = qbound.at_least(sz);
    if (!ok) {
      r.clause_sizes = false;
      r.details.push_back("clause 4: stratum " + std::to_string(c) +
                          " exceeds the size bound");
    }
  }
  r.good = r.clause_bound && r.clause_bimersive && r.clause_fulfillment &&
           r.clause_sizes;
  return r;
}

}  // namespace itl
