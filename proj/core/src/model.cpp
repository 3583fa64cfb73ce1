#include "itl/model.hpp"

#include <algorithm>

#include "itl/parser.hpp"

namespace itl {

namespace {
bool sorted_contains(const std::vector<int>& v, int x) {
  return std::binary_search(v.begin(), v.end(), x);
}
}  // namespace

Model Model::make(std::vector<std::string> names,
                  const std::vector<std::pair<int, int>>& order_edges,
                  std::vector<int> succ,
                  std::vector<std::vector<std::string>> val) {
  Model m;
  const int n = static_cast<int>(names.size());
  if (static_cast<int>(succ.size()) != n)
    throw InputError("succ must be total: one successor per world");
  if (static_cast<int>(val.size()) != n)
    throw InputError("valuation must cover every world");
  for (int w = 0; w < n; ++w)
    if (succ[w] < 0 || succ[w] >= n) throw InputError("succ target out of range");
  m.names_ = std::move(names);
  for (int w = 0; w < n; ++w) {
    if (!m.index_.emplace(m.names_[w], w).second)
      throw InputError("duplicate world id: " + m.names_[w]);
  }
  m.succ_ = std::move(succ);
  m.val_ = std::move(val);
  for (auto& v : m.val_) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  m.gen_edges_ = order_edges;

  // reflexive-transitive closure of the generator edges
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : order_edges) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw InputError("order edge endpoint out of range");
    adj[a].push_back(b);
  }
  m.up_.assign(n, {});
  for (int w = 0; w < n; ++w) {
    std::vector<bool> seen(n, false);
    std::vector<int> stack{w};
    seen[w] = true;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : adj[x])
        if (!seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
    }
    for (int v = 0; v < n; ++v)
      if (seen[v]) m.up_[w].push_back(v);
  }
  m.down_.assign(n, {});
  for (int w = 0; w < n; ++w)
    for (int v : m.up_[w]) m.down_[v].push_back(w);
  for (auto& d : m.down_) std::sort(d.begin(), d.end());

  m.orbits_.resize(n);
  for (int w = 0; w < n; ++w) {
    std::vector<int> pos(n, -1);
    std::vector<int> walk;
    int cur = w;
    while (pos[cur] < 0) {
      pos[cur] = static_cast<int>(walk.size());
      walk.push_back(cur);
      cur = m.succ_[cur];
    }
    int split = pos[cur];
    m.orbits_[w].prefix.assign(walk.begin(), walk.begin() + split);
    m.orbits_[w].cycle.assign(walk.begin() + split, walk.end());
  }
  return m;
}

int Model::index(const std::string& n) const {
  auto it = index_.find(n);
  return it == index_.end() ? -1 : it->second;
}

bool Model::leq(int a, int b) const { return sorted_contains(up_[a], b); }

bool Model::has_atom(int w, const std::string& a) const {
  return std::binary_search(val_[w].begin(), val_[w].end(), a);
}

std::vector<std::pair<int, int>> Model::reduction_edges() const {
  std::vector<std::pair<int, int>> out;
  const int n = size();
  for (int a = 0; a < n; ++a) {
    for (int b : up_[a]) {
      if (b == a) continue;
      if (leq(b, a)) continue;  // 2-cycle: keep one direction for io
      bool covered = false;
      for (int c : up_[a]) {
        if (c == a || c == b || leq(c, a)) continue;
        if (leq(c, b) && !leq(b, c)) {
          covered = true;
          break;
        }
      }
      if (!covered) out.emplace_back(a, b);
    }
  }
  // 2-cycles (broken inputs) still need both edges to round-trip
  for (int a = 0; a < n; ++a)
    for (int b : up_[a])
      if (b != a && leq(b, a)) out.emplace_back(a, b);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ClassReport Model::validate() const {
  ClassReport r;
  const int n = size();
  auto flag = [&](bool& f, const std::string& check,
                  std::initializer_list<int> ws) {
    if (!f) return;  // first witness only
    f = false;
    ClassViolation v;
    v.check = check;
    for (int w : ws) v.witness.push_back(names_[w]);
    r.violations.push_back(std::move(v));
  };

  for (int a = 0; a < n && r.is_poset; ++a)
    for (int b : up_[a])
      if (b != a && leq(b, a)) {
        flag(r.is_poset, "antisymmetry", {a, b});
        break;
      }

  for (int a = 0; a < n && r.is_monotone; ++a) {
    for (int b : up_[a]) {
      if (!std::includes(val_[b].begin(), val_[b].end(), val_[a].begin(),
                         val_[a].end())) {
        flag(r.is_monotone, "monotone_valuation", {a, b});
        break;
      }
    }
  }

  for (int a = 0; a < n && r.is_forward_confluent; ++a) {
    for (int b : up_[a]) {
      if (!leq(succ_[a], succ_[b])) {
        flag(r.is_forward_confluent, "forward_confluence", {a, b});
        break;
      }
    }
  }

  for (int a = 0; a < n && r.is_backward_confluent; ++a) {
    for (int u : up_[succ_[a]]) {
      bool found = false;
      for (int v : up_[a])
        if (succ_[v] == u) {
          found = true;
          break;
        }
      if (!found) {
        flag(r.is_backward_confluent, "backward_confluence", {a, u});
        break;
      }
    }
  }
  r.is_persistent = r.is_forward_confluent && r.is_backward_confluent;

  // here-and-there: a partition into two-element columns respected by S
  {
    std::vector<int> top_of(n, -1);  // bottom -> top
    std::vector<int> role(n, 0);     // 1 bottom, 2 top
    bool ok = r.is_poset;
    int bad = -1;
    for (int w = 0; w < n && ok; ++w) {
      if (up_[w].size() == 1) {
        role[w] = 2;
      } else if (up_[w].size() == 2) {
        role[w] = 1;
        int t = up_[w][0] == w ? up_[w][1] : up_[w][0];
        top_of[w] = t;
      } else {
        ok = false;
        bad = w;
      }
    }
    if (ok) {
      std::vector<int> pair_count(n, 0);
      for (int w = 0; w < n; ++w)
        if (role[w] == 1) {
          if (role[top_of[w]] != 2) {
            ok = false;
            bad = w;
            break;
          }
          pair_count[top_of[w]]++;
        }
      for (int w = 0; w < n && ok; ++w)
        if (role[w] == 2 && pair_count[w] != 1) {
          ok = false;
          bad = w;
        }
      // S acts columnwise
      for (int w = 0; w < n && ok; ++w) {
        if (role[w] != 1) continue;
        int sb = succ_[w], st = succ_[top_of[w]];
        if (role[sb] != 1 || top_of[sb] != st) {
          ok = false;
          bad = w;
        }
      }
    }
    if (!ok) flag(r.is_here_and_there, "here_and_there", {bad < 0 ? 0 : bad});
  }
  if (n == 0) r.is_here_and_there = false;
  return r;
}

namespace {

struct Evaluator {
  const Model& m;
  std::map<std::string, std::vector<bool>> memo;

  const std::vector<bool>& truth(const Fptr& f) {
    std::string key = render(f);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<bool> t = compute(f);
    return memo.emplace(std::move(key), std::move(t)).first->second;
  }

  std::vector<bool> compute(const Fptr& f) {
    const int n = m.size();
    std::vector<bool> t(n, false);
    switch (f->conn) {
      case Conn::Bottom:
        break;
      case Conn::Atom:
        for (int w = 0; w < n; ++w) t[w] = m.has_atom(w, f->name);
        break;
      case Conn::And: {
        const auto& a = truth(f->left);
        const auto& b = truth(f->right);
        for (int w = 0; w < n; ++w) t[w] = a[w] && b[w];
        break;
      }
      case Conn::Or: {
        const auto& a = truth(f->left);
        const auto& b = truth(f->right);
        for (int w = 0; w < n; ++w) t[w] = a[w] || b[w];
        break;
      }
      case Conn::Neg: {
        const auto& a = truth(f->left);
        for (int w = 0; w < n; ++w) {
          bool holds = true;
          for (int v : m.up(w))
            if (a[v]) {
              holds = false;
              break;
            }
          t[w] = holds;
        }
        break;
      }
      case Conn::Imp: {
        const auto& a = truth(f->left);
        const auto& b = truth(f->right);
        for (int w = 0; w < n; ++w) {
          bool holds = true;
          for (int v : m.up(w))
            if (a[v] && !b[v]) {
              holds = false;
              break;
            }
          t[w] = holds;
        }
        break;
      }
      case Conn::Next: {
        const auto& a = truth(f->left);
        for (int w = 0; w < n; ++w) t[w] = a[m.succ(w)];
        break;
      }
      case Conn::Diam: {
        const auto& a = truth(f->left);
        for (int w = 0; w < n; ++w) {
          const Lasso& o = m.orbit(w);
          for (int k = 0; k < o.span(); ++k)
            if (a[o.at(k)]) {
              t[w] = true;
              break;
            }
        }
        break;
      }
      case Conn::Box: {
        const auto& a = truth(f->left);
        for (int w = 0; w < n; ++w) {
          bool all = true;
          const Lasso& o = m.orbit(w);
          for (int k = 0; k < o.span(); ++k)
            if (!a[o.at(k)]) {
              all = false;
              break;
            }
          t[w] = all;
        }
        break;
      }
      case Conn::Until: {
        const auto& a = truth(f->left);
        const auto& b = truth(f->right);
        for (int w = 0; w < n; ++w) {
          const Lasso& o = m.orbit(w);
          for (int k = 0; k < o.span(); ++k) {
            int u = o.at(k);
            if (b[u]) {
              t[w] = true;
              break;
            }
            if (!a[u]) break;
          }
        }
        break;
      }
      case Conn::Release: {
        const auto& a = truth(f->left);
        const auto& b = truth(f->right);
        for (int w = 0; w < n; ++w) {
          // clause 10 wants a strictly earlier phi, so psi is tested first
          bool holds = true;
          bool a_seen = false;
          const Lasso& o = m.orbit(w);
          for (int k = 0; k < o.span(); ++k) {
            int u = o.at(k);
            if (!a_seen && !b[u]) {
              holds = false;
              break;
            }
            if (a[u]) {
              a_seen = true;
              break;
            }
          }
          t[w] = holds;
        }
        break;
      }
    }
    return t;
  }
};

}  // namespace

std::vector<bool> Model::truth_set(const Fptr& f) const {
  Evaluator ev{*this, {}};
  return ev.truth(f);
}

std::vector<std::vector<bool>> Model::truth_sets(
    const std::vector<Fptr>& fs) const {
  Evaluator ev{*this, {}};
  std::vector<std::vector<bool>> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(ev.truth(f));
  return out;
}

bool Model::eval(int w, const Fptr& f) const {
  if (w < 0 || w >= size()) throw InputError("unknown world id");
  return truth_set(f)[w];
}

}  // namespace itl
