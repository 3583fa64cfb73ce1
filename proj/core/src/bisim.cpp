#include "itl/bisim.hpp"

#include <algorithm>

namespace itl {

Flavor flavor_from_name(const std::string& name) {
  if (name == "next") return Flavor::Next;
  if (name == "until") return Flavor::Until;
  if (name == "release") return Flavor::Release;
  throw InputError("unknown flavor: " + name);
}

const char* flavor_name(Flavor f) {
  switch (f) {
    case Flavor::Next: return "next";
    case Flavor::Until: return "until";
    case Flavor::Release: return "release";
  }
  return "?";
}

bool BisimFamily::holds(int level, int w1, int w2) const {
  const auto& l = levels[level];
  return std::find(l.begin(), l.end(), std::make_pair(w1, w2)) != l.end();
}

namespace {

using Grid = std::vector<std::vector<char>>;  // [w1][w2]

Grid to_grid(const std::vector<std::pair<int, int>>& pairs, int n1, int n2) {
  Grid g(n1, std::vector<char>(n2, 0));
  for (auto [a, b] : pairs) {
    if (a < 0 || a >= n1 || b < 0 || b >= n2)
      throw InputError("family pair out of range");
    g[a][b] = 1;
  }
  return g;
}

// One refinement context: the level-i relation plus the two derived
// witness grids used by the temporal clauses.
struct Level {
  Grid z;
  // updown[a][b]: exists (v1,v2) in Z with v1 >= a and v2 <= b
  Grid updown;
  // downup[a][b]: exists (v1,v2) in Z with v1 <= a and v2 >= b
  Grid downup;
};

Level make_level(const Model& m1, const Model& m2, Grid z) {
  const int n1 = m1.size(), n2 = m2.size();
  Level l;
  l.updown.assign(n1, std::vector<char>(n2, 0));
  l.downup.assign(n1, std::vector<char>(n2, 0));
  for (int v1 = 0; v1 < n1; ++v1)
    for (int v2 = 0; v2 < n2; ++v2) {
      if (!z[v1][v2]) continue;
      for (int a : m1.down(v1))
        for (int b : m2.up(v2)) l.updown[a][b] = 1;
      for (int a : m1.up(v1))
        for (int b : m2.down(v2)) l.downup[a][b] = 1;
    }
  l.z = std::move(z);
  return l;
}

struct ClauseChecker {
  const Model& m1;
  const Model& m2;
  int horizon_mult;

  int horizon(const Model& m, int w) const {
    const Lasso& o = m.orbit(w);
    return (static_cast<int>(o.prefix.size()) +
            2 * static_cast<int>(o.cycle.size())) *
           horizon_mult;
  }

  bool atoms(int w1, int w2) const { return m1.val(w1) == m2.val(w2); }

  bool forth_imp(const Level& prev, int w1, int w2) const {
    for (int v1 : m1.up(w1)) {
      bool found = false;
      for (int v2 : m2.up(w2))
        if (prev.z[v1][v2]) {
          found = true;
          break;
        }
      if (!found) return false;
    }
    return true;
  }

  bool back_imp(const Level& prev, int w1, int w2) const {
    for (int v2 : m2.up(w2)) {
      bool found = false;
      for (int v1 : m1.up(w1))
        if (prev.z[v1][v2]) {
          found = true;
          break;
        }
      if (!found) return false;
    }
    return true;
  }

  bool forth_next(const Level& prev, int w1, int w2) const {
    return prev.z[m1.succ(w1)][m2.succ(w2)];
  }

  // Shared engine for the four U/R clauses. The grid entry pat[j1][j2]
  // holds when the clause's witness pattern is satisfiable at
  // (S^{j1}(w1), S^{j2}(w2)) against the previous level. universal_first:
  // the clause universally quantifies the model-1 step index.
  bool temporal(const Grid& pat_full, int k1max, int k2max,
                bool universal_first) const {
    if (universal_first) {
      // forall k1 exists k2: pat(k1,k2) and forall j2<k2 exists j1<k1: pat
      for (int k1 = 0; k1 < k1max; ++k1) {
        bool ok_k1 = false;
        bool allpref = true;  // forall j2 < k2 so far: exists j1 < k1
        for (int k2 = 0; k2 < k2max && allpref; ++k2) {
          if (pat_full[k1][k2]) {
            ok_k1 = true;
            break;
          }
          bool exists_j1 = false;
          for (int j1 = 0; j1 < k1; ++j1)
            if (pat_full[j1][k2]) {
              exists_j1 = true;
              break;
            }
          allpref = exists_j1;
        }
        if (!ok_k1) return false;
      }
      return true;
    }
    // forall k2 exists k1 symmetric
    for (int k2 = 0; k2 < k2max; ++k2) {
      bool ok_k2 = false;
      bool allpref = true;
      for (int k1 = 0; k1 < k1max && allpref; ++k1) {
        if (pat_full[k1][k2]) {
          ok_k2 = true;
          break;
        }
        bool exists_j2 = false;
        for (int j2 = 0; j2 < k2; ++j2)
          if (pat_full[k1][j2]) {
            exists_j2 = true;
            break;
          }
        allpref = exists_j2;
      }
      if (!ok_k2) return false;
    }
    return true;
  }

  Grid orbit_grid(const Grid& base, int w1, int w2, int k1max, int k2max) const {
    const Lasso& o1 = m1.orbit(w1);
    const Lasso& o2 = m2.orbit(w2);
    Grid g(k1max, std::vector<char>(k2max, 0));
    for (int i = 0; i < k1max; ++i)
      for (int j = 0; j < k2max; ++j) g[i][j] = base[o1.at(i)][o2.at(j)];
    return g;
  }

  bool forth_u(const Level& prev, int w1, int w2) const {
    int k1 = horizon(m1, w1), k2 = horizon(m2, w2);
    return temporal(orbit_grid(prev.updown, w1, w2, k1, k2), k1, k2, true);
  }
  bool back_u(const Level& prev, int w1, int w2) const {
    int k1 = horizon(m1, w1), k2 = horizon(m2, w2);
    return temporal(orbit_grid(prev.downup, w1, w2, k1, k2), k1, k2, false);
  }
  bool forth_r(const Level& prev, int w1, int w2) const {
    int k1 = horizon(m1, w1), k2 = horizon(m2, w2);
    return temporal(orbit_grid(prev.updown, w1, w2, k1, k2), k1, k2, false);
  }
  bool back_r(const Level& prev, int w1, int w2) const {
    int k1 = horizon(m1, w1), k2 = horizon(m2, w2);
    return temporal(orbit_grid(prev.downup, w1, w2, k1, k2), k1, k2, true);
  }

  bool level_clauses(Flavor flavor, const Level& prev, int w1, int w2,
                     std::string* which = nullptr) const {
    auto fail = [&](const char* name) {
      if (which) *which = name;
      return false;
    };
    if (!forth_imp(prev, w1, w2)) return fail("forth ->");
    if (!back_imp(prev, w1, w2)) return fail("back ->");
    if (!forth_next(prev, w1, w2)) return fail("forth X");
    if (flavor == Flavor::Until) {
      if (!forth_u(prev, w1, w2)) return fail("forth U");
      if (!back_u(prev, w1, w2)) return fail("back U");
    } else if (flavor == Flavor::Release) {
      if (!forth_r(prev, w1, w2)) return fail("forth R");
      if (!back_r(prev, w1, w2)) return fail("back R");
    }
    return true;
  }
};

}  // namespace

FamilyReport check_family(const Model& m1, const Model& m2,
                          const BisimFamily& fam, int horizon_mult) {
  FamilyReport r;
  const int n1 = m1.size(), n2 = m2.size();
  if (fam.levels.empty()) {
    r.ok = false;
    r.violations.push_back("family has no levels");
    return r;
  }
  auto bad = [&](const std::string& msg) {
    r.ok = false;
    if (r.violations.size() < 16) r.violations.push_back(msg);
  };
  ClauseChecker ck{m1, m2, horizon_mult};
  std::vector<Grid> grids;
  for (const auto& l : fam.levels) grids.push_back(to_grid(l, n1, n2));

  for (std::size_t i = 0; i + 1 < grids.size(); ++i)
    for (int a = 0; a < n1; ++a)
      for (int b = 0; b < n2; ++b)
        if (grids[i + 1][a][b] && !grids[i][a][b])
          bad("Z_" + std::to_string(i + 1) + " not included in Z_" +
              std::to_string(i) + " at (" + m1.name(a) + "," + m2.name(b) + ")");

  for (std::size_t i = 0; i < grids.size(); ++i)
    for (int a = 0; a < n1; ++a)
      for (int b = 0; b < n2; ++b)
        if (grids[i][a][b] && !ck.atoms(a, b))
          bad("atoms clause fails at level " + std::to_string(i) + " pair (" +
              m1.name(a) + "," + m2.name(b) + ")");

  for (std::size_t i = 0; i + 1 < grids.size(); ++i) {
    Level prev = make_level(m1, m2, grids[i]);
    for (int a = 0; a < n1; ++a)
      for (int b = 0; b < n2; ++b) {
        if (!grids[i + 1][a][b]) continue;
        std::string which;
        if (!ck.level_clauses(fam.flavor, prev, a, b, &which))
          bad(which + " fails at level " + std::to_string(i + 1) + " pair (" +
              m1.name(a) + "," + m2.name(b) + ")");
      }
  }
  return r;
}

BisimFamily max_family(const Model& m1, const Model& m2, int n, Flavor flavor,
                       int horizon_mult) {
  const int n1 = m1.size(), n2 = m2.size();
  ClauseChecker ck{m1, m2, horizon_mult};
  BisimFamily fam;
  fam.flavor = flavor;
  Grid z(n1, std::vector<char>(n2, 0));
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b) z[a][b] = ck.atoms(a, b);
  auto emit = [&](const Grid& g) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n1; ++a)
      for (int b = 0; b < n2; ++b)
        if (g[a][b]) pairs.emplace_back(a, b);
    fam.levels.push_back(std::move(pairs));
  };
  emit(z);
  for (int i = 1; i <= n; ++i) {
    Level prev = make_level(m1, m2, z);
    Grid nz(n1, std::vector<char>(n2, 0));
    for (int a = 0; a < n1; ++a)
      for (int b = 0; b < n2; ++b)
        if (prev.z[a][b])
          nz[a][b] = ck.level_clauses(flavor, prev, a, b);
    z = std::move(nz);
    emit(z);
  }
  return fam;
}

}  // namespace itl
