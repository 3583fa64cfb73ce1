// Acceptance suite: one line per criterion, nonzero exit when any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "itl/bignat.hpp"
#include "itl/bisim.hpp"
#include "itl/condense.hpp"
#include "itl/families.hpp"
#include "itl/io.hpp"
#include "itl/oracle.hpp"
#include "itl/parser.hpp"
#include "itl/strat.hpp"
#include "itl/symline.hpp"
#include "testutil.hpp"

using namespace itl;
using namespace itl::test;

namespace {

int failures = 0;

struct Criterion {
  int id;
  std::string note;
  bool ok = true;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  void expect(bool v, const std::string& what) {
    if (!v) {
      ok = false;
      note += (note.empty() ? "" : "; ") + what;
    }
  }
  void finish() {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::printf("criterion %2d: %s (%lld ms)%s%s\n", id, ok ? "PASS" : "FAIL",
                static_cast<long long>(ms), note.empty() ? "" : " -- ",
                note.c_str());
    if (!ok) ++failures;
  }
};

const std::vector<Fptr>& schemata() { return schemata16(); }

bool all_true(const std::vector<bool>& t) {
  for (bool b : t)
    if (!b) return false;
  return true;
}

void criterion1() {
  Criterion c{1, ""};
  std::uint64_t models = 0;
  SearchSpec spec;
  spec.max_worlds = 3;
  spec.atoms = {"p", "q"};
  bool valid = true;
  enumerate_models(spec, [&](const Model& m, std::uint64_t) {
    ++models;
    auto ts = m.truth_sets(schemata());
    for (const auto& t : ts)
      if (!all_true(t)) valid = false;
    return valid;
  });
  c.expect(valid, "a schema failed on an enumerated model");
  c.expect(models > 7000, "enumeration looks truncated");
  for (std::uint64_t seed = 0; seed < 1000 && c.ok; ++seed) {
    SearchSpec rs;
    rs.max_worlds = 8;
    rs.atoms = {"p", "q"};
    rs.seed = seed;
    Model m = random_model(rs);
    auto ts = m.truth_sets(schemata());
    for (const auto& t : ts)
      if (!all_true(t)) c.expect(false, "schema failed on a random model");
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - c.start)
                .count();
  c.expect(ms < 300000, "runtime budget of 5 minutes exceeded");
  c.finish();
}

void criterion2() {
  Criterion c{2, ""};
  Model iltl = builtin_model("fig-iltl");
  c.expect(!iltl.eval(iltl.index("w"), parse("(X p -> p) | (p -> X p)")),
           "fig-iltl w must falsify the disjunction");
  Model imla = builtin_model("fig-imla");
  c.expect(imla.eval(imla.index("w"), parse("~ X p & ~ X ~ p")),
           "fig-imla w must satisfy the conjunction");
  c.finish();
}

void criterion3() {
  Criterion c{3, ""};
  Fptr phi = parse("(X p -> X q) -> X (p -> q)");
  SearchSpec all;
  all.max_worlds = 3;
  all.atoms = {"p", "q"};
  Verdict v = bounded_decide(phi, all);
  c.expect(v.outcome == Verdict::Outcome::WitnessFound,
           "countermodel within 3 worlds expected");
  if (v.witness)
    c.expect(!v.witness->first.eval(v.witness->second, phi),
             "witness must falsify the formula");
  SearchSpec pers = all;
  pers.max_worlds = 4;
  pers.cls = ClassFilter::Persistent;
  c.expect(bounded_decide(phi, pers).outcome ==
               Verdict::Outcome::HoldsWithinBound,
           "persistent validity up to 4 worlds expected");
  c.finish();
}

void criterion4() {
  Criterion c{4, ""};
  Fptr phi = parse("~ ~ <> [] p -> <> ~ ~ [] p");
  c.expect(!line_eval(true, 0, phi), "the line model must falsify at r");
  SearchSpec pers;
  pers.max_worlds = 4;
  pers.atoms = {"p"};
  pers.cls = ClassFilter::Persistent;
  c.expect(bounded_decide(phi, pers).outcome ==
               Verdict::Outcome::HoldsWithinBound,
           "finite persistent validity up to 4 worlds expected");
  c.finish();
}

void criterion5() {
  Criterion c{5, ""};
  for (int n : {2, 3}) {
    Model h = builtin_model("ht", n);
    int a = h.index("1_0"), b = h.index("1_1");
    BisimFamily mf = max_family(h, h, n, Flavor::Until);
    c.expect(mf.holds(n, a, b), "max family must relate (1,0),(1,1) at level n");
    c.expect(check_family(h, h, canonical_family("ht", n).family).ok,
             "canonical ht family rejected");
    c.expect(!h.eval(a, parse("[] p")) && h.eval(b, parse("[] p")),
             "box p must separate the pair");
    auto formulas = enumerate_formulas({"p"}, Fragment::U, 2);
    auto ts = h.truth_sets(formulas);
    for (std::size_t i = 0; i < formulas.size(); ++i)
      if (ts[i][a] != ts[i][b])
        c.expect(false, "agreement oracle failed on " + render(formulas[i]));
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - c.start)
                .count();
  c.expect(ms < 60000, "runtime budget of 1 minute exceeded");
  c.finish();
}

void criterion6() {
  Criterion c{6, ""};
  for (int n : {3, 4}) {
    Model d = builtin_model("diam", n);
    int a = d.index("1_0"), b = d.index("1_1");
    c.expect(check_family(d, d, canonical_family("diam", n).family).ok,
             "canonical diam family rejected");
    c.expect(canonical_family("diam", n).family.holds(n - 1, a, b),
             "family must relate (1,0),(1,1) at its top level");
    c.expect(!d.eval(a, parse("<> p")) && d.eval(b, parse("<> p")),
             "diamond p must separate the pair");
    auto formulas = enumerate_formulas({"p"}, Fragment::R, 2);
    auto ts = d.truth_sets(formulas);
    for (std::size_t i = 0; i < formulas.size(); ++i)
      if (ts[i][a] != ts[i][b])
        c.expect(false, "agreement oracle failed on " + render(formulas[i]));
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - c.start)
                .count();
  c.expect(ms < 300000, "runtime budget of 5 minutes exceeded");
  c.finish();
}

void criterion7() {
  Criterion c{7, ""};
  Fptr def = diamond_def_formula();
  Fptr dp = parse("<> p");
  for (int n = 1; n <= 4; ++n) {
    Model h = builtin_model("ht", n);
    c.expect(h.truth_set(dp) == h.truth_set(def),
             "definition must match on ht(" + std::to_string(n) + ")");
  }
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    SearchSpec spec;
    spec.max_worlds = 12;  // |T| up to 6 columns
    spec.atoms = {"p"};
    spec.cls = ClassFilter::HereAndThere;
    spec.seed = seed;
    Model h = random_model(spec);
    if (h.truth_set(dp) != h.truth_set(def))
      c.expect(false, "definition failed on a random here-and-there model");
  }
  c.finish();
}

void criterion8() {
  Criterion c{8, ""};
  // the Q(2,3) oracle, straight from the recurrence
  std::uint64_t e = 0, q = 0;
  for (int k = 1; k <= 3; ++k) {
    q = 1 + e * q;
    e = e + 2 * (1ull << e);
  }
  c.expect(q == 31, "hand recurrence must give Q(2,3) = 31");
  Rng rng(42424242);
  for (int i = 0; i < 200; ++i) {
    LabelledTree t = random_tree(rng, 20, 3);
    CondenseResult r = condense(t);
    c.expect(r.tree.p.size() <= static_cast<int>(q),
             "condensed size exceeds Q(2,3)");
    SimReport chk = check_condensation(r.maps.rho, r.maps.iota, t.p, r.tree.p);
    c.expect(chk.ok, "condensation maps failed verification");
    for (int v = 0; v < r.tree.p.size(); ++v)
      c.expect(r.maps.rho[r.maps.iota[v]] == v, "rho . iota is not the identity");
  }
  c.finish();
}

void criterion9() {
  Criterion c{9, ""};
  for (std::uint64_t n : {1, 2, 4, 9}) {
    c.expect(e_number(n, 0).exact && e_number(n, 0).exact->is_zero(),
             "E(n,0) = 0");
    c.expect(q_number(n, 0).exact && q_number(n, 0).exact->is_zero(),
             "Q(n,0) = 0");
    c.expect(q_number(n, 1).exact && *q_number(n, 1).exact == BigNat(1),
             "Q(n,1) = 1");
  }
  c.expect(e_number(1, 1).exact && *e_number(1, 1).exact == BigNat(1),
           "E(1,1) = 1");
  Bound b = fmp_bound(1);
  c.expect(!b.is_exact(), "fmp_bound(1) must be a symbolic tower");
  c.expect(b.tower_levels.size() == 4, "four exact inner levels expected");
  if (b.tower_levels.size() == 4) {
    c.expect(b.tower_levels[0] == BigNat(0), "level 0");
    c.expect(b.tower_levels[1] == BigNat(4), "level 1");
    c.expect(b.tower_levels[2] == BigNat(68), "level 2");
    c.expect(b.tower_levels[3] == BigNat(68) + BigNat(4) * BigNat::pow2(68),
             "level 3");
  }
  c.finish();
}

void criterion10() {
  Criterion c{10, ""};
  Model m = builtin_model("fig-iltl");
  std::vector<Fptr> sigma = closure(parse("(X p -> p) | (p -> X p)"));
  StratifyResult r = stratify_bounded(m, m.index("w"), sigma, 50, 2);
  c.expect(r.state.complete, "the fig-iltl run must reach the fixpoint");
  std::vector<std::string> tag(r.truncation.size());
  for (int v = 0; v < r.truncation.size(); ++v) tag[v] = m.name(r.h[v]);
  std::function<std::string(int, int)> canon = [&](int k, int w) {
    std::vector<std::string> kids;
    for (int v : r.truncation.strata[k])
      if (r.truncation.parent[v] == w) kids.push_back(canon(k, v));
    std::sort(kids.begin(), kids.end());
    std::string out = tag[w] + "(";
    for (const auto& s : kids) out += s;
    return out + ")";
  };
  c.expect(canon(0, r.truncation.root_of(0)) == "w(x()y())",
           "stratum 0 must be the 3-node tree with h = w,x,y");
  c.expect(canon(1, r.truncation.root_of(1)) == "w(w(x()y())y())",
           "stratum 1 must be the 5-node tree with h = w,y,w,x,y");

  Rng rng(161803);
  for (int run = 0; run < 50 && c.ok; ++run) {
    SearchSpec spec;
    spec.max_worlds = 4;
    spec.atoms = {"p"};
    spec.seed = 9000 + run;
    Model rm = random_model(spec);
    Fptr phi = corpus30()[rng.below(corpus30().size())];
    StratifyResult rr = stratify_bounded(
        rm, static_cast<int>(rng.below(rm.size())), closure(phi),
        static_cast<int>(rng.below(21)), 1 + static_cast<int>(rng.below(6)));
    const StratifiedModel& t = rr.truncation;
    for (std::size_t col = 0; col < rr.state.columns.size(); ++col)
      c.expect(rr.state.columns[col].spawn < static_cast<int>(col),
               "column spawned after its own index");
    for (int v = 0; v < t.size(); ++v) {
      c.expect(t.val[v] == rm.val(rr.h[v]), "V* must be V after h");
      if (t.step[v] >= 0)
        c.expect(rr.h[t.step[v]] == rm.succ(rr.h[v]), "h . S* = S . h");
      if (t.parent[v] >= 0)
        c.expect(t.stratum_of[t.parent[v]] == t.stratum_of[v],
                 "order edges must stay inside a stratum");
    }
    for (int k = 0; k < t.strata_count(); ++k)
      for (int aa : t.strata[k])
        for (int bb : t.strata[k]) {
          if (!t.tree_leq(aa, bb)) continue;
          c.expect(rm.leq(rr.h[aa], rr.h[bb]), "h must be order-monotone");
          if (t.step[aa] >= 0 && t.step[bb] >= 0)
            c.expect(t.tree_leq(t.step[aa], t.step[bb]),
                     "S* must be forward confluent");
        }
  }
  c.finish();
}

void criterion11() {
  Criterion c{11, ""};
  Rng rng(27182818);
  int collapses = 0;
  for (int run = 0; run < 50; ++run) {
    StratifiedModel s = random_lasso(rng, {"p"});
    std::vector<Fptr> sigma =
        closure(corpus30()[rng.below(corpus30().size())]);
    auto before = sigma_labels(s, sigma);

    int k = static_cast<int>(rng.below(s.strata_count()));
    SuResult n = su_normalize(s, k, sigma);
    auto after = sigma_labels(n.model, sigma);
    for (int v = 0; v < n.model.size(); ++v)
      if (after[v] != before[n.pi[v]])
        c.expect(false, "su_normalize changed a surviving label");

    StratifiedModel u = unroll(s, 1);
    int a = *s.loop_a, b = s.strata_count();
    auto ulabels = sigma_labels(u, sigma);
    bool match = true;
    for (std::size_t i = 0; i < s.strata[a].size(); ++i)
      if (ulabels[u.strata[a][i]] != ulabels[u.strata[b][i]]) match = false;
    if (match) {
      std::vector<int> sig;
      for (std::size_t i = 0; i < u.strata[a].size(); ++i)
        sig.push_back(u.strata[b][i]);
      SuResult col = su_collapse(u, a, b, sig, sigma);
      auto clab = sigma_labels(col.model, sigma);
      for (int v = 0; v < col.model.size(); ++v)
        if (clab[v] != ulabels[col.pi[v]])
          c.expect(false, "su_collapse changed a surviving label");
      ++collapses;
    }

    for (int j : {1, 2, 3}) {
      auto lab = sigma_labels(unroll(s, j), sigma);
      for (int w : s.strata[0])
        if (lab[w] != before[w])
          c.expect(false, "unrolling changed a stratum-0 label");
    }
  }
  c.expect(collapses >= 25, "too few collapse instances exercised");
  c.finish();
}

void criterion12() {
  Criterion c{12, ""};
  // the full decision procedure at B(|phi|) is out of reach: already at
  // |phi| = 1 the bound is a tower far beyond materializable size
  Bound b = fmp_bound(1);
  c.expect(!b.is_exact(), "B(1) must exceed exact arithmetic");
  c.expect(b.digits10 && *b.digits10 > 1e18,
           "B(1) must have an astronomical digit count");
  // the bounded search is the working surrogate: its witnesses re-check
  SearchSpec spec;
  spec.max_worlds = 3;
  spec.atoms = {"p"};
  spec.mode = DecideMode::Satisfiability;
  for (const char* s : {"~ X p & ~ X ~ p", "p U q", "<> p & ~ p"}) {
    Verdict v = bounded_decide(parse(s), spec);
    if (v.outcome == Verdict::Outcome::WitnessFound)
      c.expect(v.witness->first.eval(v.witness->second, parse(s)),
               "witness failed the eval re-check");
  }
  std::printf(
      "    note: running the decision procedure at B(|phi|) is documented as "
      "infeasible; B(1) already has about %.3g decimal digits\n",
      b.digits10 ? *b.digits10 : -1.0);
  c.finish();
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  criterion12();
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  std::printf("acceptance: %d of 12 criteria passed (%lld ms total)\n",
              12 - failures, static_cast<long long>(ms));
  return failures == 0 ? 0 : 1;
}
