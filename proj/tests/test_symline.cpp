#include <doctest.h>

#include "itl/symline.hpp"
#include "testutil.hpp"

using namespace itl;
using namespace itl::test;

namespace {

// Independent brute-force membership straight from the orbit clauses,
// using only interval membership of the subformula sets.
bool brute(const Fptr& ff, bool root, std::int64_t n);

bool brute_int(const Fptr& ff, std::int64_t n) { return brute(ff, false, n); }

constexpr int kScan = 400;

bool brute(const Fptr& ff, bool root, std::int64_t n) {
  switch (ff->conn) {
    case Conn::Bottom:
      return false;
    case Conn::Atom:
      if (ff->name != "p") return false;
      return !root && n >= 0;
    case Conn::And:
      return brute(ff->left, root, n) && brute(ff->right, root, n);
    case Conn::Or:
      return brute(ff->left, root, n) || brute(ff->right, root, n);
    case Conn::Neg:
    case Conn::Imp: {
      auto holds_at = [&](bool r2, std::int64_t v) {
        bool a = brute(ff->left, r2, v);
        bool b = ff->conn == Conn::Neg ? false : brute(ff->right, r2, v);
        return !a || b;
      };
      if (!root) return holds_at(false, n);  // integers have no strict successors
      // the root sits below every world: quantify over a wide window
      if (!holds_at(true, 0)) return false;
      for (std::int64_t v = -kScan; v <= kScan; ++v)
        if (!holds_at(false, v)) return false;
      return true;
    }
    case Conn::Next:
      return root ? brute(ff->left, true, 0) : brute(ff->left, false, n + 1);
    case Conn::Diam: {
      if (root) return brute(ff->left, true, 0);
      for (int k = 0; k <= kScan; ++k)
        if (brute_int(ff->left, n + k)) return true;
      return false;
    }
    case Conn::Box: {
      if (root) return brute(ff->left, true, 0);
      for (int k = 0; k <= kScan; ++k)
        if (!brute_int(ff->left, n + k)) return false;
      return true;  // stabilized well within the scan for small formulas
    }
    case Conn::Until: {
      if (root) return brute(ff->right, true, 0);
      for (int k = 0; k <= kScan; ++k) {
        if (brute_int(ff->right, n + k)) return true;
        if (!brute_int(ff->left, n + k)) return false;
      }
      return false;
    }
    case Conn::Release: {
      if (root) return brute(ff->right, true, 0);
      bool a_seen = false;
      for (int k = 0; k <= kScan; ++k) {
        if (!a_seen && !brute_int(ff->right, n + k)) return false;
        if (brute_int(ff->left, n + k)) a_seen = true;
        if (a_seen) return true;
      }
      return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("designated sets of the line model") {
  LineSet p = line_truth_set(f("p"));
  CHECK(!p.contains_root);
  CHECK(p.to_string() == "root=no intervals=[0,inf)");

  LineSet boxp = line_truth_set(f("[] p"));
  CHECK(!boxp.contains_root);
  CHECK(boxp.to_string() == "root=no intervals=[0,inf)");

  LineSet nn = line_truth_set(f("~ ~ <> [] p"));
  CHECK(nn.contains_root);
  CHECK(nn.covers_all_integers());

  CHECK(!line_eval(true, 0, f("<> ~ ~ [] p")));
  CHECK(!line_eval(true, 0, f("~ ~ <> [] p -> <> ~ ~ [] p")));
  CHECK(line_eval(false, 0, f("[] p")));
  CHECK(!line_eval(false, -1, f("[] p")));
  CHECK(line_eval(false, -5, f("<> [] p")));
}

TEST_CASE("unknown atoms are reported unless opted out") {
  CHECK_THROWS_AS(line_truth_set(f("q")), InputError);
  CHECK(!line_eval(false, 3, f("q"), true));
  CHECK(line_eval(false, 3, f("~ q"), true));
}

TEST_CASE("interval algebra stays in normal form and respects the root") {
  Rng rng(77);
  int checked = 0;
  for (int i = 0; i < 4000; ++i) {
    Fptr ff = random_formula(rng, {"p"}, 4);
    if (length(ff) > 6) continue;
    ++checked;
    LineSet s = line_truth_set(ff);
    CHECK(s.normal_form_ok());
    // r is below every world, so membership at r forces all of Z
    if (s.contains_root) CHECK(s.covers_all_integers());
  }
  CHECK(checked > 1000);
}

TEST_CASE("algebra agrees with the clause-by-clause brute force") {
  Rng rng(123);
  for (int i = 0; i < 600; ++i) {
    Fptr ff = random_formula(rng, {"p"}, 4);
    if (length(ff) > 6) continue;
    LineSet s = line_truth_set(ff);
    CHECK(s.contains_root == brute(ff, true, 0));
    for (std::int64_t n : {-7, -3, -1, 0, 1, 2, 5, 19})
      CHECK(s.contains_int(n) == brute(ff, false, n));
  }
}

TEST_CASE("agreement with finite truncations on the X fragment") {
  // truncation: worlds r and [-k, k]; S caps at k; orbits that stay
  // in-window agree with the line
  const int k = 8;
  std::vector<std::string> names{"r"};
  for (int v = -k; v <= k; ++v) names.push_back("n" + std::to_string(v));
  auto idx = [&](int v) { return 1 + (v + k); };
  std::vector<std::pair<int, int>> edges;
  for (int v = -k; v <= k; ++v) edges.emplace_back(0, idx(v));
  std::vector<int> succ(names.size());
  succ[0] = 0;
  for (int v = -k; v <= k; ++v) succ[idx(v)] = idx(v < k ? v + 1 : k);
  std::vector<std::vector<std::string>> val(names.size());
  for (int v = 0; v <= k; ++v) val[idx(v)] = {"p"};
  Model trunc = Model::make(names, edges, succ, val);
  REQUIRE(trunc.validate().model_ok());

  Rng rng(9);
  for (int i = 0; i < 400; ++i) {
    Fptr ff = random_formula(rng, {"p"}, 3);
    if (!in_fragment(ff, Fragment::X)) continue;
    int d = length(ff);  // X-nesting is at most the length
    auto t = trunc.truth_set(ff);
    LineSet s = line_truth_set(ff);
    for (int v = -k; v + d <= k; ++v) CHECK(t[idx(v)] == s.contains_int(v));
  }
}
