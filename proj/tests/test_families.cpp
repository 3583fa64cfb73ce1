#include <doctest.h>

#include "itl/families.hpp"
#include "itl/oracle.hpp"
#include "testutil.hpp"

using namespace itl;
using namespace itl::test;

TEST_CASE("builtin models match their definitions") {
  Model im = builtin_model("fig-imla");
  CHECK(im.size() == 3);
  CHECK(im.leq(im.index("v"), im.index("u")));
  CHECK(im.succ(im.index("w")) == im.index("v"));
  CHECK(im.succ(im.index("v")) == im.index("v"));
  CHECK(im.succ(im.index("u")) == im.index("u"));
  CHECK(im.val(im.index("u")) == std::vector<std::string>{"p"});

  Model h1 = builtin_model("ht", 1);
  CHECK(h1.size() == 6);
  for (int w = 0; w < h1.size(); ++w) {
    bool is30 = h1.name(w) == "3_0";
    CHECK(h1.has_atom(w, "p") == !is30);
  }

  Model d3 = builtin_model("diam", 3);
  CHECK(d3.size() == 32);
  std::vector<std::string> black;
  for (int w = 0; w < d3.size(); ++w)
    if (d3.has_atom(w, "p")) black.push_back(d3.name(w));
  std::sort(black.begin(), black.end());
  CHECK(black == std::vector<std::string>{"2_3", "4_2", "4_3", "6_3", "8_1",
                                          "8_2", "8_3"});
  CHECK(d3.validate().is_persistent);
  CHECK(!d3.validate().is_here_and_there);
  CHECK(builtin_model("ht", 2).validate().is_here_and_there);

  CHECK_THROWS_AS(builtin_model("ht"), InputError);
  CHECK_THROWS_AS(builtin_model("diam", 13), CostGuardError);
  CHECK_THROWS_AS(builtin_model("nope"), InputError);
}

TEST_CASE("last exponent") {
  CHECK(last_exponent(6) == 1);
  CHECK(last_exponent(8) == 3);
  CHECK(last_exponent(20) == 2);
  CHECK(last_exponent(1) == 0);
  CHECK_THROWS_AS(last_exponent(0), InputError);
}

TEST_CASE("last exponent laws") {
  for (std::uint64_t a = 1; a <= 1024; ++a)
    for (std::uint64_t b = 1; b <= 1024; b += (b < 64 ? 1 : 37)) {
      CHECK(last_exponent(a * b) == last_exponent(a) + last_exponent(b));
      if (last_exponent(a) < last_exponent(b))
        CHECK(last_exponent(a + b) == last_exponent(a));
      if (last_exponent(a) == last_exponent(b))
        CHECK(last_exponent(a + b) >= last_exponent(a) + 1);
    }
  for (int m = 1; m <= 8; ++m)
    for (std::uint64_t a = 0; a <= 8; ++a)
      for (std::uint64_t k = 1; k < (1ull << m); ++k)
        CHECK(last_exponent(a * (1ull << m) + k) == last_exponent(k));
}

TEST_CASE("block classification by height") {
  CHECK(block_classify(3, 2, 1, 0).kind == BlockKind::Initial);
  CHECK(block_classify(3, 2, 1, 2).kind == BlockKind::Terminal);
  CHECK(block_classify(3, 2, 1, 3).kind == BlockKind::Regular);
  CHECK_THROWS_AS(block_classify(3, 4, 1, 0), InputError);
  CHECK_THROWS_AS(block_classify(3, 2, 3, 0), InputError);

  // cross-check against a direct valuation scan of diam(n)
  for (int n : {3, 4}) {
    Model d = builtin_model("diam", n);
    for (int m = 1; m <= n; ++m)
      for (int a = 1; a <= (1 << (n - m)); ++a)
        for (int b = 0; b <= n; ++b) {
          Block blk = block_classify(n, m, a, b);
          int count = 0;
          bool last_black = false;
          for (std::int64_t i = blk.lo; i <= blk.hi; ++i) {
            bool black = d.has_atom(
                d.index(std::to_string(i) + "_" + std::to_string(b)), "p");
            if (black) ++count;
            if (i == blk.hi) last_black = black;
          }
          BlockKind expect = count == 0 ? BlockKind::Initial
                             : (count == 1 && last_black) ? BlockKind::Terminal
                                                          : BlockKind::Regular;
          CHECK(blk.kind == expect);
        }
  }
}

TEST_CASE("terminal blocks sit above initial points") {
  for (int n = 1; n <= 4; ++n) {
    Model d = builtin_model("diam", n);
    for (int m = 1; m <= n; ++m)
      for (int a = 1; a <= (1 << (n - m)); ++a)
        for (int b = 0; b <= n; ++b) {
          if (block_classify(n, m, a, b).kind != BlockKind::Initial) continue;
          // some m-terminal point weakly above each point of the block
          Block blk = block_classify(n, m, a, b);
          for (std::int64_t i = blk.lo; i <= blk.hi; ++i) {
            bool found = false;
            for (int b2 = b; b2 <= n && !found; ++b2)
              found = block_classify(n, m, a, b2).kind == BlockKind::Terminal;
            CHECK(found);
          }
        }
  }
}

TEST_CASE("regular blocks are congruent exactly when heights agree") {
  const int n = 4;
  Model d = builtin_model("diam", n);
  auto congruent = [&](int m, int a, int b, int a2, int b2) {
    for (int i = 1; i <= (1 << m); ++i) {
      bool p1 = d.has_atom(
          d.index(std::to_string((a - 1) * (1 << m) + i) + "_" +
                  std::to_string(b)),
          "p");
      bool p2 = d.has_atom(
          d.index(std::to_string((a2 - 1) * (1 << m) + i) + "_" +
                  std::to_string(b2)),
          "p");
      if (p1 != p2) return false;
    }
    return true;
  };
  for (int m = 1; m <= 3; ++m)
    for (int a = 1; a <= (1 << (n - m)); ++a)
      for (int b = 0; b <= n; ++b)
        for (int a2 = 1; a2 <= (1 << (n - m)); ++a2)
          for (int b2 = 0; b2 <= n; ++b2) {
            if (block_classify(n, m, a, b).kind != BlockKind::Regular) continue;
            if (block_classify(n, m, a2, b2).kind != BlockKind::Regular)
              continue;
            CHECK(congruent(m, a, b, a2, b2) == (b == b2));
          }
}

TEST_CASE("block halves and successors preserve congruence") {
  const int n = 4;
  Model d = builtin_model("diam", n);
  auto congruent = [&](int m, int a, int b, int a2, int b2) {
    for (int i = 1; i <= (1 << m); ++i) {
      bool p1 = d.has_atom(
          d.index(std::to_string((a - 1) * (1 << m) + i) + "_" +
                  std::to_string(b)),
          "p");
      bool p2 = d.has_atom(
          d.index(std::to_string((a2 - 1) * (1 << m) + i) + "_" +
                  std::to_string(b2)),
          "p");
      if (p1 != p2) return false;
    }
    return true;
  };
  for (int m = 2; m <= 3; ++m)
    for (int a = 1; a <= (1 << (n - m)); ++a)
      for (int b = 0; b <= n; ++b)
        for (int a2 = 1; a2 <= (1 << (n - m)); ++a2)
          for (int b2 = 0; b2 <= n; ++b2) {
            if (!congruent(m, a, b, a2, b2)) continue;
            // first halves, second halves, successors of second halves
            CHECK(congruent(m - 1, 2 * a - 1, b, 2 * a2 - 1, b2));
            CHECK(congruent(m - 1, 2 * a, b, 2 * a2, b2));
            int sa = 2 * a % (1 << (n - m + 1)) + 1;
            int sa2 = 2 * a2 % (1 << (n - m + 1)) + 1;
            CHECK(congruent(m - 1, sa, b, sa2, b2));
          }
}

TEST_CASE("canonical family membership") {
  BisimFamily ht3 = canonical_family("ht", 3).family;
  Model h = builtin_model("ht", 3);
  CHECK(ht3.holds(3, h.index("1_0"), h.index("1_1")));
  for (std::size_t i = 1; i < ht3.levels.size(); ++i)
    for (auto [a, b] : ht3.levels[i])
      CHECK(ht3.holds(static_cast<int>(i) - 1, a, b));  // decreasing chain

  BisimFamily d3 = canonical_family("diam", 3).family;
  Model d = builtin_model("diam", 3);
  CHECK(d3.holds(2, d.index("1_0"), d.index("1_1")));
  CHECK(d3.holds(2, d.index("1_3"), d.index("5_3")));
  for (std::size_t i = 1; i < d3.levels.size(); ++i)
    for (auto [a, b] : d3.levels[i])
      CHECK(d3.holds(static_cast<int>(i) - 1, a, b));
}

TEST_CASE("box and diamond disagree at the designated pairs") {
  for (int n = 1; n <= 5; ++n) {
    Model h = builtin_model("ht", n);
    CHECK(!h.eval(h.index("1_0"), f("[] p")));
    CHECK(h.eval(h.index("1_1"), f("[] p")));
    Model d = builtin_model("diam", n);
    CHECK(!d.eval(d.index("1_0"), f("<> p")));
    CHECK(d.eval(d.index("1_1"), f("<> p")));
  }
}

TEST_CASE("the here-and-there diamond definition") {
  Fptr def = diamond_def_formula();
  std::string r = render(def);
  CHECK(r.find("[] (p -> [] (p | ~ p))") != std::string::npos);
  CHECK(r.find("X [] ~ p") != std::string::npos);
  CHECK(r.find("~ [] ~ p") != std::string::npos);

  for (int n = 1; n <= 3; ++n) {
    Model h = builtin_model("ht", n);
    CHECK(h.truth_set(f("<> p")) == h.truth_set(def));
  }
  // one direction needs no here-and-there structure at all
  SearchSpec spec;
  spec.max_worlds = 3;
  spec.atoms = {"p"};
  enumerate_models(spec, [&](const Model& m, std::uint64_t ord) {
    if (ord % 5) return true;
    auto a = m.truth_set(f("<> p"));
    auto b = m.truth_set(def);
    for (int w = 0; w < m.size(); ++w)
      if (a[w]) CHECK(b[w]);
    return true;
  });
}
