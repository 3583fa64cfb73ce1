#include <doctest.h>

#include <sstream>

#include "itl/families.hpp"
#include "itl/io.hpp"
#include "itl/oracle.hpp"
#include "testutil.hpp"

using namespace itl;
using namespace itl::test;

namespace {
template <typename T, typename W>
std::string dump_with(const T& x, W writer) {
  std::ostringstream os;
  writer(os, x);
  return os.str();
}
}  // namespace

TEST_CASE("model text round trips") {
  for (const char* name : {"fig-iltl", "fig-imla"}) {
    Model m = builtin_model(name);
    std::string t1 = dump_with(m, [](auto& o, auto& x) { write_model_text(o, x); });
    std::istringstream in(t1);
    Model back = parse_model_text(in);
    std::string t2 =
        dump_with(back, [](auto& o, auto& x) { write_model_text(o, x); });
    CHECK(t1 == t2);
    CHECK(back.size() == m.size());
    for (int w = 0; w < m.size(); ++w) {
      CHECK(back.up(w) == m.up(w));
      CHECK(back.succ(w) == m.succ(w));
      CHECK(back.val(w) == m.val(w));
    }
  }
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    SearchSpec spec;
    spec.max_worlds = 7;
    spec.atoms = {"p", "q"};
    spec.seed = seed;
    Model m = random_model(spec);
    std::string t1 = dump_with(m, [](auto& o, auto& x) { write_model_text(o, x); });
    std::istringstream in(t1);
    Model back = parse_model_text(in);
    for (int w = 0; w < m.size(); ++w) CHECK(back.up(w) == m.up(w));
  }
}

TEST_CASE("model text errors") {
  auto bad = [](const std::string& text) {
    std::istringstream in(text);
    return parse_model_text(in);
  };
  CHECK_THROWS_AS(bad("world a\nsucc a b\n"), InputError);   // unknown world
  CHECK_THROWS_AS(bad("world a\n"), InputError);             // partial succ
  CHECK_THROWS_AS(bad("world a\nworld a\n"), InputError);    // duplicate
  CHECK_THROWS_AS(bad("world a\nsucc a a\nsucc a a\n"), InputError);
  CHECK_THROWS_AS(bad("frobnicate x\n"), InputError);
  CHECK_THROWS_AS(bad(""), InputError);
  // comments and blank lines are fine
  std::istringstream ok("# header\nworld a p q\n\nsucc a a # self\n");
  Model m = parse_model_text(ok);
  CHECK(m.val(0) == std::vector<std::string>{"p", "q"});
}

TEST_CASE("stratified text round trips") {
  Rng rng(31);
  for (int i = 0; i < 20; ++i) {
    StratifiedModel s = random_lasso(rng, {"p", "q"});
    std::string t1 =
        dump_with(s, [](auto& o, auto& x) { write_stratified_text(o, x); });
    std::istringstream in(t1);
    StratifiedModel back = parse_stratified_text(in);
    std::string t2 =
        dump_with(back, [](auto& o, auto& x) { write_stratified_text(o, x); });
    CHECK(t1 == t2);
    CHECK(back.strata_count() == s.strata_count());
    CHECK(back.loop_a == s.loop_a);
  }
}

TEST_CASE("family text round trips") {
  Model h = builtin_model("ht", 2);
  BisimFamily fam = canonical_family("ht", 2).family;
  std::ostringstream os;
  write_family_text(os, h, h, fam);
  std::istringstream in(os.str());
  BisimFamily back = parse_family_text(in, h, h);
  CHECK(back.flavor == fam.flavor);
  REQUIRE(back.levels.size() == fam.levels.size());
  for (std::size_t i = 0; i < fam.levels.size(); ++i)
    CHECK(back.levels[i] == fam.levels[i]);
}

TEST_CASE("tree text round trips") {
  Rng rng(13);
  for (int i = 0; i < 20; ++i) {
    LabelledTree t = random_tree(rng, 10, 3);
    std::optional<int> pt = static_cast<int>(rng.below(t.p.size()));
    std::ostringstream os;
    write_tree_text(os, t, pt);
    std::istringstream in(os.str());
    std::optional<int> back_pt;
    LabelledTree back = parse_tree_text(in, &back_pt);
    CHECK(back.p.size() == t.p.size());
    CHECK(back_pt == pt);
    for (int v = 0; v < t.p.size(); ++v)
      CHECK(back.p.label_key(v) == t.p.label_key(v));
  }
}
