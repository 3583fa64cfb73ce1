#include <doctest.h>

#include <functional>
#include <set>

#include "itl/oracle.hpp"
#include "testutil.hpp"

using namespace itl;
using namespace itl::test;

TEST_CASE("parsing the concrete grammar") {
  Fptr a = parse("(X p -> p) | (p -> X p)");
  REQUIRE(a->conn == Conn::Or);
  CHECK(a->left->conn == Conn::Imp);
  CHECK(a->left->left->conn == Conn::Next);
  CHECK(a->right->left->conn == Conn::Atom);

  Fptr b = parse("p U q");
  REQUIRE(b->conn == Conn::Until);
  CHECK(b->left->name == "p");
  CHECK(b->right->name == "q");

  Fptr c = parse("~ X p & ~ X ~ p");
  REQUIRE(c->conn == Conn::And);
  CHECK(c->left->conn == Conn::Neg);
  CHECK(c->left->left->conn == Conn::Next);
  CHECK(c->right->left->left->conn == Conn::Neg);

  CHECK(equal(parse("T"), imp(bottom(), bottom())));
  CHECK(equal(parse("p U q U r"), until(atom("p"), until(atom("q"), atom("r")))));
  CHECK(equal(parse("a -> b -> c"), imp(atom("a"), imp(atom("b"), atom("c")))));
  CHECK(equal(parse("p & q | r"), disj(conj(atom("p"), atom("q")), atom("r"))));
}

TEST_CASE("parse errors carry offsets and expectations") {
  CHECK_THROWS_AS(parse("p U q R r"), ParseError);
  CHECK_THROWS_AS(parse("p @ q"), ParseError);
  CHECK_THROWS_AS(parse("(p"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
  try {
    parse("p &");
  } catch (const ParseError& e) {
    CHECK(e.offset == 3);
    CHECK(!e.expected.empty());
  }
  CHECK_THROWS_AS(atom("Bad"), InputError);
  CHECK_THROWS_AS(atom(""), InputError);
  CHECK_THROWS_AS(atom("p q"), InputError);
  CHECK(atom("p_1")->name == "p_1");
}

TEST_CASE("length follows the connective count") {
  CHECK(length(parse("p")) == 0);
  CHECK(length(parse("F")) == 0);
  CHECK(length(parse("p U q")) == 1);
  CHECK(length(parse("~ X p & ~ X ~ p")) == 6);
  CHECK(length(parse("[] p")) == 1);
  CHECK(length(parse("p -> q")) == 1);
}

TEST_CASE("closure is the least subformula-closed set") {
  auto names = [](const std::vector<Fptr>& fs) {
    std::vector<std::string> out;
    for (const auto& f : fs) out.push_back(render(f));
    return out;
  };
  CHECK(names(closure(parse("p U q"))) ==
        std::vector<std::string>{"p", "q", "p U q"});
  CHECK(names(closure(parse("<> p"))) == std::vector<std::string>{"p", "<> p"});
  // ~ is primitive: no bottom sneaks in
  CHECK(names(closure(parse("~ X p"))) ==
        std::vector<std::string>{"p", "X p", "~ X p"});
  CHECK(closed_under_subformulas(closure(parse("(p U q) -> <> p"))));
  CHECK(!closed_under_subformulas({parse("p U q"), parse("p")}));
}

TEST_CASE("round trip: parse after render is the identity") {
  Rng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    Fptr f = random_formula(rng, {"p", "q", "r"}, 5);
    CHECK(equal(parse(render(f)), f));
  }
}

TEST_CASE("translations land in their fragments") {
  CHECK(render(translate(parse("[] p"), Fragment::DiamR)) == "F R p");
  CHECK(render(translate(parse("<> p"), Fragment::BoxU)) == "(F -> F) U p");
  CHECK(render(translate(parse("p U q"), Fragment::DiamR)) ==
        "q R (p | q) & <> q");
  Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    Fptr f = random_formula(rng, {"p", "q"}, 4);
    CHECK(in_fragment(translate(f, Fragment::BoxU), Fragment::BoxU));
    CHECK(in_fragment(translate(f, Fragment::DiamR), Fragment::DiamR));
  }
}

TEST_CASE("translations preserve truth sets") {
  // exhaustively on small models, then a random sample of larger ones
  std::vector<Fptr> batch;
  for (const auto& f : corpus30()) {
    batch.push_back(f);
    batch.push_back(translate(f, Fragment::BoxU));
    batch.push_back(translate(f, Fragment::DiamR));
  }
  auto run = [&](const Model& m) {
    auto ts = m.truth_sets(batch);
    for (std::size_t i = 0; i < batch.size(); i += 3) {
      CHECK(ts[i] == ts[i + 1]);
      CHECK(ts[i] == ts[i + 2]);
    }
  };
  SearchSpec spec;
  spec.max_worlds = 3;
  spec.atoms = {"p", "q"};
  enumerate_models(spec, [&](const Model& m, std::uint64_t) {
    run(m);
    return true;
  });
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    SearchSpec rs;
    rs.max_worlds = 5;
    rs.atoms = {"p", "q"};
    rs.seed = seed;
    run(random_model(rs));
  }
}

TEST_CASE("next normal form pushes X onto atoms") {
  CHECK(render(next_normal_form(parse("X (p -> q)"))) == "X p -> X q");
  CHECK(render(next_normal_form(parse("X (p & q)"))) == "X p & X q");
  CHECK(render(next_normal_form(parse("X [] p"))) == "[] X p");
  CHECK(render(next_normal_form(parse("X F"))) == "F");
  CHECK(render(next_normal_form(parse("X ~ p"))) == "~ X p");
  // every X in the result applies to an X-chain over an atom
  std::function<bool(const Fptr&)> chain_ok = [&](const Fptr& f) -> bool {
    if (f->conn == Conn::Next) {
      Fptr cur = f;
      while (cur->conn == Conn::Next) cur = cur->left;
      return cur->conn == Conn::Atom || cur->conn == Conn::Bottom;
    }
    if (f->left && !chain_ok(f->left)) return false;
    if (f->right && !chain_ok(f->right)) return false;
    return true;
  };
  Rng rng(11);
  for (int i = 0; i < 200; ++i)
    CHECK(chain_ok(next_normal_form(random_formula(rng, {"p", "q"}, 4))));
}

TEST_CASE("next normal form is sound exactly on persistent models") {
  std::vector<Fptr> batch;
  for (const auto& f : corpus30()) {
    batch.push_back(f);
    batch.push_back(next_normal_form(f));
  }
  SearchSpec spec;
  spec.max_worlds = 3;
  spec.atoms = {"p", "q"};
  spec.cls = ClassFilter::Persistent;
  enumerate_models(spec, [&](const Model& m, std::uint64_t) {
    auto ts = m.truth_sets(batch);
    for (std::size_t i = 0; i < batch.size(); i += 2) CHECK(ts[i] == ts[i + 1]);
    return true;
  });
  // over all dynamic posets the rewrite is not sound: X (p -> q) is the witness
  bool found = false;
  SearchSpec all;
  all.max_worlds = 3;
  all.atoms = {"p", "q"};
  Fptr w1 = parse("X (p -> q)");
  Fptr w2 = next_normal_form(w1);
  enumerate_models(all, [&](const Model& m, std::uint64_t) {
    if (m.truth_set(w1) != m.truth_set(w2)) {
      found = true;
      return false;
    }
    return true;
  });
  CHECK(found);
}

TEST_CASE("formula enumeration: counts, order, uniqueness") {
  // independent count oracle: c[0] = 1 + atoms,
  // c[l] = unary * c[l-1] + binary * sum c[i] c[l-1-i]
  auto count = [](int atoms, int unary, int binary, int maxlen) {
    std::vector<std::uint64_t> c{static_cast<std::uint64_t>(1 + atoms)};
    for (int l = 1; l <= maxlen; ++l) {
      std::uint64_t t = unary * c[l - 1];
      for (int i = 0; i < l; ++i) t += binary * c[i] * c[l - 1 - i];
      c.push_back(t);
    }
    std::uint64_t total = 0;
    for (auto v : c) total += v;
    return total;
  };
  CHECK(count(1, 2, 4, 1) == 22);  // L_R: ~ X and & | -> R
  CHECK(count(1, 2, 3, 1) == 18);  // L_X: ~ X and & | ->

  auto lr0 = enumerate_formulas({"p"}, Fragment::R, 0);
  CHECK(lr0.size() == 2);
  auto lr1 = enumerate_formulas({"p"}, Fragment::R, 1);
  CHECK(lr1.size() == 22);
  auto lx1 = enumerate_formulas({"p"}, Fragment::X, 1);
  CHECK(lx1.size() == 18);
  CHECK(count_formulas(1, Fragment::R, 1) == 22);
  CHECK(count_formulas(1, Fragment::X, 1) == 18);

  auto lu2 = enumerate_formulas({"p"}, Fragment::U, 2);
  CHECK(lu2.size() == count_formulas(1, Fragment::U, 2));
  std::set<std::string> seen;
  for (std::size_t i = 0; i < lu2.size(); ++i) {
    CHECK(in_fragment(lu2[i], Fragment::U));
    CHECK(length(lu2[i]) <= 2);
    CHECK(seen.insert(render(lu2[i])).second);  // unique
    if (i) CHECK(compare(lu2[i - 1], lu2[i]) < 0);  // deterministic order
  }
  CHECK_THROWS_AS(enumerate_formulas({"p", "q"}, Fragment::Full, 6, 1000),
                  CostGuardError);
}
