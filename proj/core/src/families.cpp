#include "itl/families.hpp"

#include <algorithm>

namespace itl {

namespace {

Model fig_iltl() {
  // S(w)=w, S(x)=y, S(y)=w; p only at y
  return Model::make({"w", "x", "y"}, {{0, 1}, {0, 2}}, {0, 2, 0},
                     {{}, {}, {"p"}});
}

Model fig_imla() {
  // v <= u; S(w)=v, S(v)=v, S(u)=u; p at u
  return Model::make({"w", "v", "u"}, {{1, 2}}, {1, 1, 2}, {{}, {}, {"p"}});
}

std::string ij_name(int i, int j) {
  return std::to_string(i) + "_" + std::to_string(j);
}

Model ht_model(int n) {
  if (n < 1) throw InputError("ht needs n >= 1");
  const int cols = n + 2;
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> succ(2 * cols);
  std::vector<std::vector<std::string>> val(2 * cols);
  auto id = [&](int i, int j) { return (i - 1) * 2 + j; };
  for (int i = 1; i <= cols; ++i)
    for (int j = 0; j <= 1; ++j) names.push_back(ij_name(i, j));
  for (int i = 1; i <= cols; ++i) {
    edges.emplace_back(id(i, 0), id(i, 1));
    int nx = i % cols + 1;
    succ[id(i, 0)] = id(nx, 0);
    succ[id(i, 1)] = id(nx, 1);
    for (int j = 0; j <= 1; ++j)
      if (!(i == cols && j == 0)) val[id(i, j)] = {"p"};
  }
  return Model::make(std::move(names), edges, std::move(succ), std::move(val));
}

Model diam_model(int n) {
  if (n < 0) throw InputError("diam needs n >= 0");
  if (n > 12) throw CostGuardError("diam size 2^n (n+1) guarded at n <= 12");
  const std::int64_t cols = 1ll << n;
  const int rows = n + 1;
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> succ(cols * rows);
  std::vector<std::vector<std::string>> val(cols * rows);
  auto id = [&](std::int64_t i, int j) {
    return static_cast<int>((i - 1) * rows + j);
  };
  for (std::int64_t i = 1; i <= cols; ++i)
    for (int j = 0; j < rows; ++j) names.push_back(ij_name(i, j));
  for (std::int64_t i = 1; i <= cols; ++i) {
    for (int j = 0; j < rows; ++j) {
      if (j + 1 < rows) edges.emplace_back(id(i, j), id(i, j + 1));
      std::int64_t nx = i % cols + 1;
      succ[id(i, j)] = id(nx, j);
      if (j > n - last_exponent(static_cast<std::uint64_t>(i)))
        val[id(i, j)] = {"p"};
    }
  }
  return Model::make(std::move(names), edges, std::move(succ), std::move(val));
}

}  // namespace

Model builtin_model(const std::string& name, int n) {
  if (name == "fig-iltl") return fig_iltl();
  if (name == "fig-imla") return fig_imla();
  if (name == "ht") {
    if (n < 0) throw InputError("ht requires --n");
    return ht_model(n);
  }
  if (name == "diam") {
    if (n < 0) throw InputError("diam requires --n");
    return diam_model(n);
  }
  throw InputError("unknown builtin model: " + name);
}

int last_exponent(std::uint64_t m) {
  if (m == 0) throw InputError("last exponent of 0 is undefined");
  int e = 0;
  while (!(m & 1)) {
    m >>= 1;
    ++e;
  }
  return e;
}

Block block_classify(int n, int m, int a, int b) {
  if (m < 1 || m > n) throw InputError("block: need 1 <= m <= n");
  if (a < 1 || a > (1 << (n - m))) throw InputError("block: a out of range");
  if (b < 0 || b > n) throw InputError("block: b out of range");
  Block blk;
  blk.m = m;
  blk.a = a;
  blk.b = b;
  blk.lo = static_cast<std::int64_t>(a - 1) * (1ll << m) + 1;
  blk.hi = static_cast<std::int64_t>(a) * (1ll << m);
  int la = last_exponent(static_cast<std::uint64_t>(a));
  if (b <= n - m - la)
    blk.kind = BlockKind::Initial;
  else if (b <= n - m + 1)
    blk.kind = BlockKind::Terminal;
  else
    blk.kind = BlockKind::Regular;
  return blk;
}

namespace {

BisimFamily ht_family(const Model& m, int n) {
  BisimFamily fam;
  fam.flavor = Flavor::Until;
  const int cols = n + 2;
  auto defect = [&](int i, int j) { return j == 1 ? 0 : i; };
  for (int lvl = 0; lvl <= n; ++lvl) {
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> in_class;
    for (int i = 1; i <= cols; ++i)
      for (int j = 0; j <= 1; ++j)
        if (defect(i, j) <= n - lvl + 1)
          in_class.push_back(m.index(ij_name(i, j)));
    for (int a : in_class)
      for (int b : in_class) pairs.emplace_back(a, b);
    // the equivalence closure adds only the diagonal outside the class
    for (int w = 0; w < m.size(); ++w)
      if (std::find(in_class.begin(), in_class.end(), w) == in_class.end())
        pairs.emplace_back(w, w);
    std::sort(pairs.begin(), pairs.end());
    fam.levels.push_back(std::move(pairs));
  }
  return fam;
}

BisimFamily diam_family(const Model& md, int n) {
  BisimFamily fam;
  fam.flavor = Flavor::Release;
  const std::int64_t cols = 1ll << n;
  auto world = [&](std::int64_t i, int j) { return md.index(ij_name(i, j)); };
  auto congruent = [&](int m, std::int64_t a, int b, std::int64_t a2, int b2) {
    for (std::int64_t i = 1; i <= (1ll << m); ++i) {
      bool p1 = md.has_atom(world((a - 1) * (1ll << m) + i, b), "p");
      bool p2 = md.has_atom(world((a2 - 1) * (1ll << m) + i, b2), "p");
      if (p1 != p2) return false;
    }
    return true;
  };
  for (int lvl = 0; lvl < n; ++lvl) {
    std::vector<std::pair<int, int>> pairs;
    const std::int64_t bs = 1ll << lvl;
    for (std::int64_t x1 = 1; x1 <= cols; ++x1)
      for (int x2 = 0; x2 <= n; ++x2)
        for (std::int64_t y1 = 1; y1 <= cols; ++y1)
          for (int y2 = 0; y2 <= n; ++y2) {
            if (((x1 - y1) % bs + bs) % bs != 0) continue;
            std::int64_t ax = (x1 - 1) / bs + 1, ay = (y1 - 1) / bs + 1;
            if (!congruent(lvl, ax, x2, ay, y2)) continue;
            pairs.emplace_back(world(x1, x2), world(y1, y2));
          }
    std::sort(pairs.begin(), pairs.end());
    fam.levels.push_back(std::move(pairs));
  }
  return fam;
}

}  // namespace

CanonicalFamily canonical_family(const std::string& name, int n) {
  CanonicalFamily cf;
  cf.name = name;
  cf.n = n;
  if (name == "ht") {
    cf.family = ht_family(ht_model(n), n);
  } else if (name == "diam") {
    if (n < 1) throw InputError("diam family needs n >= 1");
    Model md = builtin_model("diam", n);
    cf.family = diam_family(md, n);
  } else {
    throw InputError("unknown family: " + name);
  }
  return cf;
}

Fptr diamond_def_formula() {
  Fptr p = atom("p");
  Fptr alpha = box(imp(p, box(disj(p, neg(p)))));
  Fptr beta = box(imp(next(box(disj(p, neg(p)))),
                      disj(disj(p, neg(p)), next(box(neg(p))))));
  Fptr gamma = conj(box(disj(p, neg(p))), neg(box(neg(p))));
  return imp(conj(alpha, beta), gamma);
}

}  // namespace itl
