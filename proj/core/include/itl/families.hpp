#pragma once

#include <cstdint>
#include <string>

#include "itl/bisim.hpp"
#include "itl/formula.hpp"
#include "itl/model.hpp"

namespace itl {

/// fig-iltl, fig-imla, ht(n) (n >= 1), diam(n) (0 <= n <= 12).
/// ht/diam worlds are named "<i>_<j>".
Model builtin_model(const std::string& name, int n = -1);

/// Exponent of the lowest set bit of m (m >= 1).
int last_exponent(std::uint64_t m);

enum class BlockKind { Initial, Terminal, Regular };

struct Block {
  int m = 0, a = 0, b = 0;
  BlockKind kind = BlockKind::Initial;
  // carrier [(a-1)2^m + 1, a 2^m] x {b}
  std::int64_t lo = 0, hi = 0;
};

/// Classifies the m-block B_m(a,b) of diam(n) by the height characterization.
Block block_classify(int n, int m, int a, int b);

struct CanonicalFamily {
  std::string name;
  int n = 0;
  BisimFamily family;
};

/// ht: the least equivalence relation generated by the max-condition,
/// levels 0..n (flavor until). diam: congruence mod 2^m plus congruent
/// m-blocks, levels 0..n-1 (flavor release).
CanonicalFamily canonical_family(const std::string& name, int n);

/// (alpha & beta) -> gamma, the here-and-there definition of <> p.
Fptr diamond_def_formula();

}  // namespace itl
