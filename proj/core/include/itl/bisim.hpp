#pragma once

#include <string>
#include <vector>

#include "itl/model.hpp"

namespace itl {

enum class Flavor { Next, Until, Release };

Flavor flavor_from_name(const std::string& name);
const char* flavor_name(Flavor f);

/// Decreasing chain Z_n <= ... <= Z_0 of relations between two models.
struct BisimFamily {
  Flavor flavor = Flavor::Next;
  std::vector<std::vector<std::pair<int, int>>> levels;  // Z_0 first
  int top_level() const { return static_cast<int>(levels.size()) - 1; }
  bool holds(int level, int w1, int w2) const;
};

struct FamilyReport {
  bool ok = true;
  std::vector<std::string> violations;  // clause, level, pair
};

/// Verifies every clause of the flavor's definition; the unbounded temporal
/// quantifiers are evaluated over prefix + 2*cycle of the relevant orbit,
/// scaled by horizon_mult (for robustness checks).
FamilyReport check_family(const Model& m1, const Model& m2,
                          const BisimFamily& fam, int horizon_mult = 1);

/// Maximal family: Z_0 = atom-agreeing pairs, Z_{i+1} = pairs of Z_i passing
/// the level clauses against Z_i.
BisimFamily max_family(const Model& m1, const Model& m2, int n, Flavor flavor,
                       int horizon_mult = 1);

}  // namespace itl
