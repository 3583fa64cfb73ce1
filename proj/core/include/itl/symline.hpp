#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "itl/formula.hpp"

namespace itl {

/// A definable subset of the persistent model on Z plus a root r below
/// every point, with S(r) = r, S(n) = n+1 and p true exactly on [0, inf).
/// Interval ends are open (absent) for -inf / +inf.
struct LineSet {
  struct Iv {
    std::optional<std::int64_t> lo, hi;  // nullopt = unbounded
  };
  bool contains_root = false;
  std::vector<Iv> intervals;  // sorted, disjoint, nonempty gaps

  static LineSet none();
  static LineSet all_integers(bool with_root);

  bool contains_int(std::int64_t n) const;
  bool empty_integers() const { return intervals.empty(); }
  bool covers_all_integers() const;
  /// Greatest integer, when the set is nonempty and bounded above.
  std::optional<std::int64_t> max_int() const;
  /// Lower end of the final segment [a, inf) contained in the set, if any.
  std::optional<std::int64_t> final_segment() const;

  std::string to_string() const;
  bool normal_form_ok() const;
};

/// Exact truth set on the line model; formulas over the single atom p.
/// Other atoms are an error unless free_atoms_false.
LineSet line_truth_set(const Fptr& f, bool free_atoms_false = false);

/// World is the root when root==true, else the integer n.
bool line_eval(bool root, std::int64_t n, const Fptr& f,
               bool free_atoms_false = false);

}  // namespace itl
