#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "itl/formula.hpp"

namespace itl {

/// Minimal eventually-periodic presentation of the S-orbit of a world.
struct Lasso {
  std::vector<int> prefix;
  std::vector<int> cycle;  // nonempty
  int span() const { return static_cast<int>(prefix.size() + cycle.size()); }
  /// S^k(w) for the orbit this lasso presents.
  int at(int k) const {
    if (k < static_cast<int>(prefix.size())) return prefix[k];
    return cycle[(k - prefix.size()) % cycle.size()];
  }
};

struct ClassViolation {
  std::string check;
  std::vector<std::string> witness;
};

struct ClassReport {
  bool is_poset = true;
  bool is_monotone = true;
  bool is_forward_confluent = true;
  bool is_backward_confluent = true;
  bool is_persistent = true;
  bool is_here_and_there = true;
  std::vector<ClassViolation> violations;
  /// The three invariants a Model must satisfy to be evaluated.
  bool model_ok() const {
    return is_poset && is_monotone && is_forward_confluent;
  }
};

/// Finite dynamic poset with a monotone valuation. Immutable once built;
/// the order is the reflexive-transitive closure of the given edges.
class Model {
 public:
  Model() = default;

  static Model make(std::vector<std::string> names,
                    const std::vector<std::pair<int, int>>& order_edges,
                    std::vector<int> succ,
                    std::vector<std::vector<std::string>> val);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int w) const { return names_[w]; }
  /// World id, or -1 when the name is unknown.
  int index(const std::string& n) const;

  bool leq(int a, int b) const;
  const std::vector<int>& up(int w) const { return up_[w]; }
  const std::vector<int>& down(int w) const { return down_[w]; }
  int succ(int w) const { return succ_[w]; }
  const std::vector<std::string>& val(int w) const { return val_[w]; }
  bool has_atom(int w, const std::string& a) const;
  const std::vector<std::pair<int, int>>& generator_edges() const {
    return gen_edges_;
  }
  /// Hasse edges of the order; closing them reproduces the order.
  std::vector<std::pair<int, int>> reduction_edges() const;

  const Lasso& orbit(int w) const { return orbits_[w]; }

  ClassReport validate() const;

  /// Worlds satisfying f, by the ten satisfaction clauses over lasso orbits.
  std::vector<bool> truth_set(const Fptr& f) const;
  /// Same, sharing subformula work across the batch.
  std::vector<std::vector<bool>> truth_sets(const std::vector<Fptr>& fs) const;
  bool eval(int w, const Fptr& f) const;

 private:
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
  std::vector<std::vector<int>> up_;
  std::vector<std::vector<int>> down_;
  std::vector<int> succ_;
  std::vector<std::vector<std::string>> val_;
  std::vector<std::pair<int, int>> gen_edges_;
  std::vector<Lasso> orbits_;
};

}  // namespace itl
