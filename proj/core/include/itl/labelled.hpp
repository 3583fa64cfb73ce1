#pragma once

#include <optional>
#include <string>
#include <vector>

#include "itl/formula.hpp"
#include "itl/model.hpp"

namespace itl {

/// Finite labelled poset. Labels are finite token sets; the order is the
/// reflexive-transitive closure of the given acyclic edges.
struct LabelledPoset {
  std::vector<std::string> node_names;
  std::vector<std::vector<std::string>> labels;  // sorted token sets
  std::vector<std::pair<int, int>> edges;        // generators
  std::vector<std::vector<int>> up;              // closed, sorted
  std::vector<std::vector<int>> down;

  static LabelledPoset make(std::vector<std::string> names,
                            std::vector<std::vector<std::string>> labels,
                            std::vector<std::pair<int, int>> edges);

  int size() const { return static_cast<int>(labels.size()); }
  bool leq(int a, int b) const;
  /// Canonical label string; equal keys mean equal label sets.
  const std::string& label_key(int w) const { return keys_[w]; }
  bool has_token(int w, const std::string& t) const;
  std::vector<int> minimal_nodes() const;
  bool is_tree() const;
  /// Root when the poset is a tree.
  int tree_root() const;
  std::vector<int> tree_children(int w) const;

 private:
  std::vector<std::string> keys_;
};

/// Labelled poset that is a tree, with its root.
struct LabelledTree {
  LabelledPoset p;
  int root = -1;
  static LabelledTree make(LabelledPoset poset);
};

/// Pointed variant.
struct PointedLabelledPoset {
  LabelledPoset p;
  int point = -1;
};

/// Maximal length (in nodes) of increasing chains from w; proper chains
/// (labels changing at each step) unless depth_mode. Without w: max over all.
int level(const LabelledPoset& a, std::optional<int> w = {},
          bool depth_mode = false);

/// M^Sigma: nodes are worlds, label(w) = {psi in Sigma | M,w |= psi},
/// rendered canonically as tokens.
LabelledPoset to_labelled(const Model& m, const std::vector<Fptr>& sigma);

struct QuasiReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Monotone labels plus the implication biconditional for every phi->psi in
/// Sigma.
QuasiReport is_quasimodel(const LabelledPoset& a, const std::vector<Fptr>& sigma);

enum class SimKind { Simulation, Immersion };

struct SimReport {
  bool ok = true;
  std::vector<std::string> violations;
};

SimReport check_simulation(const std::vector<std::pair<int, int>>& rel,
                           const LabelledPoset& a, const LabelledPoset& b,
                           SimKind kind);

/// rho: A -> B and iota: B -> A as node-indexed vectors; verifies both are
/// immersions, rho surjective and rho(iota(x)) == x.
SimReport check_condensation(const std::vector<int>& rho,
                             const std::vector<int>& iota,
                             const LabelledPoset& a, const LabelledPoset& b);

/// Refines a simulation into a partial immersion on the subtree of w with
/// sigma'(w) = wp, choosing the least qualifying node at each step.
std::vector<std::pair<int, int>> immersion_from_simulation(
    const std::vector<std::pair<int, int>>& sigma, const LabelledTree& a,
    const LabelledPoset& b, int w, int wp);

/// Existence of a label-preserving order-preserving function A -> B.
/// pointed: the designated nodes must map to each other.
bool has_immersion(const LabelledPoset& a, const LabelledPoset& b,
                   std::optional<std::pair<int, int>> pointed = {});

bool are_bimersive(const LabelledPoset& a, const LabelledPoset& b);
bool are_bimersive_pointed(const LabelledPoset& a, int pa,
                           const LabelledPoset& b, int pb);

}  // namespace itl
