#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "itl/bignat.hpp"
#include "itl/labelled.hpp"

namespace itl {

/// The inductively built labelled acyclic graph over an alphabet: layer 1 is
/// the alphabet, layer k+1 adds (label, subset-of-previous-nodes) pairs.
struct UniversalGraph {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> children;
  std::vector<int> layer;
  int size() const { return static_cast<int>(labels.size()); }
};

/// Throws CostGuardError when the E-bound on the size exceeds node_guard.
UniversalGraph universal_graph(const std::vector<std::string>& alphabet, int k,
                               std::uint64_t node_guard = 1u << 20);

/// Paths-from-start tree of an acyclic labelled graph.
LabelledTree unravel(const UniversalGraph& g, int start,
                     std::uint64_t node_guard = 1u << 20);
LabelledTree unravel(const LabelledPoset& g, int start,
                     std::uint64_t node_guard = 1u << 20);

struct Condensation {
  std::vector<int> rho;   // input node -> output node
  std::vector<int> iota;  // output node -> input node
};

struct CondenseResult {
  LabelledTree tree;
  Condensation maps;
  /// Image of the designated node, pointed mode only.
  std::optional<int> point;
};

/// Normalized tree bimersive to the input, bounded by Q(|alphabet|, level)
/// (pointed: Q(2|alphabet|, level+2)), plus the verified (rho, iota) pair.
CondenseResult condense(const LabelledTree& t, std::optional<int> pointed = {});

}  // namespace itl
