#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "itl/formula.hpp"
#include "itl/labelled.hpp"
#include "itl/model.hpp"

namespace itl {

/// Finite lasso presentation of a stratified model: tree strata
/// W_0 .. W_{b-1}, per-stratum step maps, and an optional loop sending
/// W_{b-1} into W_a (the composite of the intended step with the immersion).
struct StratifiedModel {
  std::vector<std::string> names;  // global node ids
  std::vector<std::vector<std::string>> val;
  std::vector<std::vector<int>> strata;
  std::vector<int> stratum_of;
  std::vector<int> parent;  // intra-stratum tree parent, -1 at roots
  /// Next-stratum image; on the last stratum the loop image, or -1 when the
  /// presentation is loopless (truncations).
  std::vector<int> step;
  std::optional<int> loop_a;

  int size() const { return static_cast<int>(names.size()); }
  int strata_count() const { return static_cast<int>(strata.size()); }
  int root_of(int stratum) const;
  bool tree_leq(int a, int b) const;  // intra-stratum ancestor order

  static StratifiedModel make(std::vector<std::string> names,
                              std::vector<std::vector<std::string>> val,
                              std::vector<std::vector<int>> strata,
                              std::vector<int> parent, std::vector<int> step,
                              std::optional<int> loop_a);
};

/// Finite model with worlds = nodes, S = step (+ loop); requires the loop.
Model loop_back(const StratifiedModel& s);
/// Designated world: the root of W_0.
int loop_back_root(const StratifiedModel& s);

/// Inserts `periods` extra copies of strata [a, b) before looping.
StratifiedModel unroll(const StratifiedModel& s, int periods);

/// Stratum k as a labelled tree over the given per-node token sets
/// (local node i is strata[k][i]).
LabelledTree stratum_tree(const StratifiedModel& s, int k,
                          const std::vector<std::vector<std::string>>& labels);

/// Per-node Sigma truth labels, evaluated on the loop-back model.
std::vector<std::vector<std::string>> sigma_labels(const StratifiedModel& s,
                                                   const std::vector<Fptr>& sigma);

struct StratifiedAnnotation {
  StratifiedModel model;  // node ids coincide with the input world ids
  bool expanding = false;
};

/// Partitions the order components into S-advancing tree strata with a
/// loop, or reports the violated clause.
std::variant<StratifiedAnnotation, std::string> check_stratified(const Model& m);

struct Eventuality {
  int world = -1;
  Fptr formula;
  std::vector<int> fulfillment;
  int time = 0;
};

/// Box psi falsified at w, or psi U chi satisfied at w, with the witnessing
/// S-walk; nullopt when (w, f) is not an eventuality.
std::optional<Eventuality> fulfillment(const Model& m, int w, const Fptr& f);

struct StratColumn {
  int spawn = -1;     // column the repair hangs off (-1 for the spine)
  int base_row = 0;   // first row the column occupies
  std::vector<int> h; // base model worlds, rows base_row .. horizon
  std::string demand;  // label key realized by this column
};

struct StratifierState {
  std::vector<StratColumn> columns;
  int horizon = 0;
  int fired = 0;       // defects processed (columns beyond the spine)
  bool complete = false;
  int pending = 0;     // unmet demands left when rounds ran out
  std::vector<std::string> fired_defects;  // "(x,y,{...})" in firing order
};

struct StratifyResult {
  StratifiedModel truncation;  // loopless; nodes named c<col>r<row>
  StratifierState state;
  /// h as a flat map: node id -> base model world.
  std::vector<int> h;
};

/// Bounded defect-repair stratification of (m, w) relative to Sigma: rows
/// 0..horizon, at most `rounds` repairs. Repairs realize missing labels
/// above a node, deepest demands first.
StratifyResult stratify_bounded(const Model& m, int w,
                                const std::vector<Fptr>& sigma, int rounds,
                                int horizon);

struct SuResult {
  StratifiedModel model;
  /// pi: new node -> old node with the same Sigma label.
  std::vector<int> pi;
  std::optional<int> point;  // image of the designated node, pointed mode
};

/// Replace stratum k by its normalized (optionally pointed) Sigma-labelled
/// tree, rewiring the incoming step through rho and the outgoing through
/// iota. Requires the loop (labels need a total model).
SuResult su_normalize(const StratifiedModel& s, int k,
                      const std::vector<Fptr>& sigma,
                      std::optional<int> point = {});

/// Remove strata (k, l] given an immersion sigma_map: W_k -> W_l on the
/// Sigma-labelled strata (global node ids); pointed variant additionally
/// requires sigma_map(points.first) == points.second.
SuResult su_collapse(const StratifiedModel& s, int k, int l,
                     const std::vector<int>& sigma_map,
                     const std::vector<Fptr>& sigma,
                     std::optional<std::pair<int, int>> points = {});

struct GoodReport {
  bool good = false;
  bool clause_bound = false;       // a < b <= computable bound
  bool clause_bimersive = false;   // loop strata bimersive as Sigma trees
  bool clause_fulfillment = false; // fulfillment times below b - a
  bool clause_sizes = false;       // every stratum within the Q bound
  std::vector<std::string> details;
};

GoodReport is_good(const StratifiedModel& s, int a, int b,
                   const std::vector<Fptr>& sigma);

}  // namespace itl
