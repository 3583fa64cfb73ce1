#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "itl/bisim.hpp"
#include "itl/labelled.hpp"
#include "itl/model.hpp"
#include "itl/strat.hpp"

namespace itl {

/// Canonical line-oriented model format ('#' comments):
///   world <id> [atom ...]
///   le <id> <id>        order generator edges (closure is computed)
///   succ <id> <id>
Model parse_model_text(std::istream& in);
void write_model_text(std::ostream& out, const Model& m);

/// Stratified extension: adds `stratum <index> <id>` lines and an optional
/// `loop <a> <b>` followed by `map <id> <id>` lines giving the loop images
/// of the last stratum.
StratifiedModel parse_stratified_text(std::istream& in);
void write_stratified_text(std::ostream& out, const StratifiedModel& s);

/// Family format: `flavor <name>` then `level <i>: (w,v) (w,v) ...`.
BisimFamily parse_family_text(std::istream& in, const Model& m1, const Model& m2);
void write_family_text(std::ostream& out, const Model& m1, const Model& m2,
                       const BisimFamily& fam);

/// Labelled tree format:
///   node <id> [token ...]
///   edge <parent> <child>
///   point <id>            (optional)
LabelledTree parse_tree_text(std::istream& in, std::optional<int>* point = nullptr);
void write_tree_text(std::ostream& out, const LabelledTree& t,
                     std::optional<int> point = {});

}  // namespace itl
