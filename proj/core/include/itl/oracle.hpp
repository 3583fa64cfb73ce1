#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "itl/formula.hpp"
#include "itl/model.hpp"

namespace itl {

enum class ClassFilter { All, Persistent, HereAndThere, FiniteTreeOrder };
enum class DecideMode { Validity, Satisfiability };

ClassFilter class_from_name(const std::string& name);
const char* class_name(ClassFilter c);

struct SearchSpec {
  int max_worlds = 3;
  std::vector<std::string> atoms;
  ClassFilter cls = ClassFilter::All;
  DecideMode mode = DecideMode::Validity;
  std::uint64_t seed = 0;
  /// 0 means the default guard (max_worlds <= 5 for class all).
  int guard_override = 0;
};

/// Emits every labeled model on 1..max_worlds worlds meeting the class
/// filter, in a fixed order (world count, order bitmask, successor encoding,
/// valuation bitmask). The visitor returns false to stop early.
void enumerate_models(
    const SearchSpec& spec,
    const std::function<bool(const Model&, std::uint64_t ordinal)>& visit);

std::uint64_t count_models(const SearchSpec& spec);

/// Deterministic function of spec.seed; the result passes validate() and the
/// class filter. Throws Error after too many rejections.
Model random_model(const SearchSpec& spec, int max_tries = 100000);

struct Verdict {
  enum class Outcome { HoldsWithinBound, WitnessFound } outcome;
  std::optional<std::pair<Model, int>> witness;
  std::uint64_t models_checked = 0;
};

/// Exhaustive countermodel (validity) or model (satisfiability) search over
/// the enumeration; deterministic first witness, also with jobs > 1.
Verdict bounded_decide(const Fptr& f, const SearchSpec& spec, int jobs = 1);

}  // namespace itl
