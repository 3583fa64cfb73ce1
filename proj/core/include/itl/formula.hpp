#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace itl {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Raised when a cost guard trips (enumeration too large, graph too big, ...).
struct CostGuardError : Error {
  using Error::Error;
};
/// Bad user input (unknown world, malformed file, ...).
struct InputError : Error {
  using Error::Error;
};

enum class Conn : std::uint8_t {
  Bottom,
  Atom,
  Neg,
  And,
  Or,
  Imp,
  Next,
  Diam,
  Box,
  Until,
  Release,
};

struct Formula;
using Fptr = std::shared_ptr<const Formula>;

/// Immutable formula node. Neg is a primitive constructor; its semantics is
/// phi -> bottom.
struct Formula {
  Conn conn;
  std::string name;  // Atom only
  Fptr left, right;  // unary operators use left
};

Fptr bottom();
Fptr atom(std::string name);
Fptr neg(Fptr a);
Fptr conj(Fptr a, Fptr b);
Fptr disj(Fptr a, Fptr b);
Fptr imp(Fptr a, Fptr b);
Fptr next(Fptr a);
Fptr diam(Fptr a);
Fptr box(Fptr a);
Fptr until(Fptr a, Fptr b);
Fptr release(Fptr a, Fptr b);
/// Surface T desugars to bottom -> bottom.
Fptr top();

bool is_unary(Conn c);
bool is_binary(Conn c);

/// Connective count: atoms and bottom weigh 0, every connective adds 1.
int length(const Fptr& f);

/// Total order: by length, then connective tag, then children, then name.
int compare(const Fptr& a, const Fptr& b);
bool equal(const Fptr& a, const Fptr& b);

/// Smallest subformula-closed set containing f, sorted by compare().
/// Neg is primitive, so closure(~ X p) = {~ X p, X p, p}.
std::vector<Fptr> closure(const Fptr& f);
std::vector<Fptr> closure(const std::vector<Fptr>& fs);

/// Every immediate subformula of a member is a member.
bool closed_under_subformulas(const std::vector<Fptr>& fs);

enum class Fragment { X, DiamBox, U, R, BoxU, DiamR, Full };

Fragment fragment_from_name(const std::string& name);
const char* fragment_name(Fragment f);
bool in_fragment(const Fptr& f, Fragment frag);

/// Rewrites into L_BoxU or L_DiamR preserving truth on every model.
Fptr translate(const Fptr& f, Fragment target);

/// Pushes X down to atoms; equivalence holds over persistent models only.
Fptr next_normal_form(const Fptr& f);

/// Number of fragment formulas over the given atoms with length <= max_length
/// (saturating at UINT64_MAX).
std::uint64_t count_formulas(std::size_t n_atoms, Fragment frag, int max_length);

/// All fragment formulas of length <= max_length, each once, ordered by
/// compare(). Throws CostGuardError when the count pre-estimate exceeds cap.
std::vector<Fptr> enumerate_formulas(const std::vector<std::string>& atoms,
                                     Fragment frag, int max_length,
                                     std::uint64_t cap = 200000);

}  // namespace itl
