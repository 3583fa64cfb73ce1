#include "itl/formula.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace itl {

namespace {
Fptr node(Conn c, std::string name, Fptr l, Fptr r) {
  auto f = std::make_shared<Formula>();
  f->conn = c;
  f->name = std::move(name);
  f->left = std::move(l);
  f->right = std::move(r);
  return f;
}
}  // namespace

Fptr bottom() {
  static const Fptr b = node(Conn::Bottom, "", nullptr, nullptr);
  return b;
}

Fptr atom(std::string name) {
  // atom names are [a-z][a-zA-Z0-9_]*
  bool ok = !name.empty() && name[0] >= 'a' && name[0] <= 'z';
  for (std::size_t i = 1; ok && i < name.size(); ++i) {
    char c = name[i];
    ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
  }
  if (!ok) throw InputError("bad atom name: " + name);
  return node(Conn::Atom, std::move(name), nullptr, nullptr);
}
Fptr neg(Fptr a) { return node(Conn::Neg, "", std::move(a), nullptr); }
Fptr conj(Fptr a, Fptr b) { return node(Conn::And, "", std::move(a), std::move(b)); }
Fptr disj(Fptr a, Fptr b) { return node(Conn::Or, "", std::move(a), std::move(b)); }
Fptr imp(Fptr a, Fptr b) { return node(Conn::Imp, "", std::move(a), std::move(b)); }
Fptr next(Fptr a) { return node(Conn::Next, "", std::move(a), nullptr); }
Fptr diam(Fptr a) { return node(Conn::Diam, "", std::move(a), nullptr); }
Fptr box(Fptr a) { return node(Conn::Box, "", std::move(a), nullptr); }
Fptr until(Fptr a, Fptr b) { return node(Conn::Until, "", std::move(a), std::move(b)); }
Fptr release(Fptr a, Fptr b) { return node(Conn::Release, "", std::move(a), std::move(b)); }
Fptr top() { return imp(bottom(), bottom()); }

bool is_unary(Conn c) {
  return c == Conn::Neg || c == Conn::Next || c == Conn::Diam || c == Conn::Box;
}
bool is_binary(Conn c) {
  return c == Conn::And || c == Conn::Or || c == Conn::Imp ||
         c == Conn::Until || c == Conn::Release;
}

int length(const Fptr& f) {
  switch (f->conn) {
    case Conn::Bottom:
    case Conn::Atom:
      return 0;
    default:
      if (is_unary(f->conn)) return 1 + length(f->left);
      return 1 + length(f->left) + length(f->right);
  }
}

int compare(const Fptr& a, const Fptr& b) {
  int la = length(a), lb = length(b);
  if (la != lb) return la < lb ? -1 : 1;
  if (a->conn != b->conn)
    return static_cast<int>(a->conn) < static_cast<int>(b->conn) ? -1 : 1;
  switch (a->conn) {
    case Conn::Bottom:
      return 0;
    case Conn::Atom:
      return a->name.compare(b->name);
    default:
      if (int c = compare(a->left, b->left)) return c;
      if (is_binary(a->conn)) return compare(a->right, b->right);
      return 0;
  }
}

bool equal(const Fptr& a, const Fptr& b) { return compare(a, b) == 0; }

namespace {
void collect(const Fptr& f, std::vector<Fptr>& out) {
  out.push_back(f);
  if (f->left) collect(f->left, out);
  if (f->right) collect(f->right, out);
}
}  // namespace

std::vector<Fptr> closure(const std::vector<Fptr>& fs) {
  std::vector<Fptr> all;
  for (const auto& f : fs) collect(f, all);
  std::sort(all.begin(), all.end(),
            [](const Fptr& a, const Fptr& b) { return compare(a, b) < 0; });
  all.erase(std::unique(all.begin(), all.end(),
                        [](const Fptr& a, const Fptr& b) { return equal(a, b); }),
            all.end());
  return all;
}

std::vector<Fptr> closure(const Fptr& f) { return closure(std::vector<Fptr>{f}); }

bool closed_under_subformulas(const std::vector<Fptr>& fs) {
  auto member = [&](const Fptr& g) {
    for (const auto& h : fs)
      if (equal(g, h)) return true;
    return false;
  };
  for (const auto& f : fs) {
    if (f->left && !member(f->left)) return false;
    if (f->right && !member(f->right)) return false;
  }
  return true;
}

Fragment fragment_from_name(const std::string& name) {
  if (name == "x") return Fragment::X;
  if (name == "diambox") return Fragment::DiamBox;
  if (name == "u") return Fragment::U;
  if (name == "r") return Fragment::R;
  if (name == "boxu") return Fragment::BoxU;
  if (name == "diamr") return Fragment::DiamR;
  if (name == "full") return Fragment::Full;
  throw InputError("unknown fragment: " + name);
}

const char* fragment_name(Fragment f) {
  switch (f) {
    case Fragment::X: return "x";
    case Fragment::DiamBox: return "diambox";
    case Fragment::U: return "u";
    case Fragment::R: return "r";
    case Fragment::BoxU: return "boxu";
    case Fragment::DiamR: return "diamr";
    case Fragment::Full: return "full";
  }
  return "?";
}

namespace {
// Booleans, Neg and Next belong to every fragment.
bool conn_allowed(Conn c, Fragment frag) {
  switch (c) {
    case Conn::Bottom:
    case Conn::Atom:
    case Conn::Neg:
    case Conn::And:
    case Conn::Or:
    case Conn::Imp:
    case Conn::Next:
      return true;
    case Conn::Diam:
      return frag == Fragment::DiamBox || frag == Fragment::DiamR ||
             frag == Fragment::Full;
    case Conn::Box:
      return frag == Fragment::DiamBox || frag == Fragment::BoxU ||
             frag == Fragment::Full;
    case Conn::Until:
      return frag == Fragment::U || frag == Fragment::BoxU ||
             frag == Fragment::Full;
    case Conn::Release:
      return frag == Fragment::R || frag == Fragment::DiamR ||
             frag == Fragment::Full;
  }
  return false;
}
}  // namespace

bool in_fragment(const Fptr& f, Fragment frag) {
  if (!conn_allowed(f->conn, frag)) return false;
  if (f->left && !in_fragment(f->left, frag)) return false;
  if (f->right && !in_fragment(f->right, frag)) return false;
  return true;
}

Fptr translate(const Fptr& f, Fragment target) {
  if (target != Fragment::BoxU && target != Fragment::DiamR)
    throw InputError("translate target must be boxu or diamr");
  Fptr l = f->left ? translate(f->left, target) : nullptr;
  Fptr r = f->right ? translate(f->right, target) : nullptr;
  switch (f->conn) {
    case Conn::Bottom:
    case Conn::Atom:
      return f;
    case Conn::Neg:
      return neg(l);
    case Conn::And:
      return conj(l, r);
    case Conn::Or:
      return disj(l, r);
    case Conn::Imp:
      return imp(l, r);
    case Conn::Next:
      return next(l);
    case Conn::Diam:
      // Diam phi <-> (T U phi)
      return target == Fragment::BoxU ? until(top(), l) : diam(l);
    case Conn::Box:
      // Box phi <-> (F R phi)
      return target == Fragment::DiamR ? release(bottom(), l) : box(l);
    case Conn::Until:
      // phi U psi <-> (psi R (phi | psi)) & Diam psi
      return target == Fragment::DiamR
                 ? conj(release(r, disj(l, r)), diam(r))
                 : until(l, r);
    case Conn::Release:
      // phi R psi <-> (psi U (phi & psi)) | Box psi
      return target == Fragment::BoxU
                 ? disj(until(r, conj(l, r)), box(r))
                 : release(l, r);
  }
  throw Error("unreachable");
}

namespace {
// Normal form of X applied to an already-normalized formula.
Fptr push_next(const Fptr& f) {
  switch (f->conn) {
    case Conn::Bottom:
      return bottom();  // X F <-> F
    case Conn::Atom:
    case Conn::Next:
      return next(f);
    case Conn::Neg:
      return neg(push_next(f->left));
    case Conn::And:
      return conj(push_next(f->left), push_next(f->right));
    case Conn::Or:
      return disj(push_next(f->left), push_next(f->right));
    case Conn::Imp:
      // persistent models only: (X a -> X b) <-> X(a -> b)
      return imp(push_next(f->left), push_next(f->right));
    case Conn::Diam:
      return diam(push_next(f->left));
    case Conn::Box:
      return box(push_next(f->left));
    case Conn::Until:
      return until(push_next(f->left), push_next(f->right));
    case Conn::Release:
      return release(push_next(f->left), push_next(f->right));
  }
  throw Error("unreachable");
}
}  // namespace

Fptr next_normal_form(const Fptr& f) {
  switch (f->conn) {
    case Conn::Bottom:
    case Conn::Atom:
      return f;
    case Conn::Next:
      return push_next(next_normal_form(f->left));
    default: {
      Fptr l = f->left ? next_normal_form(f->left) : nullptr;
      Fptr r = f->right ? next_normal_form(f->right) : nullptr;
      switch (f->conn) {
        case Conn::Neg: return neg(l);
        case Conn::And: return conj(l, r);
        case Conn::Or: return disj(l, r);
        case Conn::Imp: return imp(l, r);
        case Conn::Diam: return diam(l);
        case Conn::Box: return box(l);
        case Conn::Until: return until(l, r);
        case Conn::Release: return release(l, r);
        default: throw Error("unreachable");
      }
    }
  }
}

namespace {
std::vector<Conn> fragment_unaries(Fragment frag) {
  std::vector<Conn> out{Conn::Neg};
  for (Conn c : {Conn::Next, Conn::Diam, Conn::Box})
    if (conn_allowed(c, frag)) out.push_back(c);
  std::sort(out.begin(), out.end());
  return out;
}
std::vector<Conn> fragment_binaries(Fragment frag) {
  std::vector<Conn> out;
  for (Conn c : {Conn::And, Conn::Or, Conn::Imp, Conn::Until, Conn::Release})
    if (conn_allowed(c, frag)) out.push_back(c);
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > UINT64_MAX / b ? UINT64_MAX : a * b;
}
}  // namespace

std::uint64_t count_formulas(std::size_t n_atoms, Fragment frag, int max_length) {
  std::uint64_t n_un = fragment_unaries(frag).size();
  std::uint64_t n_bin = fragment_binaries(frag).size();
  std::vector<std::uint64_t> c(static_cast<std::size_t>(max_length) + 1, 0);
  c[0] = 1 + n_atoms;
  for (int l = 1; l <= max_length; ++l) {
    std::uint64_t t = sat_mul(n_un, c[l - 1]);
    for (int i = 0; i <= l - 1; ++i)
      t = sat_add(t, sat_mul(n_bin, sat_mul(c[i], c[l - 1 - i])));
    c[l] = t;
  }
  std::uint64_t total = 0;
  for (auto v : c) total = sat_add(total, v);
  return total;
}

std::vector<Fptr> enumerate_formulas(const std::vector<std::string>& atoms,
                                     Fragment frag, int max_length,
                                     std::uint64_t cap) {
  if (count_formulas(atoms.size(), frag, max_length) > cap)
    throw CostGuardError("formula enumeration exceeds budget");
  std::vector<std::string> sorted_atoms = atoms;
  std::sort(sorted_atoms.begin(), sorted_atoms.end());
  auto unaries = fragment_unaries(frag);
  auto binaries = fragment_binaries(frag);

  std::vector<std::vector<Fptr>> by_len(static_cast<std::size_t>(max_length) + 1);
  by_len[0].push_back(bottom());
  for (const auto& a : sorted_atoms) by_len[0].push_back(atom(a));
  for (int l = 1; l <= max_length; ++l) {
    // tag order, then children lexicographically (shorter first)
    std::vector<Fptr> out;
    std::vector<Conn> tags;
    tags.insert(tags.end(), unaries.begin(), unaries.end());
    tags.insert(tags.end(), binaries.begin(), binaries.end());
    std::sort(tags.begin(), tags.end());
    for (Conn c : tags) {
      if (is_unary(c)) {
        for (const auto& f : by_len[l - 1]) {
          switch (c) {
            case Conn::Neg: out.push_back(neg(f)); break;
            case Conn::Next: out.push_back(next(f)); break;
            case Conn::Diam: out.push_back(diam(f)); break;
            case Conn::Box: out.push_back(box(f)); break;
            default: break;
          }
        }
      } else {
        for (int i = 0; i <= l - 1; ++i) {
          for (const auto& a : by_len[i]) {
            for (const auto& b : by_len[l - 1 - i]) {
              switch (c) {
                case Conn::And: out.push_back(conj(a, b)); break;
                case Conn::Or: out.push_back(disj(a, b)); break;
                case Conn::Imp: out.push_back(imp(a, b)); break;
                case Conn::Until: out.push_back(until(a, b)); break;
                case Conn::Release: out.push_back(release(a, b)); break;
                default: break;
              }
            }
          }
        }
      }
    }
    by_len[l] = std::move(out);
  }
  std::vector<Fptr> all;
  for (auto& v : by_len) all.insert(all.end(), v.begin(), v.end());
  return all;
}

}  // namespace itl
