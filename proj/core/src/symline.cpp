#include "itl/symline.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace itl {

namespace {

using Iv = LineSet::Iv;

bool lo_le(const std::optional<std::int64_t>& lo, std::int64_t n) {
  return !lo || *lo <= n;
}
bool hi_ge(const std::optional<std::int64_t>& hi, std::int64_t n) {
  return !hi || *hi >= n;
}

std::vector<Iv> normalize(std::vector<Iv> ivs) {
  std::sort(ivs.begin(), ivs.end(), [](const Iv& a, const Iv& b) {
    if (!a.lo || !b.lo) return !a.lo && b.lo;
    return *a.lo < *b.lo;
  });
  std::vector<Iv> out;
  for (const auto& iv : ivs) {
    if (iv.lo && iv.hi && *iv.lo > *iv.hi) continue;  // empty
    if (!out.empty()) {
      Iv& last = out.back();
      bool overlap_or_adjacent =
          !last.hi || (lo_le(iv.lo, *last.hi + 1));
      if (overlap_or_adjacent) {
        if (last.hi && (!iv.hi || *iv.hi > *last.hi)) last.hi = iv.hi;
        continue;
      }
    }
    out.push_back(iv);
  }
  return out;
}

}  // namespace

LineSet LineSet::none() { return LineSet{}; }

LineSet LineSet::all_integers(bool with_root) {
  LineSet s;
  s.contains_root = with_root;
  s.intervals.push_back({std::nullopt, std::nullopt});
  return s;
}

bool LineSet::contains_int(std::int64_t n) const {
  for (const auto& iv : intervals)
    if (lo_le(iv.lo, n) && hi_ge(iv.hi, n)) return true;
  return false;
}

bool LineSet::covers_all_integers() const {
  return intervals.size() == 1 && !intervals[0].lo && !intervals[0].hi;
}

std::optional<std::int64_t> LineSet::max_int() const {
  if (intervals.empty()) return std::nullopt;
  return intervals.back().hi;  // nullopt when unbounded above
}

std::optional<std::int64_t> LineSet::final_segment() const {
  if (intervals.empty() || intervals.back().hi) return std::nullopt;
  return intervals.back().lo ? *intervals.back().lo
                             : std::numeric_limits<std::int64_t>::min();
}

std::string LineSet::to_string() const {
  std::ostringstream os;
  os << "root=" << (contains_root ? "yes" : "no") << " intervals=";
  if (intervals.empty()) os << "{}";
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (i) os << " ";
    os << (intervals[i].lo ? ("[" + std::to_string(*intervals[i].lo))
                           : std::string("(-inf"));
    os << ",";
    os << (intervals[i].hi ? (std::to_string(*intervals[i].hi) + "]")
                           : std::string("inf)"));
  }
  return os.str();
}

bool LineSet::normal_form_ok() const {
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const auto& iv = intervals[i];
    if (iv.lo && iv.hi && *iv.lo > *iv.hi) return false;
    if (i) {
      const auto& prev = intervals[i - 1];
      if (!prev.hi || !iv.lo) return false;
      if (*iv.lo <= *prev.hi + 1) return false;  // gap must be nonempty
    }
  }
  return true;
}

namespace {

LineSet make(bool root, std::vector<Iv> ivs) {
  LineSet s;
  s.contains_root = root;
  s.intervals = normalize(std::move(ivs));
  return s;
}

LineSet set_union(const LineSet& a, const LineSet& b) {
  std::vector<Iv> ivs = a.intervals;
  ivs.insert(ivs.end(), b.intervals.begin(), b.intervals.end());
  return make(a.contains_root || b.contains_root, std::move(ivs));
}

LineSet set_intersect(const LineSet& a, const LineSet& b) {
  std::vector<Iv> ivs;
  for (const auto& x : a.intervals)
    for (const auto& y : b.intervals) {
      Iv z;
      if (!x.lo)
        z.lo = y.lo;
      else if (!y.lo)
        z.lo = x.lo;
      else
        z.lo = std::max(*x.lo, *y.lo);
      if (!x.hi)
        z.hi = y.hi;
      else if (!y.hi)
        z.hi = x.hi;
      else
        z.hi = std::min(*x.hi, *y.hi);
      if (z.lo && z.hi && *z.lo > *z.hi) continue;
      ivs.push_back(z);
    }
  return make(a.contains_root && b.contains_root, std::move(ivs));
}

// integers not in a (root handled by callers)
std::vector<Iv> complement_ints(const LineSet& a) {
  std::vector<Iv> out;
  std::optional<std::int64_t> lo;  // -inf
  bool open = true;
  for (const auto& iv : a.intervals) {
    if (iv.lo) {
      Iv z;
      z.lo = lo;
      z.hi = *iv.lo - 1;
      if (!z.lo || *z.lo <= *z.hi) out.push_back(z);
    } else {
      // a starts at -inf: nothing before it
    }
    if (!iv.hi) {
      open = false;
      break;
    }
    lo = *iv.hi + 1;
  }
  if (open) out.push_back({lo, std::nullopt});
  return out;
}

bool subset_ints(const LineSet& a, const LineSet& b) {
  LineSet comp = make(false, complement_ints(b));
  return set_intersect(a, comp).intervals.empty();
}

// pointwise at integers, global entailment at the root
LineSet set_imp(const LineSet& a, const LineSet& b) {
  std::vector<Iv> na = complement_ints(a);
  LineSet notA = make(false, std::move(na));
  LineSet ints = set_union(notA, set_intersect(a, b));
  bool root = subset_ints(a, b) && (!a.contains_root || b.contains_root);
  // root also needs the implication pointwise at r, which global
  // entailment already covers
  LineSet out = ints;
  out.contains_root = root;
  return out;
}

LineSet set_next(const LineSet& a) {
  std::vector<Iv> ivs;
  for (const auto& iv : a.intervals) {
    Iv z;
    if (iv.lo) z.lo = *iv.lo - 1;
    if (iv.hi) z.hi = *iv.hi - 1;
    ivs.push_back(z);
  }
  return make(a.contains_root, std::move(ivs));
}

LineSet set_diam(const LineSet& a) {
  LineSet out;
  out.contains_root = a.contains_root;
  if (a.intervals.empty()) return out;
  auto m = a.max_int();
  if (!m)
    out.intervals.push_back({std::nullopt, std::nullopt});
  else
    out.intervals.push_back({std::nullopt, *m});
  return out;
}

LineSet set_box(const LineSet& a) {
  LineSet out;
  out.contains_root = a.contains_root;
  if (!a.intervals.empty() && !a.intervals.back().hi)
    out.intervals.push_back(a.intervals.back());
  return out;
}

// n in A U B iff some b in B with b >= n and [n, b) inside A;
// each B-interval extends down through the A-run touching its left end.
LineSet set_until(const LineSet& a, const LineSet& b) {
  std::vector<Iv> ivs;
  for (const auto& biv : b.intervals) {
    Iv z = biv;
    if (z.lo) {
      for (const auto& aiv : a.intervals) {
        if (lo_le(aiv.lo, *z.lo - 1) && hi_ge(aiv.hi, *z.lo - 1)) {
          z.lo = aiv.lo;  // may become -inf
          break;
        }
      }
    }
    ivs.push_back(z);
  }
  return make(b.contains_root, std::move(ivs));
}

// n in A R B iff [n, first A-point >= n] inside B (all of [n, inf) when
// no A-point exists).
LineSet set_release(const LineSet& a, const LineSet& b) {
  std::vector<Iv> ivs;
  for (const auto& biv : b.intervals) {
    if (!biv.hi) {
      ivs.push_back(biv);
      continue;
    }
    // greatest A-point <= hi, as a threshold for n
    std::optional<std::int64_t> last_a;
    bool unbounded_a_below = false;
    for (const auto& aiv : a.intervals) {
      if (aiv.lo && *aiv.lo > *biv.hi) break;
      std::int64_t cand;
      if (!aiv.hi || *aiv.hi > *biv.hi)
        cand = *biv.hi;
      else
        cand = *aiv.hi;
      last_a = cand;
      if (!aiv.lo) unbounded_a_below = true;
    }
    (void)unbounded_a_below;
    if (!last_a) continue;  // no A-point up to hi: nothing qualifies
    Iv z;
    z.lo = biv.lo;
    z.hi = std::min(*last_a, *biv.hi);
    if (z.lo && *z.lo > *z.hi) continue;
    ivs.push_back(z);
  }
  return make(b.contains_root, std::move(ivs));
}

LineSet eval_rec(const Fptr& f, bool free_atoms) {
  switch (f->conn) {
    case Conn::Bottom:
      return LineSet::none();
    case Conn::Atom: {
      if (f->name == "p") {
        LineSet s;
        s.intervals.push_back({0, std::nullopt});
        return s;
      }
      if (!free_atoms)
        throw InputError("line model defines only the atom p (use --free-atoms-false)");
      return LineSet::none();
    }
    case Conn::Neg:
      return set_imp(eval_rec(f->left, free_atoms), LineSet::none());
    case Conn::And:
      return set_intersect(eval_rec(f->left, free_atoms),
                           eval_rec(f->right, free_atoms));
    case Conn::Or:
      return set_union(eval_rec(f->left, free_atoms),
                       eval_rec(f->right, free_atoms));
    case Conn::Imp:
      return set_imp(eval_rec(f->left, free_atoms),
                     eval_rec(f->right, free_atoms));
    case Conn::Next:
      return set_next(eval_rec(f->left, free_atoms));
    case Conn::Diam:
      return set_diam(eval_rec(f->left, free_atoms));
    case Conn::Box:
      return set_box(eval_rec(f->left, free_atoms));
    case Conn::Until:
      return set_until(eval_rec(f->left, free_atoms),
                       eval_rec(f->right, free_atoms));
    case Conn::Release:
      return set_release(eval_rec(f->left, free_atoms),
                         eval_rec(f->right, free_atoms));
  }
  throw Error("unreachable");
}

}  // namespace

LineSet line_truth_set(const Fptr& f, bool free_atoms_false) {
  return eval_rec(f, free_atoms_false);
}

bool line_eval(bool root, std::int64_t n, const Fptr& f, bool free_atoms_false) {
  LineSet s = line_truth_set(f, free_atoms_false);
  return root ? s.contains_root : s.contains_int(n);
}

}  // namespace itl
