#include "itl/oracle.hpp"

#include <algorithm>
#include <map>
#include <thread>

namespace itl {

ClassFilter class_from_name(const std::string& name) {
  if (name == "all") return ClassFilter::All;
  if (name == "persistent") return ClassFilter::Persistent;
  if (name == "here-and-there" || name == "ht") return ClassFilter::HereAndThere;
  if (name == "tree" || name == "finite-tree-order")
    return ClassFilter::FiniteTreeOrder;
  throw InputError("unknown class filter: " + name);
}

const char* class_name(ClassFilter c) {
  switch (c) {
    case ClassFilter::All: return "all";
    case ClassFilter::Persistent: return "persistent";
    case ClassFilter::HereAndThere: return "here-and-there";
    case ClassFilter::FiniteTreeOrder: return "finite-tree-order";
  }
  return "?";
}

namespace {

// Deterministic splitmix64; stable across platforms.
struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed) : s(seed + 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next() {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

// All partial orders on n labeled points, as closed up-set tables, ordered
// by the off-diagonal relation bitmask.
const std::vector<std::vector<std::vector<int>>>& posets_on(int n) {
  static std::map<int, std::vector<std::vector<std::vector<int>>>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::vector<std::vector<int>>> out;
  const int bits = n * n - n;
  std::vector<std::pair<int, int>> pair_of_bit;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) pair_of_bit.emplace_back(i, j);
  for (std::uint64_t mask = 0; mask < (1ull << bits); ++mask) {
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) le[i][i] = true;
    for (int b = 0; b < bits; ++b)
      if (mask & (1ull << b)) le[pair_of_bit[b].first][pair_of_bit[b].second] = true;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j) {
        if (le[i][j] && le[j][i] && i != j) ok = false;  // antisymmetry
        if (!le[i][j]) continue;
        for (int k = 0; k < n; ++k)
          if (le[j][k] && !le[i][k]) {  // transitivity
            ok = false;
            break;
          }
      }
    if (!ok) continue;
    std::vector<std::vector<int>> up(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (le[i][j]) up[i].push_back(j);
    out.push_back(std::move(up));
  }
  return cache.emplace(n, std::move(out)).first->second;
}

std::vector<std::string> world_names(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("w" + std::to_string(i));
  return names;
}

std::vector<std::pair<int, int>> edges_of_up(const std::vector<std::vector<int>>& up) {
  std::vector<std::pair<int, int>> edges;
  for (int w = 0; w < static_cast<int>(up.size()); ++w)
    for (int v : up[w])
      if (v != w) edges.emplace_back(w, v);
  return edges;
}

bool up_is_tree(const std::vector<std::vector<int>>& up) {
  const int n = static_cast<int>(up.size());
  std::vector<std::vector<int>> down(n);
  for (int w = 0; w < n; ++w)
    for (int v : up[w]) down[v].push_back(w);
  int roots = 0;
  for (int w = 0; w < n; ++w) {
    if (down[w].size() == 1) ++roots;
    for (int a : down[w])
      for (int b : down[w]) {
        bool ab = std::binary_search(up[a].begin(), up[a].end(), b);
        bool ba = std::binary_search(up[b].begin(), up[b].end(), a);
        if (!ab && !ba) return false;
      }
  }
  return roots == 1;
}

struct EnumCtx {
  const SearchSpec& spec;
  const std::function<bool(const Model&, std::uint64_t)>& visit;
  std::uint64_t ordinal = 0;
  bool stopped = false;

  bool emit(const Model& m) {
    if (!visit(m, ordinal++)) {
      stopped = true;
      return false;
    }
    return true;
  }
};

void enumerate_general(EnumCtx& ctx, int n, bool need_backward, bool need_tree) {
  const auto& spec = ctx.spec;
  const std::uint64_t a_count = spec.atoms.size();
  for (const auto& up : posets_on(n)) {
    if (need_tree && !up_is_tree(up)) continue;
    auto leq = [&](int i, int j) {
      return std::binary_search(up[i].begin(), up[i].end(), j);
    };
    // successor encodings in base n
    std::uint64_t s_total = 1;
    for (int i = 0; i < n; ++i) s_total *= static_cast<std::uint64_t>(n);
    for (std::uint64_t senc = 0; senc < s_total; ++senc) {
      std::vector<int> succ(n);
      std::uint64_t e = senc;
      for (int i = 0; i < n; ++i) {
        succ[i] = static_cast<int>(e % n);
        e /= n;
      }
      bool fwd = true;
      for (int i = 0; i < n && fwd; ++i)
        for (int j : up[i])
          if (!leq(succ[i], succ[j])) {
            fwd = false;
            break;
          }
      if (!fwd) continue;
      if (need_backward) {
        bool bwd = true;
        for (int i = 0; i < n && bwd; ++i)
          for (int u : up[succ[i]]) {
            bool found = false;
            for (int v : up[i])
              if (succ[v] == u) {
                found = true;
                break;
              }
            if (!found) {
              bwd = false;
              break;
            }
          }
        if (!bwd) continue;
      }
      // valuations: per-world atom masks, monotone
      std::uint64_t v_total = 1;
      for (int i = 0; i < n; ++i) v_total *= (1ull << a_count);
      for (std::uint64_t venc = 0; venc < v_total; ++venc) {
        std::vector<std::uint64_t> vmask(n);
        std::uint64_t ve = venc;
        for (int i = 0; i < n; ++i) {
          vmask[i] = ve & ((1ull << a_count) - 1);
          ve >>= a_count;
        }
        bool mono = true;
        for (int i = 0; i < n && mono; ++i)
          for (int j : up[i])
            if ((vmask[i] & ~vmask[j]) != 0) {
              mono = false;
              break;
            }
        if (!mono) continue;
        std::vector<std::vector<std::string>> val(n);
        for (int i = 0; i < n; ++i)
          for (std::uint64_t a = 0; a < a_count; ++a)
            if (vmask[i] & (1ull << a)) val[i].push_back(spec.atoms[a]);
        Model m = Model::make(world_names(n), edges_of_up(up), succ, val);
        if (!ctx.emit(m)) return;
      }
    }
  }
}

// Here-and-there models are parametrized directly: a partition of the ids
// into oriented columns, a column map f, and monotone per-column valuations.
void enumerate_ht(EnumCtx& ctx, int n) {
  if (n % 2) return;
  const int t = n / 2;
  const auto& spec = ctx.spec;
  const std::uint64_t a_count = spec.atoms.size();

  std::vector<std::vector<std::pair<int, int>>> matchings;
  std::vector<std::pair<int, int>> cur;
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self) -> void {
    int first = -1;
    for (int i = 0; i < n; ++i)
      if (!used[i]) {
        first = i;
        break;
      }
    if (first < 0) {
      matchings.push_back(cur);
      return;
    }
    used[first] = true;
    for (int j = first + 1; j < n; ++j) {
      if (used[j]) continue;
      used[j] = true;
      cur.emplace_back(first, j);
      self(self);
      cur.pop_back();
      used[j] = false;
    }
    used[first] = false;
  };
  rec(rec);

  for (const auto& match : matchings) {
    for (std::uint64_t orient = 0; orient < (1ull << t); ++orient) {
      std::vector<std::pair<int, int>> cols(t);  // (bottom, top)
      for (int c = 0; c < t; ++c) {
        auto [a, b] = match[c];
        cols[c] = (orient & (1ull << c)) ? std::make_pair(b, a)
                                         : std::make_pair(a, b);
      }
      std::uint64_t f_total = 1;
      for (int c = 0; c < t; ++c) f_total *= static_cast<std::uint64_t>(t);
      for (std::uint64_t fenc = 0; fenc < f_total; ++fenc) {
        std::vector<int> f(t);
        std::uint64_t e = fenc;
        for (int c = 0; c < t; ++c) {
          f[c] = static_cast<int>(e % t);
          e /= t;
        }
        // monotone pairs (bottom mask subset of top mask) per column
        std::uint64_t v_total = 1;
        for (int c = 0; c < 2 * t; ++c) v_total *= (1ull << a_count);
        for (std::uint64_t venc = 0; venc < v_total; ++venc) {
          std::vector<std::uint64_t> vm(2 * t);
          std::uint64_t ve = venc;
          for (int i = 0; i < 2 * t; ++i) {
            vm[i] = ve & ((1ull << a_count) - 1);
            ve >>= a_count;
          }
          bool mono = true;
          for (int c = 0; c < t && mono; ++c)
            if ((vm[cols[c].first] & ~vm[cols[c].second]) != 0) mono = false;
          if (!mono) continue;
          std::vector<std::pair<int, int>> edges;
          std::vector<int> succ(n);
          std::vector<std::vector<std::string>> val(n);
          for (int c = 0; c < t; ++c) {
            edges.emplace_back(cols[c].first, cols[c].second);
            succ[cols[c].first] = cols[f[c]].first;
            succ[cols[c].second] = cols[f[c]].second;
          }
          for (int i = 0; i < n; ++i)
            for (std::uint64_t a = 0; a < a_count; ++a)
              if (vm[i] & (1ull << a)) val[i].push_back(spec.atoms[a]);
          Model m = Model::make(world_names(n), edges, succ, val);
          if (!ctx.emit(m)) return;
        }
      }
    }
  }
}

int guard_limit(const SearchSpec& spec) {
  return spec.guard_override > 0 ? spec.guard_override : 5;
}

}  // namespace

void enumerate_models(
    const SearchSpec& spec,
    const std::function<bool(const Model&, std::uint64_t)>& visit) {
  if (spec.max_worlds < 1) throw InputError("max_worlds must be >= 1");
  if (spec.cls == ClassFilter::All && spec.max_worlds > guard_limit(spec))
    throw CostGuardError("enumeration over class all guarded at " +
                         std::to_string(guard_limit(spec)) + " worlds");
  if (spec.atoms.size() > 8) throw CostGuardError("too many atoms to enumerate");
  EnumCtx ctx{spec, visit};
  for (int n = 1; n <= spec.max_worlds && !ctx.stopped; ++n) {
    switch (spec.cls) {
      case ClassFilter::All:
        enumerate_general(ctx, n, false, false);
        break;
      case ClassFilter::Persistent:
        enumerate_general(ctx, n, true, false);
        break;
      case ClassFilter::FiniteTreeOrder:
        enumerate_general(ctx, n, false, true);
        break;
      case ClassFilter::HereAndThere:
        enumerate_ht(ctx, n);
        break;
    }
  }
}

std::uint64_t count_models(const SearchSpec& spec) {
  std::uint64_t count = 0;
  enumerate_models(spec, [&](const Model&, std::uint64_t) {
    ++count;
    return true;
  });
  return count;
}

namespace {
bool model_order_is_tree(const Model& m) {
  std::vector<std::vector<int>> up(m.size());
  for (int w = 0; w < m.size(); ++w) up[w] = m.up(w);
  return up_is_tree(up);
}

bool recheck(const Fptr& f, const SearchSpec& spec,
             const std::pair<Model, int>& witness) {
  bool value = witness.first.eval(witness.second, f);
  return spec.mode == DecideMode::Validity ? !value : value;
}
}  // namespace

Model random_model(const SearchSpec& spec, int max_tries) {
  Rng rng(spec.seed);
  const int n = 1 + static_cast<int>(rng.below(spec.max_worlds));

  if (spec.cls == ClassFilter::HereAndThere) {
    int t = std::max(1, (n + 1) / 2);
    std::vector<int> f(t);
    for (int c = 0; c < t; ++c) f[c] = static_cast<int>(rng.below(t));
    std::vector<std::pair<int, int>> edges;
    std::vector<int> succ(2 * t);
    std::vector<std::vector<std::string>> val(2 * t);
    for (int c = 0; c < t; ++c) {
      int bot = 2 * c, top = 2 * c + 1;
      edges.emplace_back(bot, top);
      succ[bot] = 2 * f[c];
      succ[top] = 2 * f[c] + 1;
      for (const auto& a : spec.atoms) {
        bool at_top = rng.below(2) == 0;
        if (at_top) val[top].push_back(a);
        if (at_top && rng.below(2) == 0) val[bot].push_back(a);
      }
    }
    return Model::make(world_names(2 * t), edges, succ, val);
  }

  for (int attempt = 0; attempt < max_tries; ++attempt) {
    // random DAG edges over a random topological order keep antisymmetry
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.below(i + 1)]);
    std::vector<std::pair<int, int>> edges;
    if (spec.cls == ClassFilter::FiniteTreeOrder) {
      for (int i = 1; i < n; ++i)
        edges.emplace_back(perm[rng.below(i)], perm[i]);
    } else {
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (rng.below(100) < 30) edges.emplace_back(perm[i], perm[j]);
    }
    std::vector<int> succ(n);
    for (int i = 0; i < n; ++i) succ[i] = static_cast<int>(rng.below(n));
    std::vector<std::vector<std::string>> val(n);
    for (int i = 0; i < n; ++i)
      for (const auto& a : spec.atoms)
        if (rng.below(100) < 40) val[i].push_back(a);
    Model m0 = Model::make(world_names(n), edges, succ, val);
    // monotone repair: push atoms upward
    std::vector<std::vector<std::string>> closed(n);
    for (int w = 0; w < n; ++w) {
      std::vector<std::string> atoms;
      for (int d : m0.down(w))
        for (const auto& a : m0.val(d)) atoms.push_back(a);
      std::sort(atoms.begin(), atoms.end());
      atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
      closed[w] = std::move(atoms);
    }
    Model m = Model::make(world_names(n), edges, succ, closed);
    ClassReport rep = m.validate();
    if (!rep.model_ok()) continue;
    if (spec.cls == ClassFilter::Persistent && !rep.is_persistent) continue;
    if (spec.cls == ClassFilter::FiniteTreeOrder && !model_order_is_tree(m))
      continue;
    return m;
  }
  throw Error("random_model gave up after too many rejections");
}

namespace {

Verdict decide_slice(const Fptr& f, const SearchSpec& spec, int jobs, int slice) {
  Verdict v{Verdict::Outcome::HoldsWithinBound, std::nullopt, 0};
  std::uint64_t witness_ordinal = 0;
  enumerate_models(spec, [&](const Model& m, std::uint64_t ordinal) {
    if (jobs > 1 && static_cast<int>(ordinal % jobs) != slice) return true;
    ++v.models_checked;
    auto t = m.truth_set(f);
    for (int w = 0; w < m.size(); ++w) {
      bool hit = spec.mode == DecideMode::Validity ? !t[w] : t[w];
      if (hit) {
        v.outcome = Verdict::Outcome::WitnessFound;
        v.witness = {m, w};
        witness_ordinal = ordinal;
        return false;
      }
    }
    return true;
  });
  if (v.witness) v.models_checked = witness_ordinal;  // ordinal, for merging
  return v;
}

}  // namespace

Verdict bounded_decide(const Fptr& f, const SearchSpec& spec, int jobs) {
  if (jobs <= 1) {
    Verdict v{Verdict::Outcome::HoldsWithinBound, std::nullopt, 0};
    enumerate_models(spec, [&](const Model& m, std::uint64_t) {
      ++v.models_checked;
      auto t = m.truth_set(f);
      for (int w = 0; w < m.size(); ++w) {
        bool hit = spec.mode == DecideMode::Validity ? !t[w] : t[w];
        if (hit) {
          v.outcome = Verdict::Outcome::WitnessFound;
          v.witness = {m, w};
          return false;
        }
      }
      return true;
    });
    if (v.witness && !recheck(f, spec, *v.witness))
      throw Error("witness failed the eval re-check");
    return v;
  }
  // partitioned scan with a deterministic first-in-enumeration-order merge
  std::vector<Verdict> results(jobs);
  std::vector<std::thread> threads;
  for (int s = 0; s < jobs; ++s)
    threads.emplace_back(
        [&, s] { results[s] = decide_slice(f, spec, jobs, s); });
  for (auto& t : threads) t.join();
  Verdict best{Verdict::Outcome::HoldsWithinBound, std::nullopt, 0};
  std::uint64_t best_ord = UINT64_MAX;
  std::uint64_t checked = 0;
  for (const auto& r : results) {
    if (r.witness) {
      if (r.models_checked < best_ord) {
        best_ord = r.models_checked;
        best.outcome = Verdict::Outcome::WitnessFound;
        best.witness = r.witness;
      }
    } else {
      checked += r.models_checked;
    }
  }
  best.models_checked = best.witness ? best_ord : checked;
  if (best.witness && !recheck(f, spec, *best.witness))
    throw Error("witness failed the eval re-check");
  return best;
}

}  // namespace itl
