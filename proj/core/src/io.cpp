#include "itl/io.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace itl {

namespace {

struct Line {
  std::string verb;
  std::vector<std::string> args;
  int number;
};

std::vector<Line> read_lines(std::istream& in) {
  std::vector<Line> out;
  std::string raw;
  int no = 0;
  while (std::getline(in, raw)) {
    ++no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line l;
    l.number = no;
    if (!(ls >> l.verb)) continue;
    std::string tok;
    while (ls >> tok) l.args.push_back(tok);
    out.push_back(std::move(l));
  }
  return out;
}

[[noreturn]] void fail(const Line& l, const std::string& msg) {
  throw InputError("line " + std::to_string(l.number) + ": " + msg);
}

struct ModelBuilder {
  std::vector<std::string> names;
  std::map<std::string, int> idx;
  std::vector<std::vector<std::string>> val;
  std::vector<std::pair<int, int>> edges;
  std::map<int, int> succ;
  std::map<int, int> stratum;                  // extension
  std::optional<std::pair<int, int>> loop;     // extension
  std::map<int, int> loop_map;                 // extension

  int world(const Line& l, const std::string& n) {
    auto it = idx.find(n);
    if (it == idx.end()) fail(l, "unknown world " + n);
    return it->second;
  }

  void feed(const Line& l, bool stratified) {
    if (l.verb == "world") {
      if (l.args.empty()) fail(l, "world needs an id");
      if (idx.count(l.args[0])) fail(l, "duplicate world " + l.args[0]);
      idx[l.args[0]] = static_cast<int>(names.size());
      names.push_back(l.args[0]);
      val.emplace_back(l.args.begin() + 1, l.args.end());
    } else if (l.verb == "le") {
      if (l.args.size() != 2) fail(l, "le needs two world ids");
      edges.emplace_back(world(l, l.args[0]), world(l, l.args[1]));
    } else if (l.verb == "succ") {
      if (l.args.size() != 2) fail(l, "succ needs two world ids");
      int a = world(l, l.args[0]);
      if (succ.count(a)) fail(l, "duplicate succ for " + l.args[0]);
      succ[a] = world(l, l.args[1]);
    } else if (stratified && l.verb == "stratum") {
      if (l.args.size() != 2) fail(l, "stratum needs an index and a world id");
      stratum[world(l, l.args[1])] = std::stoi(l.args[0]);
    } else if (stratified && l.verb == "loop") {
      if (l.args.size() != 2) fail(l, "loop needs two indices");
      loop = {std::stoi(l.args[0]), std::stoi(l.args[1])};
    } else if (stratified && l.verb == "map") {
      if (l.args.size() != 2) fail(l, "map needs two world ids");
      loop_map[world(l, l.args[0])] = world(l, l.args[1]);
    } else {
      fail(l, "unknown directive " + l.verb);
    }
  }
};

}  // namespace

Model parse_model_text(std::istream& in) {
  ModelBuilder b;
  for (const auto& l : read_lines(in)) b.feed(l, false);
  if (b.names.empty()) throw InputError("model has no worlds");
  std::vector<int> succ(b.names.size(), -1);
  for (auto [w, t] : b.succ) succ[w] = t;
  for (std::size_t w = 0; w < succ.size(); ++w)
    if (succ[w] < 0)
      throw InputError("partial succ: missing successor of " + b.names[w]);
  return Model::make(b.names, b.edges, succ, b.val);
}

void write_model_text(std::ostream& out, const Model& m) {
  for (int w = 0; w < m.size(); ++w) {
    out << "world " << m.name(w);
    for (const auto& a : m.val(w)) out << " " << a;
    out << "\n";
  }
  for (auto [a, b] : m.reduction_edges())
    out << "le " << m.name(a) << " " << m.name(b) << "\n";
  for (int w = 0; w < m.size(); ++w)
    out << "succ " << m.name(w) << " " << m.name(m.succ(w)) << "\n";
}

StratifiedModel parse_stratified_text(std::istream& in) {
  ModelBuilder b;
  for (const auto& l : read_lines(in)) b.feed(l, true);
  if (b.names.empty()) throw InputError("stratified model has no worlds");
  const int n = static_cast<int>(b.names.size());
  int nstrata = 0;
  for (auto [w, s] : b.stratum) nstrata = std::max(nstrata, s + 1);
  std::vector<std::vector<int>> strata(nstrata);
  for (int w = 0; w < n; ++w) {
    auto it = b.stratum.find(w);
    if (it == b.stratum.end())
      throw InputError("world " + b.names[w] + " has no stratum");
    if (it->second < 0) throw InputError("negative stratum index");
    strata[it->second].push_back(w);
  }
  std::optional<int> loop_a;
  if (b.loop) {
    if (b.loop->second != nstrata)
      throw InputError("loop b must equal the number of strata");
    loop_a = b.loop->first;
  }
  std::vector<int> step(n, -1);
  for (auto [w, t] : b.succ) step[w] = t;
  for (auto [w, t] : b.loop_map) {
    if (step[w] >= 0) throw InputError("both succ and map given for " + b.names[w]);
    step[w] = t;
  }
  // intra-stratum order comes from the le edges, as tree parents
  std::vector<int> parent(n, -1);
  {
    // close the edges per stratum, then take the maximal strict predecessor
    std::vector<std::vector<int>> adj(n);
    for (auto [a, c] : b.edges) adj[a].push_back(c);
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (int w = 0; w < n; ++w) {
      std::vector<int> st{w};
      le[w][w] = true;
      while (!st.empty()) {
        int x = st.back();
        st.pop_back();
        for (int y : adj[x])
          if (!le[w][y]) {
            le[w][y] = true;
            st.push_back(y);
          }
      }
    }
    for (int w = 0; w < n; ++w) {
      int best = -1;
      for (int v = 0; v < n; ++v) {
        if (v == w || !le[v][w]) continue;
        if (best < 0 || le[best][v]) best = v;
      }
      parent[w] = best;
    }
  }
  return StratifiedModel::make(b.names, b.val, strata, parent, step, loop_a);
}

void write_stratified_text(std::ostream& out, const StratifiedModel& s) {
  for (int w = 0; w < s.size(); ++w) {
    out << "world " << s.names[w];
    for (const auto& a : s.val[w]) out << " " << a;
    out << "\n";
  }
  for (int i = 0; i < s.strata_count(); ++i)
    for (int w : s.strata[i]) out << "stratum " << i << " " << s.names[w] << "\n";
  for (int w = 0; w < s.size(); ++w)
    if (s.parent[w] >= 0)
      out << "le " << s.names[s.parent[w]] << " " << s.names[w] << "\n";
  const int b = s.strata_count();
  for (int i = 0; i + 1 < b; ++i)
    for (int w : s.strata[i])
      out << "succ " << s.names[w] << " " << s.names[s.step[w]] << "\n";
  if (s.loop_a) {
    out << "loop " << *s.loop_a << " " << b << "\n";
    for (int w : s.strata[b - 1])
      out << "map " << s.names[w] << " " << s.names[s.step[w]] << "\n";
  }
}

BisimFamily parse_family_text(std::istream& in, const Model& m1, const Model& m2) {
  BisimFamily fam;
  std::map<int, std::vector<std::pair<int, int>>> levels;
  bool have_flavor = false;
  for (const auto& l : read_lines(in)) {
    if (l.verb == "flavor") {
      if (l.args.size() != 1) fail(l, "flavor needs a name");
      fam.flavor = flavor_from_name(l.args[0]);
      have_flavor = true;
    } else if (l.verb == "level") {
      if (l.args.empty()) fail(l, "level needs an index");
      std::string first = l.args[0];
      if (!first.empty() && first.back() == ':') first.pop_back();
      int idx = std::stoi(first);
      for (std::size_t i = 1; i < l.args.size(); ++i) {
        std::string pair = l.args[i];
        if (pair.size() < 5 || pair.front() != '(' || pair.back() != ')')
          fail(l, "pairs look like (w,v)");
        auto comma = pair.find(',');
        if (comma == std::string::npos) fail(l, "pairs look like (w,v)");
        std::string a = pair.substr(1, comma - 1);
        std::string b = pair.substr(comma + 1, pair.size() - comma - 2);
        int wa = m1.index(a), wb = m2.index(b);
        if (wa < 0) fail(l, "unknown world " + a);
        if (wb < 0) fail(l, "unknown world " + b);
        levels[idx].emplace_back(wa, wb);
      }
    } else {
      fail(l, "unknown directive " + l.verb);
    }
  }
  if (!have_flavor) throw InputError("family file needs a flavor line");
  int top = -1;
  for (auto& [i, _] : levels) top = std::max(top, i);
  for (int i = 0; i <= top; ++i) fam.levels.push_back(levels[i]);
  return fam;
}

void write_family_text(std::ostream& out, const Model& m1, const Model& m2,
                       const BisimFamily& fam) {
  out << "flavor " << flavor_name(fam.flavor) << "\n";
  for (std::size_t i = 0; i < fam.levels.size(); ++i) {
    out << "level " << i << ":";
    for (auto [a, b] : fam.levels[i])
      out << " (" << m1.name(a) << "," << m2.name(b) << ")";
    out << "\n";
  }
}

LabelledTree parse_tree_text(std::istream& in, std::optional<int>* point) {
  std::vector<std::string> names;
  std::map<std::string, int> idx;
  std::vector<std::vector<std::string>> labels;
  std::vector<std::pair<int, int>> edges;
  std::optional<int> pt;
  for (const auto& l : read_lines(in)) {
    if (l.verb == "node") {
      if (l.args.empty()) fail(l, "node needs an id");
      if (idx.count(l.args[0])) fail(l, "duplicate node " + l.args[0]);
      idx[l.args[0]] = static_cast<int>(names.size());
      names.push_back(l.args[0]);
      labels.emplace_back(l.args.begin() + 1, l.args.end());
    } else if (l.verb == "edge") {
      if (l.args.size() != 2) fail(l, "edge needs two node ids");
      auto a = idx.find(l.args[0]), b = idx.find(l.args[1]);
      if (a == idx.end() || b == idx.end()) fail(l, "unknown node in edge");
      edges.emplace_back(a->second, b->second);
    } else if (l.verb == "point") {
      if (l.args.size() != 1) fail(l, "point needs a node id");
      auto a = idx.find(l.args[0]);
      if (a == idx.end()) fail(l, "unknown node in point");
      pt = a->second;
    } else {
      fail(l, "unknown directive " + l.verb);
    }
  }
  if (point) *point = pt;
  return LabelledTree::make(LabelledPoset::make(names, labels, edges));
}

void write_tree_text(std::ostream& out, const LabelledTree& t,
                     std::optional<int> point) {
  for (int i = 0; i < t.p.size(); ++i) {
    out << "node " << t.p.node_names[i];
    for (const auto& tok : t.p.labels[i]) out << " " << tok;
    out << "\n";
  }
  for (int i = 0; i < t.p.size(); ++i)
    for (int c : t.p.tree_children(i))
      out << "edge " << t.p.node_names[i] << " " << t.p.node_names[c] << "\n";
  if (point) out << "point " << t.p.node_names[*point] << "\n";
}

}  // namespace itl
