#include "itl/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "itl/bignat.hpp"
#include "itl/condense.hpp"
#include "itl/families.hpp"
#include "itl/io.hpp"
#include "itl/oracle.hpp"
#include "itl/parser.hpp"
#include "itl/strat.hpp"
#include "itl/symline.hpp"

namespace itl {

namespace {

int env_guard() {
  const char* g = std::getenv("ITL_SIZE_GUARD");
  if (!g) return 0;
  return std::atoi(g);
}

Model load_model(const std::string& path) {
  if (path == "-") return parse_model_text(std::cin);
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return parse_model_text(in);
}

struct Ctx {
  std::ostream& out;
  std::ostream& err;
  bool machine = false;
  int rc = 0;
};

void cmd_check(Ctx& c, const std::string& model, const std::string& world,
               const std::string& formula) {
  Model m = load_model(model);
  Fptr f = parse(formula);
  int w = m.index(world);
  if (w < 0) throw InputError("unknown world id " + world);
  ClassReport rep = m.validate();
  if (!rep.model_ok())
    throw InputError("model violates " + rep.violations.front().check);
  bool v = m.eval(w, f);
  if (c.machine)
    c.out << "result=" << (v ? "true" : "false") << "\n";
  else
    c.out << (v ? "true" : "false") << "\n";
  c.rc = v ? 0 : 1;
}

void cmd_classify(Ctx& c, const std::string& model) {
  Model m = load_model(model);
  ClassReport r = m.validate();
  auto b = [](bool v) { return v ? "true" : "false"; };
  c.out << "poset=" << b(r.is_poset) << "\n";
  c.out << "monotone=" << b(r.is_monotone) << "\n";
  c.out << "forward_confluent=" << b(r.is_forward_confluent) << "\n";
  c.out << "backward_confluent=" << b(r.is_backward_confluent) << "\n";
  c.out << "persistent=" << b(r.is_persistent) << "\n";
  c.out << "here_and_there=" << b(r.is_here_and_there) << "\n";
  for (const auto& v : r.violations) {
    c.out << "violation=" << v.check;
    for (const auto& w : v.witness) c.out << " " << w;
    c.out << "\n";
  }
  c.rc = r.model_ok() ? 0 : 1;
}

void cmd_decide(Ctx& c, const std::string& formula, const std::string& mode,
                int max_worlds, const std::string& atoms_csv,
                const std::string& cls, int jobs, bool witness_only) {
  Fptr f = parse(formula);
  SearchSpec spec;
  spec.max_worlds = max_worlds;
  spec.cls = class_from_name(cls);
  spec.guard_override = env_guard();
  if (mode == "validity")
    spec.mode = DecideMode::Validity;
  else if (mode == "satisfiability" || mode == "sat")
    spec.mode = DecideMode::Satisfiability;
  else
    throw InputError("mode must be validity or satisfiability");
  std::stringstream as(atoms_csv);
  std::string a;
  while (std::getline(as, a, ','))
    if (!a.empty()) spec.atoms.push_back(a);
  Verdict v = bounded_decide(f, spec, jobs);
  if (v.outcome == Verdict::Outcome::HoldsWithinBound) {
    c.out << "outcome=holds_within_bound\n";
    c.out << "models_checked=" << v.models_checked << "\n";
    c.rc = 0;
    return;
  }
  c.rc = 1;
  if (witness_only) {
    write_model_text(c.out, v.witness->first);
    return;
  }
  c.out << "outcome=witness_found\n";
  c.out << "witness_world=" << v.witness->first.name(v.witness->second) << "\n";
  c.out << "model:\n";
  write_model_text(c.out, v.witness->first);
}

void cmd_bisim(Ctx& c, const std::string& m1p, const std::string& m2p,
               const std::string& flavor, const std::string& check_file,
               int max_levels, int horizon_mult) {
  Model m1 = load_model(m1p);
  Model m2 = load_model(m2p);
  if (!check_file.empty()) {
    std::ifstream in(check_file);
    if (!in) throw InputError("cannot open " + check_file);
    BisimFamily fam = parse_family_text(in, m1, m2);
    if (!flavor.empty()) fam.flavor = flavor_from_name(flavor);
    FamilyReport r = check_family(m1, m2, fam, horizon_mult);
    c.out << "accepted=" << (r.ok ? "true" : "false") << "\n";
    for (const auto& v : r.violations) c.out << "violation=" << v << "\n";
    c.rc = r.ok ? 0 : 1;
    return;
  }
  BisimFamily fam =
      max_family(m1, m2, max_levels, flavor_from_name(flavor), horizon_mult);
  write_family_text(c.out, m1, m2, fam);
}

void cmd_gen(Ctx& c, const std::string& name, int n, bool family) {
  if (family) {
    CanonicalFamily cf = canonical_family(name, n);
    Model m = builtin_model(name, n);
    write_family_text(c.out, m, m, cf.family);
    return;
  }
  write_model_text(c.out, builtin_model(name, n));
}

void cmd_translate(Ctx& c, const std::string& formula, const std::string& target) {
  Fptr f = parse(formula);
  Fragment frag = target == "boxu"    ? Fragment::BoxU
                  : target == "diamr" ? Fragment::DiamR
                                      : throw InputError("target must be boxu or diamr");
  c.out << render(translate(f, frag)) << "\n";
}

void cmd_bounds(Ctx& c, const std::vector<int>& e, const std::vector<int>& q,
                int fmp) {
  if (!e.empty()) {
    c.out << e_number(e[0], e[1]).to_string() << "\n";
  } else if (!q.empty()) {
    c.out << q_number(q[0], q[1]).to_string() << "\n";
  } else if (fmp >= 0) {
    c.out << fmp_bound(fmp).to_string() << "\n";
  } else {
    throw InputError("bounds needs --e, --q or --fmp");
  }
}

void cmd_condense(Ctx& c, const std::string& tree_file, const std::string& point) {
  std::optional<int> pt;
  LabelledTree t = [&] {
    if (tree_file == "-") return parse_tree_text(std::cin, &pt);
    std::ifstream in(tree_file);
    if (!in) throw InputError("cannot open " + tree_file);
    return parse_tree_text(in, &pt);
  }();
  if (!point.empty()) {
    bool found = false;
    for (int i = 0; i < t.p.size(); ++i)
      if (t.p.node_names[i] == point) {
        pt = i;
        found = true;
      }
    if (!found) throw InputError("unknown node " + point);
  }
  CondenseResult r = condense(t, pt);
  SimReport chk = check_condensation(r.maps.rho, r.maps.iota, t.p, r.tree.p);
  if (!chk.ok) throw Error("internal: condensation maps failed verification");
  c.out << "input_size=" << t.p.size() << "\n";
  c.out << "output_size=" << r.tree.p.size() << "\n";
  write_tree_text(c.out, r.tree, r.point);
}

void cmd_stratify(Ctx& c, const std::string& model, const std::string& world,
                  const std::string& formula, int rounds, int horizon) {
  Model m = load_model(model);
  int w = m.index(world);
  if (w < 0) throw InputError("unknown world id " + world);
  std::vector<Fptr> sigma = closure(parse(formula));
  StratifyResult r = stratify_bounded(m, w, sigma, rounds, horizon);
  c.out << "fired=" << r.state.fired << "\n";
  c.out << "complete=" << (r.state.complete ? "true" : "false") << "\n";
  c.out << "pending=" << r.state.pending << "\n";
  for (int v = 0; v < r.truncation.size(); ++v)
    c.out << "h " << r.truncation.names[v] << " " << m.name(r.h[v]) << "\n";
  write_stratified_text(c.out, r.truncation);
}

void cmd_line(Ctx& c, const std::string& formula, const std::string& world,
              bool truth_set, bool free_atoms) {
  Fptr f = parse(formula);
  if (truth_set) {
    c.out << line_truth_set(f, free_atoms).to_string() << "\n";
    return;
  }
  bool root = world == "r";
  std::int64_t n = 0;
  if (!root) {
    try {
      n = std::stoll(world);
    } catch (...) {
      throw InputError("line world must be r or an integer");
    }
  }
  bool v = line_eval(root, n, f, free_atoms);
  if (c.machine)
    c.out << "result=" << (v ? "true" : "false") << "\n";
  else
    c.out << (v ? "true" : "false") << "\n";
  c.rc = v ? 0 : 1;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"verification workbench for intuitionistic linear temporal logic"};
  app.require_subcommand(1);
  Ctx ctx{out, err};
  std::string format = "plain";
  app.add_option("--format", format)->check(CLI::IsMember({"plain", "machine"}));

  std::string model, world, formula, target, m1p, m2p, flavor, check_file,
      name, tree_file, point, cls = "all", mode = "validity", line_world;
  int n = -1, max_worlds = 3, jobs = 1, max_levels = 3, horizon_mult = 1,
      rounds = 50, horizon = 2, fmp = -1;
  bool family = false, witness_only = false, truth_set = false,
       free_atoms = false;
  std::vector<int> eargs, qargs;
  std::string atoms_csv = "p,q";

  auto* check = app.add_subcommand("check", "evaluate a formula at a world");
  check->add_option("--model", model)->required();
  check->add_option("--world", world)->required();
  check->add_option("--formula", formula)->required();

  auto* classify = app.add_subcommand("classify", "validate and classify a model");
  classify->add_option("model", model)->required();

  auto* decide = app.add_subcommand("decide", "bounded validity/satisfiability");
  decide->add_option("--formula", formula)->required();
  decide->add_option("--mode", mode);
  decide->add_option("--max-worlds", max_worlds);
  decide->add_option("--atoms", atoms_csv);
  decide->add_option("--class", cls);
  decide->add_option("--jobs", jobs);
  decide->add_flag("--witness-model-only", witness_only);

  auto* bisim = app.add_subcommand("bisim", "bounded bisimulation families");
  bisim->add_option("--m1", m1p)->required();
  bisim->add_option("--m2", m2p)->required();
  bisim->add_option("--flavor", flavor);
  bisim->add_option("--check", check_file);
  bisim->add_option("--max-levels", max_levels);
  bisim->add_option("--horizon-mult", horizon_mult);

  auto* gen = app.add_subcommand("gen", "emit a builtin model or family");
  gen->add_option("--name", name)->required();
  gen->add_option("--n", n);
  gen->add_flag("--family", family);

  auto* translate = app.add_subcommand("translate", "rewrite into boxu/diamr");
  translate->add_option("--formula", formula)->required();
  translate->add_option("--target", target)->required();

  auto* bounds = app.add_subcommand("bounds", "E/Q recurrences and the model bound");
  bounds->add_option("--e", eargs)->expected(2);
  bounds->add_option("--q", qargs)->expected(2);
  bounds->add_option("--fmp", fmp);

  auto* condense_cmd = app.add_subcommand("condense", "normalize a labelled tree");
  condense_cmd->add_option("--tree", tree_file)->required();
  condense_cmd->add_option("--point", point);

  auto* stratify = app.add_subcommand("stratify", "bounded defect-repair strata");
  stratify->add_option("--model", model)->required();
  stratify->add_option("--world", world)->required();
  stratify->add_option("--formula", formula)->required();
  stratify->add_option("--rounds", rounds);
  stratify->add_option("--horizon", horizon);

  auto* line = app.add_subcommand("line", "the integer-line persistent model");
  line->add_option("--formula", formula)->required();
  line->add_option("--world", line_world);
  line->add_flag("--truth-set", truth_set);
  line->add_flag("--free-atoms-false", free_atoms);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
    ctx.machine = format == "machine";
    if (*check) cmd_check(ctx, model, world, formula);
    if (*classify) cmd_classify(ctx, model);
    if (*decide)
      cmd_decide(ctx, formula, mode, max_worlds, atoms_csv, cls, jobs,
                 witness_only);
    if (*bisim) cmd_bisim(ctx, m1p, m2p, flavor, check_file, max_levels,
                          horizon_mult);
    if (*gen) cmd_gen(ctx, name, n, family);
    if (*translate) cmd_translate(ctx, formula, target);
    if (*bounds) cmd_bounds(ctx, eargs, qargs, fmp);
    if (*condense_cmd) cmd_condense(ctx, tree_file, point);
    if (*stratify) cmd_stratify(ctx, model, world, formula, rounds, horizon);
    if (*line) cmd_line(ctx, formula, line_world, truth_set, free_atoms);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const CostGuardError& e) {
    err << "cost guard: " << e.what() << " (override with ITL_SIZE_GUARD)\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return ctx.rc;
}

}  // namespace itl
