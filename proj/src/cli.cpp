#include "gpal/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"

#include "gpal/dynamics.hpp"
#include "gpal/formula.hpp"
#include "gpal/games.hpp"
#include "gpal/intervals.hpp"
#include "gpal/model_io.hpp"
#include "gpal/rewrite.hpp"

namespace gpal {

namespace {

// Input problems detected after argument parsing.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Formula parse_formula(const std::string& text) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw InputError(std::string("formula: ") + e.what());
  }
}

AnyModel load_model(const std::string& path) {
  try {
    return model_from_json(read_json_file(path));
  } catch (const ModelFormatError& e) {
    throw InputError(path + ": " + e.what());
  }
}

GameTree load_game(const std::string& path) {
  try {
    return GameTree(game_from_json(read_json_file(path)));
  } catch (const ModelFormatError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
}

void emit_model(const AnyModel& m, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write '" + path + "'");
  os << dump_model(m);
}

Locus locus_arg(const AnyModel& m, const std::string& at, const std::string& nbhd) {
  try {
    return parse_locus(m, at, nbhd);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("--at: ") + e.what());
  }
}

void require_fragment(const AnyModel& m, const Formula& f) {
  try {
    check_fragment(f, semantics_of(m));
  } catch (const UnsupportedOperator& e) {
    throw InputError(std::string("formula: ") + e.what());
  }
}

std::string world_list(const ProductModel& m, const WorldSet& ws) {
  std::string out = "{";
  bool first = true;
  for (auto c = ws.find_first(); c != WorldSet::npos; c = ws.find_next(c)) {
    if (!first) out += ", ";
    first = false;
    out += format_world(m, m.decode(c));
  }
  return out + "}";
}

std::string schema_text(AxiomId axiom) {
  const AxiomInstance inst = instantiate(axiom, Formula::atom("phi"), Formula::atom("psi"),
                                         Formula::atom("chi"), 1);
  return render(inst.lhs) + " <-> " + render(inst.rhs);
}

std::string arrow_sizes(const std::vector<std::size_t>& sizes) {
  std::ostringstream os;
  for (std::size_t k = 0; k < sizes.size(); ++k) os << (k ? " → " : "") << sizes[k];
  return os.str();
}

void render_report(std::ostream& out, const ValidityReport& r) {
  out << "axiom " << r.axiom.name() << ": " << schema_text(r.axiom) << "\n";
  out << "seed: " << r.seed << "\n";
  out << "models: " << r.models_checked << "\n";
  out << "pool: " << r.pool.size() << " formulas\n";
  out << "instances: " << r.instances_checked << "\n";
  out << "loci: " << r.loci_checked << "\n";
  out << "failing instances: " << r.failing_instances << "\n";
  if (r.minimal) {
    const Counterexample& c = *r.minimal;
    out << "minimal counterexample:\n";
    out << "  model: " << model_to_json(c.model).dump() << "\n";
    out << "  at: " << format_locus(c.model, c.at) << "\n";
    out << "  lhs: " << render(c.instance.lhs) << " = " << (c.lhs_value ? "true" : "false") << "\n";
    out << "  rhs: " << render(c.instance.rhs) << " = " << (c.rhs_value ? "true" : "false") << "\n";
    out << "  reverified: " << (reverify(c) ? "yes" : "no") << "\n";
  }
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("not an integer list: '" + s + "'");
    }
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Public announcement logic over topological, product and subset-space models", "gpal"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  std::string model_path, formula_text, at, nbhd, emit, semantics = "topo", strategy = "innermost", game_path;
  std::string muddy_list, axiom_arg, truncations = "2,10,1000";
  std::vector<std::string> announcements;
  int children = 3;
  std::size_t samples = 300;
  std::uint64_t seed = 0;
  bool trace = false;
  bool ancestor = false;

  auto* check = app.add_subcommand("check", "Evaluate a formula at a point, situation or world");
  check->add_option("--model", model_path, "Model file")->required();
  check->add_option("--at", at, "Point label, or comma-separated tuple for product models")->required();
  check->add_option("--nbhd", nbhd, "Comma-separated neighbourhood (subset-space models)");
  check->add_option("--formula", formula_text, "Formula")->required();

  auto* upd = app.add_subcommand("update", "Publicly announce a formula and show the updated model");
  upd->add_option("--model", model_path, "Model file")->required();
  upd->add_option("--formula", formula_text, "Announced formula")->required();
  upd->add_option("--emit", emit, "Write the updated model to this file");

  auto* red = app.add_subcommand("reduce", "Eliminate announcements with the reduction schemas");
  red->add_option("--semantics", semantics, "topo, ssl or product")->required();
  red->add_option("--formula", formula_text, "Formula")->required();
  red->add_option("--strategy", strategy, "innermost or outermost")->check(CLI::IsMember({"innermost", "outermost"}));
  red->add_flag("--trace", trace, "Print each schema application");

  auto* lim = app.add_subcommand("limit", "Iterate an announcement until the model stops changing");
  lim->add_option("--model", model_path, "Model file")->required();
  lim->add_option("--formula", formula_text, "Announced formula")->required();
  lim->add_option("--at", at, "Only repeat while the formula is true here");
  lim->add_option("--nbhd", nbhd, "Neighbourhood of --at (subset-space models)");
  lim->add_option("--emit", emit, "Write the final model to this file");

  auto* ck = app.add_subcommand("ck", "Common knowledge of a formula in a product model");
  ck->add_option("--model", model_path, "Product model file")->required();
  ck->add_option("--formula", formula_text, "Formula")->required();

  auto* muddy = app.add_subcommand("muddy", "Muddy children on product topologies");
  muddy->add_option("--children", children, "Number of children (1-6)")->required();
  muddy->add_option("--muddy", muddy_list, "Comma-separated muddy children, e.g. a,b")->required();
  muddy->add_flag("--trace", trace, "Print the surviving worlds of every round");

  auto* bi = app.add_subcommand("bi", "Backward induction as an announcement limit of rationality");
  bi->add_option("--game", game_path, "Game file")->required();
  bi->add_flag("--ancestor-closed", ancestor, "Use ancestor-closed opens for the printed topology size");

  auto* pers = app.add_subcommand("persistent", "Check persistence and announcement immunity in a subset-space model");
  pers->add_option("--model", model_path, "Subset-space model file")->required();
  pers->add_option("--formula", formula_text, "Formula")->required();
  pers->add_option("--announce", announcements, "Announcement to test immunity against (repeatable)");

  auto* ax = app.add_subcommand("axioms", "Check a reduction axiom on random models");
  ax->add_option("--semantics", semantics, "topo, ssl or product")->required();
  ax->add_option("--axiom", axiom_arg, "Axiom index or 'all'")->required();
  ax->add_option("--samples", samples, "Number of random models");
  ax->add_option("--seed", seed, "Random seed")->required();

  auto* iv = app.add_subcommand("example-intervals", "Interior of a limit versus limit of interiors on [-1, 1]");
  iv->add_option("--truncations", truncations, "Comma-separated finite stages");

  if (!args.empty() && !args.front().starts_with("-") && app.get_subcommand_no_throw(args.front()) == nullptr) {
    std::string names;
    for (const auto* sub : app.get_subcommands({})) names += (names.empty() ? "" : ", ") + sub->get_name();
    err << "error: unknown subcommand '" << args.front() << "' (expected one of " << names << ")\n";
    return kExitInput;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (check->parsed()) {
      const AnyModel m = load_model(model_path);
      const Formula f = parse_formula(formula_text);
      require_fragment(m, f);
      out << (holds_at(m, locus_arg(m, at, nbhd), f) ? "true" : "false") << "\n";
      return kExitOk;
    }

    if (upd->parsed()) {
      const AnyModel m = load_model(model_path);
      const Formula f = parse_formula(formula_text);
      require_fragment(m, f);
      const AnyModel next = update_any(m, f);
      out << "loci: " << model_size(m) << " -> " << model_size(next) << "\n";
      if (emit.empty())
        out << dump_model(next);
      else
        emit_model(next, emit);
      return kExitOk;
    }

    if (red->parsed()) {
      Semantics s;
      try {
        s = parse_semantics(semantics);
      } catch (const std::invalid_argument& e) {
        throw InputError(std::string("--semantics: ") + e.what());
      }
      const Formula f = parse_formula(formula_text);
      std::vector<RewriteStep> steps;
      Formula r = Formula::top();
      try {
        r = strategy == "outermost" ? reduce_outermost(f, s, &steps) : reduce(f, s, &steps);
      } catch (const UnsupportedOperator& e) {
        throw InputError(std::string("formula: ") + e.what());
      }
      if (trace) {
        for (const auto& st : steps) out << st.axiom.name() << ": " << render(st.before) << "  =>  " << render(st.after) << "\n";
      }
      out << render(r) << "\n";
      return kExitOk;
    }

    if (lim->parsed()) {
      const AnyModel m = load_model(model_path);
      const Formula f = parse_formula(formula_text);
      require_fragment(m, f);
      const LimitTrace t = at.empty() ? limit_model(m, f) : announce_while_true(m, locus_arg(m, at, nbhd), f);
      out << render_trace(t);
      if (!at.empty()) out << "tracked locus: " << format_locus(t.final_model, t.final_locus) << "\n";
      if (t.outcome == LimitOutcome::StabilizedNonempty)
        out << "holds everywhere in the final model: " << (t.holds_everywhere ? "yes" : "no") << "\n";
      if (!emit.empty()) emit_model(t.final_model, emit);
      return kExitOk;
    }

    if (ck->parsed()) {
      const AnyModel m = load_model(model_path);
      const auto* pm = std::get_if<ProductModel>(&m);
      if (!pm) throw InputError(model_path + ": common knowledge needs a product model");
      const Formula f = parse_formula(formula_text);
      require_fragment(m, f);
      const CommonKnowledge c = common_knowledge_extension(*pm, f);
      out << "common knowledge at " << c.worlds.count() << " of " << pm->worlds().count() << " worlds\n";
      out << world_list(*pm, c.worlds) << "\n";
      out << "iterations: " << c.iterations << "\n";
      return kExitOk;
    }

    if (muddy->parsed()) {
      if (children < 1 || children > kMaxChildren) throw InputError("--children must be between 1 and 6");
      std::vector<int> dirty;
      try {
        dirty = parse_children(muddy_list, children);
      } catch (const std::invalid_argument& e) {
        throw InputError(std::string("--muddy: ") + e.what());
      }
      if (dirty.empty()) throw InputError("--muddy: at least one child must be muddy");
      const MuddyRun r = run_muddy(children, dirty);
      const KripkeTrace k = kripke_oracle(children, dirty);
      out << render_muddy_summary(r) << "\n";
      if (trace) {
        for (std::size_t i = 0; i < r.rounds.size(); ++i) {
          out << "round " << i << ":";
          for (unsigned w : r.rounds[i]) {
            out << " ";
            for (int c = 0; c < children; ++c) out << ((w >> c) & 1u);
          }
          out << "\n";
        }
      }
      out << "unpointed ignorance limit: " << arrow_sizes(r.unpointed.sizes) << " ("
          << outcome_name(r.unpointed.outcome) << ")\n";
      std::vector<MaskSet> unpointed;
      for (const auto& st : r.unpointed.stages) {
        const auto& pm = std::get<ProductModel>(st);
        unpointed.push_back(to_masks(pm, pm.worlds()));
      }
      const bool agree = k.rounds == r.rounds && k.knows_after == r.knows_after && k.unpointed == unpointed;
      out << "partition oracle: " << (agree ? "agrees" : "DISAGREES") << "\n";
      return agree ? kExitOk : kExitViolation;
    }

    if (bi->parsed()) {
      const GameTree t = load_game(game_path);
      const BackwardInduction b = backward_induction(t);
      const GameLimit g = bi_via_announcements(t);
      out << "backward induction: " << format_payoff(b.value) << " via";
      for (int n : b.path) out << " n" << n;
      out << "\n";
      out << "rationality rounds: " << arrow_sizes(g.sizes) << "\n";
      out << "surviving leaves:";
      for (int leaf : g.leaves) out << " n" << leaf << " " << format_payoff(t.node(leaf).payoff);
      out << "\n";
      out << "generic: " << (g.generic ? "yes" : "no") << "\n";
      out << "matches backward induction: " << (g.matches_backward_induction ? "yes" : "no") << "\n";
      if (t.size() <= kMaxPoints) {
        const Topology top =
            tree_topology(t, ancestor ? TreeOrientation::AncestorClosed : TreeOrientation::DescendantClosed);
        out << "tree topology: " << top.opens().size() << " opens ("
            << (ancestor ? "ancestor-closed" : "descendant-closed") << ")\n";
      }
      return g.generic && !g.matches_backward_induction ? kExitViolation : kExitOk;
    }

    if (pers->parsed()) {
      const AnyModel m = load_model(model_path);
      const auto* sm = std::get_if<SSLModel>(&m);
      if (!sm) throw InputError(model_path + ": persistence needs a subset-space model");
      const Formula f = parse_formula(formula_text);
      require_fragment(m, f);
      std::vector<Formula> chis;
      for (const auto& a : announcements) {
        chis.push_back(parse_formula(a));
        require_fragment(m, chis.back());
      }
      if (auto w = is_persistent(*sm, f)) {
        out << "not persistent: " << format_situation(*sm, {w->point, w->larger}) << " satisfies " << render(f)
            << " but " << format_situation(*sm, {w->point, w->smaller}) << " does not\n";
        return kExitViolation;
      }
      out << "persistent\n";
      if (chis.empty()) return kExitOk;
      const ImmunityReport rep = persistence_immunity_check(*sm, f, chis);
      out << "immunity: " << rep.checked << " checks, " << rep.violations.size()
          << (rep.violations.size() == 1 ? " violation\n" : " violations\n");
      for (const auto& v : rep.violations)
        out << "  " << format_situation(*sm, v.at) << " after [!" << render(v.announcement) << "]\n";
      return rep.violations.empty() ? kExitOk : kExitViolation;
    }

    if (ax->parsed()) {
      Semantics s;
      try {
        s = parse_semantics(semantics);
      } catch (const std::invalid_argument& e) {
        throw InputError(std::string("--semantics: ") + e.what());
      }
      std::vector<int> indices;
      if (axiom_arg == "all") {
        for (int i = 1; i <= axiom_count(s); ++i) indices.push_back(i);
      } else {
        indices = parse_int_list(axiom_arg);
      }
      bool any_failure = false;
      for (std::size_t k = 0; k < indices.size(); ++k) {
        AxiomId id;
        try {
          id = AxiomId::make(s, indices[k]);
        } catch (const std::invalid_argument& e) {
          throw InputError(std::string("--axiom: ") + e.what());
        }
        const ValidityReport r = check_axiom(id, samples, seed);
        if (k) out << "\n";
        render_report(out, r);
        any_failure = any_failure || r.failing_instances > 0;
      }
      return any_failure ? kExitViolation : kExitOk;
    }

    if (iv->parsed()) {
      const std::vector<int> ns = parse_int_list(truncations);
      for (int n : ns)
        if (n < 1) throw InputError("--truncations: stages must be positive");
      out << render(interval_example(ns));
      return kExitOk;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace gpal
