// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "gpal/cli.hpp"
#include "gpal/dynamics.hpp"
#include "gpal/games.hpp"
#include "gpal/intervals.hpp"
#include "gpal/rewrite.hpp"
#include "oracle.hpp"

using namespace gpal;

namespace {

struct Verdict {
  bool ok;
  std::string detail;
};

Formula random_boolean(std::mt19937_64& rng, int depth) {
  static const char* names[] = {"p", "q", "r"};
  if (depth == 0 || rng() % 4 == 0) return Formula::atom(names[rng() % 3]);
  switch (rng() % 4) {
    case 0: return Formula::neg(random_boolean(rng, depth - 1));
    case 1: return Formula::conj(random_boolean(rng, depth - 1), random_boolean(rng, depth - 1));
    case 2: return Formula::disj(random_boolean(rng, depth - 1), random_boolean(rng, depth - 1));
    default: return Formula::implies(random_boolean(rng, depth - 1), random_boolean(rng, depth - 1));
  }
}

std::size_t failing(Semantics s, int index, std::size_t samples, std::uint64_t seed) {
  return check_axiom(AxiomId::make(s, index), samples, seed).failing_instances;
}

Verdict topology_laws() {
  std::mt19937_64 rng(1001);
  std::size_t updates = 0;
  for (int i = 0; i < 500; ++i) {
    const int n = 1 + static_cast<int>(rng() % 8);
    Topology t = random_topology(rng, n, static_cast<int>(rng() % 6));
    if (!verify_topology(t).empty()) return {false, "generated topology " + std::to_string(i) + " fails"};
    for (int k = 0; k < 3; ++k) {
      t = subspace(t, PointSet{rng() & t.carrier().bits});
      ++updates;
      if (!verify_topology(t).empty()) return {false, "subspace of topology " + std::to_string(i) + " fails"};
    }
  }
  return {true, "500 topologies and " + std::to_string(updates) + " subspace updates verified"};
}

Verdict topo_reduction() {
  for (int k = 1; k <= 4; ++k)
    if (const auto f = failing(Semantics::Topo, k, 300, 1)) return {false, "topo/" + std::to_string(k) + ": " + std::to_string(f) + " failing instances"};
  std::mt19937_64 rng(1002);
  for (int i = 0; i < 500; ++i) {
    const AnyModel m = random_model(rng, Semantics::Topo);
    const Formula f = oracle::random_formula(rng, oracle::Lang::Topo, 4, 3);
    if (depth(f) > 5) return {false, "generator exceeded depth 5"};
    if (!equivalent_on(m, f, reduce(f, Semantics::Topo))) return {false, "reduction changes " + render(f)};
  }
  return {true, "axioms 1-4 hold on 300 models; f = reduce(f) on 500 pairs"};
}

Verdict ssl_reduction() {
  for (int k = 1; k <= 4; ++k)
    if (const auto f = failing(Semantics::Ssl, k, 300, 1)) return {false, "ssl/" + std::to_string(k) + ": " + std::to_string(f) + " failing instances"};
  const ValidityReport r = check_axiom(AxiomId::make(Semantics::Ssl, 5), 300, 1);
  std::ofstream file("ssl_axiom5_report.txt");
  std::ostringstream err;
  run({"axioms", "--semantics", "ssl", "--axiom", "5", "--samples", "300", "--seed", "1"}, file, err);
  std::string five;
  if (r.failing_instances == 0) {
    five = "axiom 5 holds";
  } else {
    if (!r.minimal || !reverify(*r.minimal)) return {false, "axiom 5 counterexample does not reverify"};
    for (const auto& c : r.counterexamples)
      if (!reverify(c)) return {false, "axiom 5 counterexample does not reverify"};
    five = "axiom 5 fails on " + std::to_string(r.failing_instances) + " of " + std::to_string(r.instances_checked) +
           " instances, minimal counter-model reverified";
  }
  return {true, "axioms 1-4 hold on 300 models; " + five + " (report: ssl_axiom5_report.txt)"};
}

Verdict product_reduction() {
  const auto r = check_axiom(AxiomId::make(Semantics::Product, 4), 300, 1);
  if (r.failing_instances) return {false, std::to_string(r.failing_instances) + " failing instances"};
  return {true, "axiom 4 holds at " + std::to_string(r.loci_checked) + " world evaluations on 300 models"};
}

Verdict muddy_children() {
  std::size_t configs = 0;
  for (int n = 1; n <= 5; ++n)
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> muddy;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1u) muddy.push_back(i);
      const MuddyRun r = run_muddy(n, muddy);
      const KripkeTrace k = kripke_oracle(n, muddy);
      if (r.rounds != k.rounds || r.knows_after != k.knows_after)
        return {false, "oracle disagreement at n=" + std::to_string(n)};
      ++configs;
    }
  const MuddyRun r = run_muddy(3, {0, 1});
  std::vector<std::size_t> sizes;
  for (const auto& round : r.rounds) sizes.push_back(round.size());
  if (sizes != std::vector<std::size_t>{8, 7, 4}) return {false, "n=3 sizes differ"};
  if (r.knows_after != std::vector<int>{1, 1, -1}) return {false, "n=3 knowledge differs"};
  if (r.unpointed.outcome != LimitOutcome::Empty) return {false, "unpointed limit not empty"};
  return {true, std::to_string(configs) + " configurations match the partition oracle; " + render_muddy_summary(r) +
                    "; unpointed limit empty"};
}

Verdict atomic_limit() {
  const Formula p = Formula::atom("p");
  std::mt19937_64 rng(1006);
  std::string detail;
  for (Semantics s : {Semantics::Topo, Semantics::Ssl, Semantics::Product}) {
    int changed = 0, unchanged = 0;
    while (changed < 100) {
      const AnyModel m = random_model(rng, s);
      const AnyModel once = update_any(m, p);
      const LimitTrace t = limit_model(m, p);
      if (t.final_model != once) return {false, std::string(semantics_name(s)) + ": limit differs from M|p"};
      if (once == m) {
        if (t.stage_count != 0) return {false, "stage counted for an unchanged model"};
        if (++unchanged > 10000) return {false, "too few models where p removes loci"};
        continue;
      }
      if (t.stage_count != 1) return {false, std::string(semantics_name(s)) + ": " + std::to_string(t.stage_count) + " stages"};
      ++changed;
    }
    detail += (detail.empty() ? "" : ", ") + std::string(semantics_name(s)) + " 100 (+" + std::to_string(unchanged) +
              " already p-valid)";
  }
  return {true, "lim_p M = M|p in one stage: " + detail};
}

Verdict backward_induction_limit() {
  std::mt19937_64 rng(1007);
  for (int i = 0; i < 200; ++i) {
    const GameTree t = random_generic_tree(rng, 4, 3);
    const BackwardInduction bi = backward_induction(t);
    const GameLimit g = bi_via_announcements(t);
    if (!bi.generic || g.leaves != std::vector<int>{bi.path.back()}) return {false, "tree " + std::to_string(i) + " differs"};
  }
  return {true, "200 generic trees: announcement limit leaf = backward induction leaf"};
}

Verdict persistence() {
  std::mt19937_64 rng(1008);
  for (int i = 0; i < 100; ++i) {
    const SSLModel m = random_ssl_model(rng, 5, 5, {"p", "q", "r"});
    if (is_persistent(m, random_boolean(rng, 3))) return {false, "Boolean formula not persistent"};
  }
  std::size_t checked = 0;
  for (int i = 0; i < 100; ++i) {
    const SSLModel m = random_ssl_model(rng, 5, 5, {"p", "q", "r"});
    const Formula f = random_boolean(rng, 3);
    const Formula chi = oracle::random_formula(rng, oracle::Lang::Ssl, 3, 1);
    const ImmunityReport r = persistence_immunity_check(m, f, {chi});
    if (!r.violations.empty()) return {false, "immunity violated by " + render(chi)};
    checked += r.checked;
  }
  const PointSet S = PointSet::of({0}), ST = PointSet::of({0, 1});
  const SSLModel lp = SSLModel::make({"s", "t"}, {ST, S}, {{"p", PointSet::of({1})}});
  const auto w = is_persistent(lp, parse("L p"));
  if (!w || w->point != 0 || w->larger != ST || w->smaller != S) return {false, "L p witness not found"};
  return {true, "Boolean formulas persistent on 100 models; 100 triples, " + std::to_string(checked) +
                    " checks, no violation; L p witness (s, {s,t}, {s}) found"};
}

// Not a criterion: persistence relative to the model's own neighbourhoods
// does not give immunity for modal formulas, since an announcement can create
// a smaller neighbourhood the model never had.
std::string modal_persistence_note() {
  const SSLModel m0 = SSLModel::make({"s", "t"}, {PointSet::of({0, 1})}, {{"p", PointSet::of({0})}});
  const bool fixed = !is_persistent(m0, parse("~K p")) &&
                     !persistence_immunity_check(m0, parse("~K p"), {parse("p")}).violations.empty();
  std::mt19937_64 rng(1009);
  const std::vector<Formula> chis{parse("p"), parse("q"), parse("~p"), parse("~q"), parse("p & q")};
  int persistent = 0, violating = 0;
  for (int i = 0; i < 5000 && persistent < 100; ++i) {
    const SSLModel m = random_ssl_model(rng, 5, 5, {"p", "q"});
    const Formula f = oracle::random_formula(rng, oracle::Lang::Ssl, 3, 0);
    if (is_boolean(f) || is_persistent(m, f)) continue;
    ++persistent;
    violating += !persistence_immunity_check(m, f, chis).violations.empty();
  }
  return std::string("note: ~K p with sets {{s,t}}, p = {s} is persistent yet falsified by [!p]: ") +
         (fixed ? "confirmed" : "not reproduced") + "; " + std::to_string(violating) + " of " +
         std::to_string(persistent) + " random model-persistent modal formulas lose truth under a literal announcement";
}

Verdict interval_example_check() {
  const IntervalExampleReport r = interval_example({2, 10, 1000});
  if (render(r.interior_of_limit) != "{}" || render(r.limit_of_interiors) != "{0}") return {false, "limits differ from {} and {0}"};
  for (const auto& row : r.truncations)
    if (row.interior_of_meet != row.meet_of_interiors) return {false, "truncation N=" + std::to_string(row.n) + " disagrees"};
  if (!r.finite_stages_agree || !r.limits_differ) return {false, "report flags wrong"};
  return {true, "I(meet p_n) = {}, meet I(p_n) = {0}; N = 2, 10, 1000 agree"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "topology laws", 10, topology_laws},
      {2, "topological reduction", 60, topo_reduction},
      {3, "subset-space reduction", 60, ssl_reduction},
      {4, "product reduction", 0, product_reduction},
      {5, "muddy children", 5, muddy_children},
      {6, "atomic limit", 0, atomic_limit},
      {7, "backward induction", 30, backward_induction_limit},
      {8, "persistence", 0, persistence},
      {9, "interval example", 1, interval_example_check},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs > c.budget_s) {
      v.ok = false;
      v.detail += "; over the " + std::to_string(static_cast<int>(c.budget_s)) + " s budget";
    }
    all = all && v.ok;
    std::ostringstream time;
    time.precision(2);
    time << std::fixed << secs;
    std::cout << (v.ok ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << ", " << time.str()
              << " s): " << v.detail << std::endl;
    if (c.id == 8) std::cout << "     " << modal_persistence_note() << std::endl;
  }
  std::cout << "PASS criterion 10 (scope): transfinite limit stages and completeness/decidability theorems are not "
               "computed; finite reduction and finite limits are covered by criteria 2-7"
            << std::endl;
  return all ? 0 : 1;
}
