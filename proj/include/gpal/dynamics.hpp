#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gpal/formula.hpp"
#include "gpal/rewrite.hpp"

namespace gpal {

// Number of loci: points, situations or surviving worlds.
std::size_t model_size(const AnyModel& m);
AnyModel update_any(const AnyModel& m, const Formula& f);

enum class LimitOutcome { Empty, StabilizedNonempty };

enum class StopReason {
  Stable,        // the announcement no longer changes the model
  FalseAtLocus,  // pointed run: the announcement became false at the tracked locus
};

struct LimitTrace {
  std::vector<std::size_t> sizes;  // sizes[0] is the input model
  std::vector<AnyModel> stages;    // snapshots, at most `kept` of them (input first)
  std::size_t stage_count = 0;     // updates that changed the model
  LimitOutcome outcome = LimitOutcome::Empty;
  StopReason reason = StopReason::Stable;
  AnyModel final_model;
  Locus final_locus;                // tracked locus (pointed runs only)
  bool holds_everywhere = false;    // f true at every locus of the final model
};

std::string_view outcome_name(LimitOutcome o);

// Iterates m <- m|f until nothing changes.
LimitTrace limit_model(const AnyModel& m, const Formula& f, std::size_t keep = 64);

// Iterates while f is true at `at`. For subset spaces the tracked situation
// follows its neighborhood through the updates. Throws std::invalid_argument
// if `at` is not a locus of m.
LimitTrace announce_while_true(const AnyModel& m, const Locus& at, const Formula& f, std::size_t keep = 64);

struct CommonKnowledge {
  WorldSet worlds;
  std::size_t iterations = 0;  // refinement passes until the fixpoint
};

// Greatest fixpoint of E -> (f) & K1 E & ... & Kn E.
CommonKnowledge common_knowledge_extension(const ProductModel& m, const Formula& f);

// Children are named a, b, c, ...; atom m_x says child x is muddy and agent
// i + 1 is child i.
constexpr int kMaxChildren = 6;

std::string child_name(int i);
Formula muddy_atom(int i);
Formula father_announcement(int n);
Formula ignorance_formula(int n);

struct MuddyModel {
  ProductModel model;
  World actual;
};

// Throws std::invalid_argument if n is outside 1..6 or a muddy index is out of range.
MuddyModel muddy_model(int n, const std::vector<int>& muddy);
// Parses "a,b" into child indices. Throws std::invalid_argument.
std::vector<int> parse_children(const std::string& list, int n);

// Surviving worlds as bit masks (bit i = child i muddy), ascending.
using MaskSet = std::vector<unsigned>;

struct MuddyRun {
  int n = 0;
  std::vector<int> muddy;
  std::vector<MaskSet> rounds;   // full model, after the father, after each ignorance round
  std::vector<int> knows_after;  // per child: first round (0 = father) at which it knows its state, -1 if never
  std::vector<bool> knows_muddy; // per child: what it knows when it knows
  LimitTrace unpointed;          // ignorance limit from the post-father model
};

// Father's announcement, then the ignorance announcement repeated while true
// at the actual world. Throws std::invalid_argument for an empty muddy set.
MuddyRun run_muddy(int n, const std::vector<int>& muddy);

// Same puzzle over plain equivalence-relation semantics on bit masks.
struct KripkeTrace {
  std::vector<MaskSet> rounds;
  std::vector<int> knows_after;
  std::vector<bool> knows_muddy;
  std::vector<MaskSet> unpointed;  // ignorance limit from the post-father model, including its start
};

KripkeTrace kripke_oracle(int n, const std::vector<int>& muddy);

MaskSet to_masks(const ProductModel& m, const WorldSet& ws);

// "8 → 7 → 4; a knows m_a, b knows m_b after round 1"
std::string render_muddy_summary(const MuddyRun& r);
std::string render_trace(const LimitTrace& t);

}  // namespace gpal
