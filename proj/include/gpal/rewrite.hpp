#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gpal/formula.hpp"
#include "gpal/product.hpp"
#include "gpal/sslmodel.hpp"
#include "gpal/topomodel.hpp"

namespace gpal {

enum class Semantics { Topo, Ssl, Product };

std::string_view semantics_name(Semantics s);
// Accepts "topo", "ssl", "product". Throws std::invalid_argument.
Semantics parse_semantics(std::string_view name);

// Reduction axiom identifier: topo 1-4, ssl 1-5, product 1-4. Index 1 is the
// atomic schema, 2 negation, 3 conjunction, 4 the knowledge/interior modality,
// 5 (ssl only) the effort modality.
struct AxiomId {
  Semantics semantics;
  int index;

  // Throws std::invalid_argument if the index is out of range for the semantics.
  static AxiomId make(Semantics s, int index);
  std::string name() const;
  friend bool operator==(const AxiomId&, const AxiomId&) = default;
};

int axiom_count(Semantics s);

// One application of a reduction schema: `before` is [phi]psi, `after` its
// right-hand side (announcements in it may still be unreduced).
struct RewriteStep {
  AxiomId axiom{Semantics::Topo, 1};
  Formula before;
  Formula after;
};

// Throws UnsupportedOperator if f uses a modality outside the semantics.
void check_fragment(const Formula& f, Semantics s);

// Announcement elimination, innermost first. Dual modalities, Or and Implies
// inside announcement bodies are first rewritten to ~M~, ~(~a & ~b) and
// ~(a & ~b). Applied steps are appended to `trace` when given.
Formula reduce(const Formula& f, Semantics s, std::vector<RewriteStep>* trace = nullptr);

// Same schemas, always rewriting the outermost redex.
Formula reduce_outermost(const Formula& f, Semantics s, std::vector<RewriteStep>* trace = nullptr);

// Both sides of the schema instance.
struct AxiomInstance {
  Formula lhs;
  Formula rhs;
};

AxiomInstance instantiate(AxiomId axiom, const Formula& phi, const Formula& psi,
                          const std::optional<Formula>& chi = std::nullopt, int agent = 1);

using AnyModel = std::variant<TopoModel, SSLModel, ProductModel>;
using Locus = std::variant<int, Situation, World>;

Semantics semantics_of(const AnyModel& m);
std::vector<Locus> loci(const AnyModel& m);
// Truth value at each locus of loci(m), same order.
std::vector<bool> truth_table(const AnyModel& m, const Formula& f);
bool holds_at(const AnyModel& m, const Locus& at, const Formula& f);
std::string format_locus(const AnyModel& m, const Locus& at);

struct Equivalence {
  bool equivalent = true;
  std::optional<Locus> witness;  // first locus where f and g differ
  explicit operator bool() const { return equivalent; }
};

Equivalence equivalent_on(const AnyModel& m, const Formula& f, const Formula& g);

struct Counterexample {
  AnyModel model;
  Locus at;
  AxiomInstance instance;
  bool lhs_value = false;
  bool rhs_value = false;
};

// True if the two sides really disagree at the recorded locus.
bool reverify(const Counterexample& c);

struct ValidityReport {
  AxiomId axiom{Semantics::Topo, 1};
  std::uint64_t seed = 0;
  std::size_t models_checked = 0;
  std::size_t instances_checked = 0;
  std::size_t loci_checked = 0;
  std::size_t failing_instances = 0;
  std::vector<Counterexample> counterexamples;  // capped sample
  std::optional<Counterexample> minimal;        // shrunk from the first counterexample
  std::vector<Formula> pool;
};

// Instantiation pool used by check_axiom for the given semantics and number
// of agents: atoms p, q; their negations; one Boolean layer; one modal layer
// over atoms, negated atoms and a Boolean; a Boolean over a modal.
std::vector<Formula> schema_pool(Semantics s, int agents = 2);

// Random models per semantics: topo up to 6 points, ssl up to 5 points and 5
// sets, product 2-3 factors of up to 4 points; atoms p and q.
AnyModel random_model(std::mt19937_64& rng, Semantics s);

ValidityReport check_axiom(AxiomId axiom, std::size_t sample_size, std::uint64_t seed,
                           std::size_t max_counterexamples = 8);

// Repeatedly deletes points, sets/worlds and valuation memberships while the
// counterexample persists; the result is minimal under single deletions.
Counterexample minimize(const Counterexample& c);

}  // namespace gpal
