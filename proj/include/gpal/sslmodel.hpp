#pragma once

#include <compare>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gpal/formula.hpp"
#include "gpal/topomodel.hpp"

namespace gpal {

// A pair (s, U) with s in U and U in sigma.
struct Situation {
  int point = 0;
  PointSet nbhd;

  friend bool operator==(const Situation&, const Situation&) = default;
  friend auto operator<=>(const Situation&, const Situation&) = default;
};

// Subset space: points, a family sigma of nonempty point sets (not required
// to be a topology), and a valuation.
class SSLModel {
 public:
  SSLModel() = default;
  // Drops duplicate sets, sorts sigma. Throws std::invalid_argument for empty
  // or out-of-range sets and valuation sets outside `points`.
  static SSLModel make(std::vector<std::string> labels, PointSet points, std::vector<PointSet> sigma,
                       Valuation valuation);
  static SSLModel make(std::vector<std::string> labels, std::vector<PointSet> sigma, Valuation valuation);

  const std::vector<std::string>& labels() const { return labels_; }
  PointSet points() const { return points_; }
  const std::vector<PointSet>& sigma() const { return sigma_; }
  const Valuation& valuation() const { return valuation_; }
  PointSet value(const std::string& atom) const;
  // Position of U in sigma, or -1.
  int sigma_index(PointSet u) const;
  int index_of(const std::string& label) const;
  bool is_situation(const Situation& s) const;

  friend bool operator==(const SSLModel& a, const SSLModel& b);

 private:
  std::vector<std::string> labels_;
  PointSet points_;
  std::vector<PointSet> sigma_;
  Valuation valuation_;
};

// For each member of sigma (same order), the points s in it with (s,U) satisfying f.
using SituationExtension = std::vector<PointSet>;

// Ordered by point, then neighbourhood.
std::vector<Situation> situations(const SSLModel& m);

// Literal recursive evaluator. Throws std::invalid_argument for an invalid
// situation and UnsupportedOperator for I, C and Ki.
bool satisfies_ssl(const SSLModel& m, const Situation& sit, const Formula& f);

// Set-wise evaluator; agrees with satisfies_ssl.
SituationExtension extension_ssl(const SSLModel& m, const Formula& f);

// U_f = {t in U : (t,U) |= f} for each U; empty results dropped, equal
// results merged; points become the union of the surviving sets.
SSLModel update_ssl(const SSLModel& m, const Formula& f);
SSLModel update_from_extension(const SSLModel& m, const SituationExtension& e);

// Projections of the extension onto points and onto neighbourhoods.
PointSet point_projection(const SSLModel& m, const SituationExtension& e);
std::vector<PointSet> nbhd_projection(const SSLModel& m, const SituationExtension& e);

struct PersistenceWitness {
  int point;
  PointSet larger;   // s,U |= f
  PointSet smaller;  // s,V |/= f with V subset of U
};

// nullopt when f is persistent in m.
std::optional<PersistenceWitness> is_persistent(const SSLModel& m, const Formula& f);

struct ImmunityViolation {
  Situation at;
  Formula announcement;
};

struct ImmunityReport {
  std::size_t checked = 0;  // (situation, announcement) pairs where f held
  std::vector<ImmunityViolation> violations;
};

class NotPersistent : public std::invalid_argument {
 public:
  explicit NotPersistent(PersistenceWitness w)
      : std::invalid_argument("formula is not persistent in the model"), witness(w) {}
  PersistenceWitness witness;
};

// Checks s,U |= f  implies  s,U |= [!chi] f  for every situation and chi.
// Throws NotPersistent if f is not persistent in m.
ImmunityReport persistence_immunity_check(const SSLModel& m, const Formula& f,
                                          const std::vector<Formula>& announcements);

std::string format_situation(const SSLModel& m, const Situation& s);

SSLModel random_ssl_model(std::mt19937_64& rng, int max_points, int max_sets,
                          const std::vector<std::string>& atom_names);

}  // namespace gpal
