#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "gpal/formula.hpp"
#include "gpal/topology.hpp"

namespace gpal {

using Valuation = std::map<std::string, PointSet>;

struct TopoModel {
  Topology space;
  Valuation valuation;  // atoms not listed denote the empty set

  PointSet value(const std::string& atom) const;
  // Equality ignores atoms mapped to the empty set.
  friend bool operator==(const TopoModel& a, const TopoModel& b);
};

// Validates that every valuation set lies inside the carrier.
TopoModel make_topo_model(Topology space, Valuation valuation);

// Set-wise evaluator for Booleans, I, C and announcements.
PointSet extension(const TopoModel& m, const Formula& f);

// Pointwise evaluator spelling out the exists-forall / forall-exists clauses.
// Throws std::out_of_range if `point` is not in the carrier.
bool satisfies(const TopoModel& m, int point, const Formula& f);

// Restriction to the extension of f with the induced subspace topology.
TopoModel update(const TopoModel& m, const Formula& f);
TopoModel restrict_to(const TopoModel& m, PointSet carrier);

TopoModel random_topo_model(std::mt19937_64& rng, int n, int k, const std::vector<std::string>& atom_names);

}  // namespace gpal
