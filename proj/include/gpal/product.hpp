#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstddef>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "gpal/formula.hpp"
#include "gpal/topology.hpp"

namespace gpal {

// One point index per factor.
using World = std::vector<int>;
// Indexed by mixed-radix world code over the factor universes.
using WorldSet = boost::dynamic_bitset<>;
using ProductValuation = std::map<std::string, WorldSet>;

// n-ary product of finite topologies with a surviving-world set. Agent i
// (1-based) observes coordinate i through factor i's topology; knowledge is
// relativized to the worlds that survived earlier announcements.
class ProductModel {
 public:
  ProductModel() = default;
  // Throws std::invalid_argument on malformed input (worlds outside the
  // product of factor carriers, valuation outside worlds, size mismatch).
  ProductModel(std::vector<Topology> factors, WorldSet worlds, ProductValuation valuation);
  // Fresh model whose worlds are the full cartesian product; valuation sets
  // are intersected with it.
  static ProductModel full(std::vector<Topology> factors, ProductValuation valuation);

  const std::vector<Topology>& factors() const { return factors_; }
  int agents() const { return static_cast<int>(factors_.size()); }
  std::size_t code_space() const { return space_; }
  std::size_t encode(const World& w) const;
  World decode(std::size_t code) const;
  std::size_t stride(int factor) const { return strides_.at(factor); }
  bool in_product(const World& w) const;
  WorldSet full_product() const;
  WorldSet empty_set() const { return WorldSet(space_); }

  const WorldSet& worlds() const { return worlds_; }
  const ProductValuation& valuation() const { return valuation_; }
  WorldSet value(const std::string& atom) const;
  std::vector<World> world_list() const;

  // Equality ignores atoms with empty value.
  friend bool operator==(const ProductModel& a, const ProductModel& b);

 private:
  void init_layout();

  std::vector<Topology> factors_;
  std::vector<std::size_t> strides_;
  std::size_t space_ = 0;
  WorldSet worlds_;
  ProductValuation valuation_;
};

WorldSet world_set(const ProductModel& m, const std::vector<World>& ws);

// Set-wise evaluator for Booleans, Ki and announcements.
WorldSet extension_product(const ProductModel& m, const Formula& f);

// Pointwise evaluator following the quantifier clauses directly.
// Throws std::invalid_argument if w is not a surviving world and
// std::out_of_range for agent indices above the number of factors.
bool satisfies_product(const ProductModel& m, const World& w, const Formula& f);

// Worlds where agent i knows the set E: some factor-i open around the
// world's i-th coordinate keeps every surviving i-variant inside E.
WorldSet knowledge_set(const ProductModel& m, int agent, const WorldSet& e);

ProductModel restrict_worlds(const ProductModel& m, const WorldSet& keep);
ProductModel update_product(const ProductModel& m, const Formula& f);

// Every member of X has an axis-open slice (other coordinates fixed) inside X.
bool h_open(const ProductModel& m, const WorldSet& x, int axis);
bool h_open(const ProductModel& m, const std::vector<World>& x, int axis);

std::string format_world(const ProductModel& m, const World& w);

ProductModel random_product_model(std::mt19937_64& rng, int factors, int max_points,
                                  const std::vector<std::string>& atom_names);

}  // namespace gpal
