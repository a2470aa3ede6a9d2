#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace gpal {

constexpr int kMaxPoints = 64;

// Subset of a point universe of at most 64 points, one bit per point index.
struct PointSet {
  std::uint64_t bits = 0;

  static PointSet of(std::initializer_list<int> points);
  static PointSet first(int n) {
    return PointSet{n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1)};
  }
  static PointSet single(int i) { return PointSet{std::uint64_t{1} << i}; }

  bool contains(int i) const { return (bits >> i) & 1U; }
  bool empty() const { return bits == 0; }
  int size() const { return std::popcount(bits); }
  bool subset_of(PointSet o) const { return (bits & ~o.bits) == 0; }
  PointSet minus(PointSet o) const { return PointSet{bits & ~o.bits}; }
  std::vector<int> members() const;

  friend PointSet operator&(PointSet a, PointSet b) { return PointSet{a.bits & b.bits}; }
  friend PointSet operator|(PointSet a, PointSet b) { return PointSet{a.bits | b.bits}; }
  PointSet& operator&=(PointSet o) { bits &= o.bits; return *this; }
  PointSet& operator|=(PointSet o) { bits |= o.bits; return *this; }
  friend bool operator==(PointSet, PointSet) = default;
  friend auto operator<=>(PointSet, PointSet) = default;
};

// A finite family of opens over a labelled point universe. Points keep their
// universe index across subspace restriction; `carrier` is the live subset.
// The family is stored sorted and duplicate-free but is not validated here;
// see verify_topology.
class Topology {
 public:
  Topology() = default;
  static Topology from_opens(std::vector<std::string> labels, PointSet carrier,
                             std::vector<PointSet> opens);
  static Topology from_opens(std::vector<std::string> labels, std::vector<PointSet> opens);
  static Topology discrete(std::vector<std::string> labels);
  static Topology indiscrete(std::vector<std::string> labels);

  const std::vector<std::string>& labels() const { return labels_; }
  int universe_size() const { return static_cast<int>(labels_.size()); }
  PointSet carrier() const { return carrier_; }
  const std::vector<PointSet>& opens() const { return opens_; }
  bool is_open(PointSet a) const;
  // Throws std::out_of_range for unknown labels.
  int index_of(const std::string& label) const;

  friend bool operator==(const Topology&, const Topology&) = default;

 private:
  std::vector<std::string> labels_;
  PointSet carrier_;
  std::vector<PointSet> opens_;
};

struct Violation {
  enum class Axiom { EmptyAndCarrier, Union, Intersection, OutOfCarrier };
  Axiom axiom;
  std::vector<PointSet> witnesses;
  std::string message;
};

std::vector<Violation> verify_topology(const Topology& t);

// Smallest topology on `labels` containing every subbasis member.
// Throws std::invalid_argument if a member leaves the carrier and
// std::length_error once the family would exceed `max_opens`.
Topology generate_from_subbasis(std::vector<std::string> labels, std::span<const PointSet> subbasis,
                                std::size_t max_opens = std::size_t{1} << 22);

PointSet interior(const Topology& t, PointSet a);
PointSet closure(const Topology& t, PointSet a);

// Induced topology {O & carrier2 : O open}.
Topology subspace(const Topology& t, PointSet carrier2);

std::vector<std::string> numeric_labels(int n);

Topology random_topology(std::mt19937_64& rng, int n, int k);
Topology random_topology(std::uint64_t seed, int n, int k);

std::string format_set(const std::vector<std::string>& labels, PointSet a);

}  // namespace gpal
