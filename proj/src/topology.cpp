#include "gpal/topology.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "gpal/random.hpp"

namespace gpal {

PointSet PointSet::of(std::initializer_list<int> points) {
  PointSet s;
  for (int p : points) {
    if (p < 0 || p >= kMaxPoints) throw std::out_of_range("point index out of range");
    s.bits |= std::uint64_t{1} << p;
  }
  return s;
}

std::vector<int> PointSet::members() const {
  std::vector<int> out;
  for (std::uint64_t b = bits; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

namespace {

void canonicalize(std::vector<PointSet>& family) {
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
}

void check_labels(const std::vector<std::string>& labels) {
  if (labels.size() > static_cast<std::size_t>(kMaxPoints))
    throw std::invalid_argument("at most 64 points per space");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second) throw std::invalid_argument("duplicate point label '" + l + "'");
}

}  // namespace

Topology Topology::from_opens(std::vector<std::string> labels, PointSet carrier,
                              std::vector<PointSet> opens) {
  check_labels(labels);
  if (!carrier.subset_of(PointSet::first(static_cast<int>(labels.size()))))
    throw std::invalid_argument("carrier exceeds the label universe");
  Topology t;
  t.labels_ = std::move(labels);
  t.carrier_ = carrier;
  canonicalize(opens);
  t.opens_ = std::move(opens);
  return t;
}

Topology Topology::from_opens(std::vector<std::string> labels, std::vector<PointSet> opens) {
  const auto n = static_cast<int>(labels.size());
  return from_opens(std::move(labels), PointSet::first(n), std::move(opens));
}

Topology Topology::discrete(std::vector<std::string> labels) {
  const int n = static_cast<int>(labels.size());
  std::vector<PointSet> singles;
  for (int i = 0; i < n; ++i) singles.push_back(PointSet::single(i));
  return generate_from_subbasis(std::move(labels), singles);
}

Topology Topology::indiscrete(std::vector<std::string> labels) {
  return generate_from_subbasis(std::move(labels), {});
}

bool Topology::is_open(PointSet a) const { return std::binary_search(opens_.begin(), opens_.end(), a); }

int Topology::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw std::out_of_range("unknown point '" + label + "'");
  return static_cast<int>(it - labels_.begin());
}

std::vector<Violation> verify_topology(const Topology& t) {
  std::vector<Violation> out;
  const auto& O = t.opens();
  const PointSet carrier = t.carrier();
  for (PointSet o : O) {
    if (!o.subset_of(carrier))
      out.push_back({Violation::Axiom::OutOfCarrier, {o}, "open leaves the carrier"});
  }
  if (!t.is_open(PointSet{}))
    out.push_back({Violation::Axiom::EmptyAndCarrier, {PointSet{}}, "empty set is not open"});
  if (!t.is_open(carrier))
    out.push_back({Violation::Axiom::EmptyAndCarrier, {carrier}, "carrier is not open"});
  // On a finite family, closure under pairwise union and intersection is
  // equivalent to closure under arbitrary unions and finite intersections.
  for (std::size_t i = 0; i < O.size(); ++i) {
    for (std::size_t j = i + 1; j < O.size(); ++j) {
      if (!t.is_open(O[i] | O[j]))
        out.push_back({Violation::Axiom::Union, {O[i], O[j]}, "union is not open"});
      if (!t.is_open(O[i] & O[j]))
        out.push_back({Violation::Axiom::Intersection, {O[i], O[j]}, "intersection is not open"});
    }
  }
  return out;
}

Topology generate_from_subbasis(std::vector<std::string> labels, std::span<const PointSet> subbasis,
                                std::size_t max_opens) {
  check_labels(labels);
  const PointSet carrier = PointSet::first(static_cast<int>(labels.size()));
  std::unordered_set<std::uint64_t> basis{carrier.bits};
  for (PointSet s : subbasis) {
    if (!s.subset_of(carrier)) throw std::invalid_argument("subbasis member out of carrier");
    std::vector<std::uint64_t> add;
    for (std::uint64_t b : basis) add.push_back(b & s.bits);
    basis.insert(add.begin(), add.end());
  }
  std::unordered_set<std::uint64_t> opens{0};
  for (std::uint64_t b : basis) {
    std::vector<std::uint64_t> add;
    for (std::uint64_t o : opens) add.push_back(o | b);
    opens.insert(add.begin(), add.end());
    if (opens.size() > max_opens) throw std::length_error("topology has too many opens");
  }
  std::vector<PointSet> family;
  family.reserve(opens.size());
  for (std::uint64_t o : opens) family.push_back(PointSet{o});
  return Topology::from_opens(std::move(labels), carrier, std::move(family));
}

PointSet interior(const Topology& t, PointSet a) {
  PointSet r;
  for (PointSet o : t.opens())
    if (o.subset_of(a)) r |= o;
  return r;
}

PointSet closure(const Topology& t, PointSet a) {
  const PointSet c = t.carrier();
  return c.minus(interior(t, c.minus(a)));
}

Topology subspace(const Topology& t, PointSet carrier2) {
  if (!carrier2.subset_of(t.carrier())) throw std::invalid_argument("subspace carrier not contained in carrier");
  std::vector<PointSet> opens;
  opens.reserve(t.opens().size());
  for (PointSet o : t.opens()) opens.push_back(o & carrier2);
  return Topology::from_opens(t.labels(), carrier2, std::move(opens));
}

std::vector<std::string> numeric_labels(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

Topology random_topology(std::mt19937_64& rng, int n, int k) {
  if (n < 0 || n > 12) throw std::invalid_argument("random_topology supports 0..12 points");
  std::vector<PointSet> sub;
  for (int i = 0; i < k; ++i) sub.push_back(PointSet{random_bits(rng, n)});
  return generate_from_subbasis(numeric_labels(n), sub);
}

Topology random_topology(std::uint64_t seed, int n, int k) {
  std::mt19937_64 rng(seed);
  return random_topology(rng, n, k);
}

std::string format_set(const std::vector<std::string>& labels, PointSet a) {
  std::string out = "{";
  bool first = true;
  for (int i : a.members()) {
    if (!first) out += ",";
    first = false;
    out += i < static_cast<int>(labels.size()) ? labels[i] : std::to_string(i);
  }
  return out + "}";
}

}  // namespace gpal
