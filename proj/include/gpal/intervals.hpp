#pragma once

#include <string>
#include <vector>

#include "gpal/rational.hpp"

namespace gpal {

// Interval inside the space [-1, 1]; a closed [x, x] is a single point.
struct Interval {
  Rational lo;
  Rational hi;
  bool lo_closed = true;
  bool hi_closed = true;

  bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
  bool contains(const Rational& x) const;
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Finite union of intervals of the Euclidean space [-1, 1], kept sorted with
// strict gaps between components.
class IntervalSet {
 public:
  IntervalSet() = default;
  // Throws std::invalid_argument for endpoints outside [-1, 1].
  explicit IntervalSet(std::vector<Interval> parts);
  static IntervalSet whole();
  static IntervalSet point(const Rational& x);
  static IntervalSet closed(const Rational& lo, const Rational& hi);
  static IntervalSet open(const Rational& lo, const Rational& hi);

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  bool contains(const Rational& x) const;
  bool subset_of(const IntervalSet& o) const;

  friend IntervalSet operator|(const IntervalSet& a, const IntervalSet& b);
  friend IntervalSet operator&(const IntervalSet& a, const IntervalSet& b);
  IntervalSet complement() const;
  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> parts_;
};

// Interior and closure relative to the space [-1, 1]: the endpoints -1 and 1
// stay closed under interior because the whole space is open in itself.
IntervalSet euclid_interior(const IntervalSet& a);
IntervalSet euclid_closure(const IntervalSet& a);

// Members [-c/n, c/n] (closed) or (-c/n, c/n) (open), clipped to [-1, 1],
// for n >= start.
struct HarmonicFamily {
  Rational scale{1};
  bool closed = true;
  int start = 1;

  IntervalSet member(int n) const;
};

// Intersection of members start..n_max, computed by folding.
// Throws std::out_of_range if n_max < start.
IntervalSet finite_meet(const HarmonicFamily& fam, int n_max);

// Intersection over all n >= start. Closed form: every member contains 0 and
// any x != 0 drops out once n > scale/|x|, so the result is {0}.
IntervalSet omega_limit(const HarmonicFamily& fam);

struct TruncationRow {
  int n;
  IntervalSet interior_of_meet;   // I(p_1 & ... & p_N)
  IntervalSet meet_of_interiors;  // I p_1 & ... & I p_N
};

struct IntervalExampleReport {
  IntervalSet interior_of_limit;   // I of the infinite meet
  IntervalSet limit_of_interiors;  // infinite meet of the I p_n
  std::vector<TruncationRow> truncations;
  bool finite_stages_agree = false;
  bool limits_differ = false;
};

IntervalExampleReport interval_example(const std::vector<int>& truncations = {2, 10, 1000});

// "(-1/3, 1/3)", "[-1, 1]", "{0}", "{}"; components joined by " U ".
std::string render(const Interval& i);
std::string render(const IntervalSet& s);
std::string render(const IntervalExampleReport& r);

}  // namespace gpal
