#include "gpal/intervals.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gpal {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  const auto slash = s.find('/');
  auto is_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    return std::all_of(t.begin() + static_cast<long>(i), t.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  auto to_int = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return boost::multiprecision::cpp_int(t);
  };
  if (slash == std::string::npos) {
    if (!is_int(s)) throw std::invalid_argument("not a rational: '" + s + "'");
    return Rational(to_int(s));
  }
  const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("not a rational: '" + s + "'");
  const auto d = to_int(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  return Rational(to_int(num), d);
}

std::string format_rational(const Rational& r) { return r.str(); }

bool Interval::contains(const Rational& x) const {
  const bool above = lo_closed ? x >= lo : x > lo;
  const bool below = hi_closed ? x <= hi : x < hi;
  return above && below;
}

namespace {

const Rational kMinusOne{-1};
const Rational kOne{1};

std::vector<Interval> normalize(std::vector<Interval> parts) {
  for (const auto& p : parts) {
    if (p.lo < kMinusOne || p.hi > kOne) throw std::invalid_argument("interval endpoint outside [-1, 1]");
  }
  std::erase_if(parts, [](const Interval& i) { return i.empty(); });
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
  });
  std::vector<Interval> out;
  for (auto& p : parts) {
    if (!out.empty()) {
      Interval& cur = out.back();
      const bool touches = p.lo < cur.hi || (p.lo == cur.hi && (cur.hi_closed || p.lo_closed));
      if (touches) {
        if (p.lo == cur.lo) cur.lo_closed = cur.lo_closed || p.lo_closed;
        if (p.hi > cur.hi) {
          cur.hi = p.hi;
          cur.hi_closed = p.hi_closed;
        } else if (p.hi == cur.hi) {
          cur.hi_closed = cur.hi_closed || p.hi_closed;
        }
        continue;
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

IntervalSet::IntervalSet(std::vector<Interval> parts) : parts_(normalize(std::move(parts))) {}

IntervalSet IntervalSet::whole() { return IntervalSet({Interval{kMinusOne, kOne, true, true}}); }
IntervalSet IntervalSet::point(const Rational& x) { return IntervalSet({Interval{x, x, true, true}}); }
IntervalSet IntervalSet::closed(const Rational& lo, const Rational& hi) {
  return IntervalSet({Interval{lo, hi, true, true}});
}
IntervalSet IntervalSet::open(const Rational& lo, const Rational& hi) {
  return IntervalSet({Interval{lo, hi, false, false}});
}

bool IntervalSet::contains(const Rational& x) const {
  return std::any_of(parts_.begin(), parts_.end(), [&](const Interval& i) { return i.contains(x); });
}

bool IntervalSet::subset_of(const IntervalSet& o) const { return (*this & o) == *this; }

IntervalSet operator|(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> all = a.parts_;
  all.insert(all.end(), b.parts_.begin(), b.parts_.end());
  return IntervalSet(std::move(all));
}

IntervalSet operator&(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> out;
  for (const auto& x : a.parts_) {
    for (const auto& y : b.parts_) {
      Interval r;
      if (x.lo > y.lo) {
        r.lo = x.lo;
        r.lo_closed = x.lo_closed;
      } else if (y.lo > x.lo) {
        r.lo = y.lo;
        r.lo_closed = y.lo_closed;
      } else {
        r.lo = x.lo;
        r.lo_closed = x.lo_closed && y.lo_closed;
      }
      if (x.hi < y.hi) {
        r.hi = x.hi;
        r.hi_closed = x.hi_closed;
      } else if (y.hi < x.hi) {
        r.hi = y.hi;
        r.hi_closed = y.hi_closed;
      } else {
        r.hi = x.hi;
        r.hi_closed = x.hi_closed && y.hi_closed;
      }
      if (!r.empty()) out.push_back(std::move(r));
    }
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::complement() const {
  std::vector<Interval> gaps;
  Rational from = kMinusOne;
  bool from_closed = true;
  for (const auto& p : parts_) {
    gaps.push_back(Interval{from, p.lo, from_closed, !p.lo_closed});
    from = p.hi;
    from_closed = !p.hi_closed;
  }
  gaps.push_back(Interval{from, kOne, from_closed, true});
  return IntervalSet(std::move(gaps));
}

IntervalSet euclid_interior(const IntervalSet& a) {
  std::vector<Interval> out;
  for (const auto& p : a.parts()) {
    if (p.lo == p.hi) continue;
    out.push_back(Interval{p.lo, p.hi, p.lo == kMinusOne && p.lo_closed, p.hi == kOne && p.hi_closed});
  }
  return IntervalSet(std::move(out));
}

IntervalSet euclid_closure(const IntervalSet& a) {
  std::vector<Interval> out;
  for (const auto& p : a.parts()) out.push_back(Interval{p.lo, p.hi, true, true});
  return IntervalSet(std::move(out));
}

IntervalSet HarmonicFamily::member(int n) const {
  if (n < start || n < 1) throw std::out_of_range("family index below start");
  if (scale <= 0) throw std::invalid_argument("family scale must be positive");
  const Rational r = scale / n;
  // Clip a [-r, r] (or open) member to the space.
  const bool clipped = r >= kOne;
  const Rational hi = clipped ? kOne : r;
  const bool end_closed = closed || (clipped && r > kOne);
  return IntervalSet({Interval{-hi, hi, end_closed, end_closed}});
}

IntervalSet finite_meet(const HarmonicFamily& fam, int n_max) {
  if (n_max < fam.start) throw std::out_of_range("meet index below family start");
  IntervalSet acc = IntervalSet::whole();
  for (int n = fam.start; n <= n_max; ++n) acc = acc & fam.member(n);
  return acc;
}

IntervalSet omega_limit(const HarmonicFamily& fam) {
  if (fam.scale <= 0) throw std::invalid_argument("family scale must be positive");
  return IntervalSet::point(Rational(0));
}

IntervalExampleReport interval_example(const std::vector<int>& truncations) {
  IntervalExampleReport r;
  const HarmonicFamily closed{Rational(1), true, 1};
  // I p_n for n >= 2; I p_1 is the whole space and does not affect the meet.
  const HarmonicFamily open_interiors{Rational(1), false, 2};
  r.interior_of_limit = euclid_interior(omega_limit(closed));
  r.limit_of_interiors = omega_limit(open_interiors);
  r.finite_stages_agree = true;
  for (int n : truncations) {
    IntervalSet meet_of_interiors = IntervalSet::whole();
    for (int k = 1; k <= n; ++k) meet_of_interiors = meet_of_interiors & euclid_interior(closed.member(k));
    TruncationRow row{n, euclid_interior(finite_meet(closed, n)), meet_of_interiors};
    r.finite_stages_agree = r.finite_stages_agree && row.interior_of_meet == row.meet_of_interiors;
    r.truncations.push_back(std::move(row));
  }
  r.limits_differ = r.interior_of_limit != r.limit_of_interiors;
  return r;
}

std::string render(const Interval& i) {
  if (i.lo == i.hi) return "{" + format_rational(i.lo) + "}";
  return std::string(i.lo_closed ? "[" : "(") + format_rational(i.lo) + ", " + format_rational(i.hi) +
         (i.hi_closed ? "]" : ")");
}

std::string render(const IntervalSet& s) {
  if (s.empty()) return "{}";
  std::string out;
  for (std::size_t k = 0; k < s.parts().size(); ++k) {
    if (k) out += " U ";
    out += render(s.parts()[k]);
  }
  return out;
}

std::string render(const IntervalExampleReport& r) {
  std::ostringstream os;
  os << "space: [-1, 1], v(p_n) = [-1/n, 1/n]\n";
  os << "interior of infinite meet: " << render(r.interior_of_limit) << "\n";
  os << "infinite meet of interiors: " << render(r.limit_of_interiors) << "\n";
  for (const auto& row : r.truncations) {
    os << "N=" << row.n << ": interior of meet " << render(row.interior_of_meet) << ", meet of interiors "
       << render(row.meet_of_interiors) << (row.interior_of_meet == row.meet_of_interiors ? ", agree" : ", differ")
       << "\n";
  }
  os << "finite stages agree: " << (r.finite_stages_agree ? "yes" : "no") << "\n";
  os << "limits differ: " << (r.limits_differ ? "yes" : "no") << "\n";
  return os.str();
}

}  // namespace gpal
