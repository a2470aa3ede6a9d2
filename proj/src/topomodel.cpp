#include "gpal/topomodel.hpp"

#include "gpal/random.hpp"

namespace gpal {

PointSet TopoModel::value(const std::string& atom) const {
  auto it = valuation.find(atom);
  return it == valuation.end() ? PointSet{} : it->second & space.carrier();
}

namespace {

bool valuation_subset(const Valuation& a, const Valuation& b) {
  for (const auto& [name, set] : a) {
    if (set.empty()) continue;
    auto it = b.find(name);
    if (it == b.end() || it->second != set) return false;
  }
  return true;
}

}  // namespace

bool operator==(const TopoModel& a, const TopoModel& b) {
  return a.space == b.space && valuation_subset(a.valuation, b.valuation) &&
         valuation_subset(b.valuation, a.valuation);
}

TopoModel make_topo_model(Topology space, Valuation valuation) {
  for (const auto& [name, set] : valuation) {
    if (!set.subset_of(space.carrier()))
      throw std::invalid_argument("valuation of '" + name + "' leaves the carrier");
  }
  return TopoModel{std::move(space), std::move(valuation)};
}

TopoModel restrict_to(const TopoModel& m, PointSet carrier) {
  Valuation v;
  for (const auto& [name, set] : m.valuation) v[name] = set & carrier;
  return TopoModel{subspace(m.space, carrier), std::move(v)};
}

PointSet extension(const TopoModel& m, const Formula& f) {
  const PointSet carrier = m.space.carrier();
  switch (f.op()) {
    case Op::Atom: return m.value(f.name());
    case Op::Top: return carrier;
    case Op::Bot: return {};
    case Op::Not: return carrier.minus(extension(m, f.arg()));
    case Op::And: return extension(m, f.lhs()) & extension(m, f.rhs());
    case Op::Or: return extension(m, f.lhs()) | extension(m, f.rhs());
    case Op::Implies: return carrier.minus(extension(m, f.lhs())) | extension(m, f.rhs());
    case Op::Interior: return interior(m.space, extension(m, f.arg()));
    case Op::Closure: return closure(m.space, extension(m, f.arg()));
    case Op::Announce: {
      const PointSet announced = extension(m, f.lhs());
      const TopoModel updated = restrict_to(m, announced);
      return carrier.minus(announced) | extension(updated, f.rhs());
    }
    default:
      throw UnsupportedOperator(f.op(), "topological");
  }
}

namespace {

bool sat(const TopoModel& m, int s, const Formula& f);

// Carrier of the updated model, computed pointwise.
PointSet satisfying_points(const TopoModel& m, const Formula& f) {
  PointSet r;
  for (int t : m.space.carrier().members())
    if (sat(m, t, f)) r |= PointSet::single(t);
  return r;
}

bool sat(const TopoModel& m, int s, const Formula& f) {
  switch (f.op()) {
    case Op::Atom: return m.value(f.name()).contains(s);
    case Op::Top: return true;
    case Op::Bot: return false;
    case Op::Not: return !sat(m, s, f.arg());
    case Op::And: return sat(m, s, f.lhs()) && sat(m, s, f.rhs());
    case Op::Or: return sat(m, s, f.lhs()) || sat(m, s, f.rhs());
    case Op::Implies: return !sat(m, s, f.lhs()) || sat(m, s, f.rhs());
    case Op::Interior:
      // exists U open with s in U and every t in U satisfying the argument
      for (PointSet u : m.space.opens()) {
        if (!u.contains(s)) continue;
        bool all = true;
        for (int t : u.members()) {
          if (!sat(m, t, f.arg())) {
            all = false;
            break;
          }
        }
        if (all) return true;
      }
      return false;
    case Op::Closure:
      // every open U containing s meets the argument
      for (PointSet u : m.space.opens()) {
        if (!u.contains(s)) continue;
        bool some = false;
        for (int t : u.members()) {
          if (sat(m, t, f.arg())) {
            some = true;
            break;
          }
        }
        if (!some) return false;
      }
      return true;
    case Op::Announce: {
      if (!sat(m, s, f.lhs())) return true;
      const TopoModel updated = restrict_to(m, satisfying_points(m, f.lhs()));
      return sat(updated, s, f.rhs());
    }
    default:
      throw UnsupportedOperator(f.op(), "topological");
  }
}

}  // namespace

bool satisfies(const TopoModel& m, int point, const Formula& f) {
  if (point < 0 || point >= kMaxPoints || !m.space.carrier().contains(point))
    throw std::out_of_range("point " + std::to_string(point) + " is not in the carrier");
  return sat(m, point, f);
}

TopoModel update(const TopoModel& m, const Formula& f) { return restrict_to(m, extension(m, f)); }

TopoModel random_topo_model(std::mt19937_64& rng, int n, int k, const std::vector<std::string>& atom_names) {
  Topology t = random_topology(rng, n, k);
  Valuation v;
  for (const auto& a : atom_names) v[a] = PointSet{random_bits(rng, n)};
  return TopoModel{std::move(t), std::move(v)};
}

}  // namespace gpal
