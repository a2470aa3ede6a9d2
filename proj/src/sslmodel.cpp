#include "gpal/sslmodel.hpp"

#include <algorithm>
#include <stdexcept>

#include "gpal/random.hpp"

namespace gpal {

SSLModel SSLModel::make(std::vector<std::string> labels, PointSet points, std::vector<PointSet> sigma,
                        Valuation valuation) {
  if (labels.size() > static_cast<std::size_t>(kMaxPoints)) throw std::invalid_argument("at most 64 points");
  if (!points.subset_of(PointSet::first(static_cast<int>(labels.size()))))
    throw std::invalid_argument("points exceed the label universe");
  for (PointSet u : sigma) {
    if (u.empty()) throw std::invalid_argument("sigma members must be nonempty");
    if (!u.subset_of(points)) throw std::invalid_argument("sigma member outside the point set");
  }
  for (const auto& [name, set] : valuation)
    if (!set.subset_of(points)) throw std::invalid_argument("valuation of '" + name + "' leaves the point set");
  std::sort(sigma.begin(), sigma.end());
  sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());
  SSLModel m;
  m.labels_ = std::move(labels);
  m.points_ = points;
  m.sigma_ = std::move(sigma);
  m.valuation_ = std::move(valuation);
  return m;
}

SSLModel SSLModel::make(std::vector<std::string> labels, std::vector<PointSet> sigma, Valuation valuation) {
  const int n = static_cast<int>(labels.size());
  return make(std::move(labels), PointSet::first(n), std::move(sigma), std::move(valuation));
}

PointSet SSLModel::value(const std::string& atom) const {
  auto it = valuation_.find(atom);
  return it == valuation_.end() ? PointSet{} : it->second & points_;
}

int SSLModel::sigma_index(PointSet u) const {
  auto it = std::lower_bound(sigma_.begin(), sigma_.end(), u);
  return (it != sigma_.end() && *it == u) ? static_cast<int>(it - sigma_.begin()) : -1;
}

int SSLModel::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw std::out_of_range("unknown point '" + label + "'");
  return static_cast<int>(it - labels_.begin());
}

bool SSLModel::is_situation(const Situation& s) const {
  return s.point >= 0 && s.point < kMaxPoints && s.nbhd.contains(s.point) && sigma_index(s.nbhd) >= 0;
}

bool operator==(const SSLModel& a, const SSLModel& b) {
  if (a.labels_ != b.labels_ || a.points_ != b.points_ || a.sigma_ != b.sigma_) return false;
  auto covered = [](const SSLModel& x, const SSLModel& y) {
    for (const auto& [name, set] : x.valuation_)
      if (!set.empty() && y.value(name) != set) return false;
    return true;
  };
  return covered(a, b) && covered(b, a);
}

std::vector<Situation> situations(const SSLModel& m) {
  std::vector<Situation> out;
  for (int s : m.points().members())
    for (PointSet u : m.sigma())
      if (u.contains(s)) out.push_back({s, u});
  return out;
}

namespace {

bool sat(const SSLModel& m, int s, PointSet u, const Formula& f);

SSLModel literal_update(const SSLModel& m, const Formula& f) {
  SituationExtension e;
  for (PointSet u : m.sigma()) {
    PointSet keep;
    for (int t : u.members())
      if (sat(m, t, u, f)) keep |= PointSet::single(t);
    e.push_back(keep);
  }
  return update_from_extension(m, e);
}

bool sat(const SSLModel& m, int s, PointSet u, const Formula& f) {
  switch (f.op()) {
    case Op::Atom: return m.value(f.name()).contains(s);
    case Op::Top: return true;
    case Op::Bot: return false;
    case Op::Not: return !sat(m, s, u, f.arg());
    case Op::And: return sat(m, s, u, f.lhs()) && sat(m, s, u, f.rhs());
    case Op::Or: return sat(m, s, u, f.lhs()) || sat(m, s, u, f.rhs());
    case Op::Implies: return !sat(m, s, u, f.lhs()) || sat(m, s, u, f.rhs());
    case Op::Know:
      for (int t : u.members())
        if (!sat(m, t, u, f.arg())) return false;
      return true;
    case Op::Possible:
      for (int t : u.members())
        if (sat(m, t, u, f.arg())) return true;
      return false;
    case Op::Effort:
      for (PointSet v : m.sigma())
        if (v.contains(s) && v.subset_of(u) && !sat(m, s, v, f.arg())) return false;
      return true;
    case Op::EffortDual:
      for (PointSet v : m.sigma())
        if (v.contains(s) && v.subset_of(u) && sat(m, s, v, f.arg())) return true;
      return false;
    case Op::Announce: {
      if (!sat(m, s, u, f.lhs())) return true;
      PointSet shrunk;
      for (int t : u.members())
        if (sat(m, t, u, f.lhs())) shrunk |= PointSet::single(t);
      return sat(literal_update(m, f.lhs()), s, shrunk, f.rhs());
    }
    default:
      throw UnsupportedOperator(f.op(), "subset-space");
  }
}

}  // namespace

bool satisfies_ssl(const SSLModel& m, const Situation& sit, const Formula& f) {
  if (!m.is_situation(sit)) throw std::invalid_argument("not a neighbourhood situation of the model");
  return sat(m, sit.point, sit.nbhd, f);
}

PointSet point_projection(const SSLModel& m, const SituationExtension& e) {
  PointSet r;
  for (std::size_t i = 0; i < m.sigma().size(); ++i) r |= e[i];
  return r;
}

std::vector<PointSet> nbhd_projection(const SSLModel& m, const SituationExtension& e) {
  std::vector<PointSet> r;
  for (std::size_t i = 0; i < m.sigma().size(); ++i)
    if (!e[i].empty()) r.push_back(m.sigma()[i]);
  return r;
}

SSLModel update_from_extension(const SSLModel& m, const SituationExtension& e) {
  const PointSet pts = point_projection(m, e);
  std::vector<PointSet> sigma;
  for (PointSet u : e)
    if (!u.empty()) sigma.push_back(u);
  Valuation v;
  for (const auto& [name, set] : m.valuation()) v[name] = set & pts;
  return SSLModel::make(m.labels(), pts, std::move(sigma), std::move(v));
}

SituationExtension extension_ssl(const SSLModel& m, const Formula& f) {
  const auto& sigma = m.sigma();
  const std::size_t n = sigma.size();
  SituationExtension out(n);
  switch (f.op()) {
    case Op::Atom: {
      const PointSet v = m.value(f.name());
      for (std::size_t i = 0; i < n; ++i) out[i] = sigma[i] & v;
      return out;
    }
    case Op::Top: return sigma;
    case Op::Bot: return out;
    case Op::Not: {
      auto a = extension_ssl(m, f.arg());
      for (std::size_t i = 0; i < n; ++i) out[i] = sigma[i].minus(a[i]);
      return out;
    }
    case Op::And:
    case Op::Or:
    case Op::Implies: {
      auto a = extension_ssl(m, f.lhs());
      auto b = extension_ssl(m, f.rhs());
      for (std::size_t i = 0; i < n; ++i) {
        if (f.op() == Op::And) out[i] = a[i] & b[i];
        else if (f.op() == Op::Or) out[i] = a[i] | b[i];
        else out[i] = sigma[i].minus(a[i]) | b[i];
      }
      return out;
    }
    case Op::Know:
    case Op::Possible: {
      auto a = extension_ssl(m, f.arg());
      for (std::size_t i = 0; i < n; ++i) {
        const bool holds = f.op() == Op::Know ? a[i] == sigma[i] : !a[i].empty();
        out[i] = holds ? sigma[i] : PointSet{};
      }
      return out;
    }
    case Op::Effort:
    case Op::EffortDual: {
      auto a = extension_ssl(m, f.arg());
      const bool box = f.op() == Op::Effort;
      for (std::size_t i = 0; i < n; ++i) {
        // start from "all" for box, "none" for diamond, then fold over V subset of U
        PointSet acc = box ? sigma[i] : PointSet{};
        for (std::size_t j = 0; j < n; ++j) {
          if (!sigma[j].subset_of(sigma[i])) continue;
          if (box) acc = acc.minus(sigma[j].minus(a[j]));
          else acc |= a[j];
        }
        out[i] = acc;
      }
      return out;
    }
    case Op::Announce: {
      auto a = extension_ssl(m, f.lhs());
      const SSLModel updated = update_from_extension(m, a);
      auto b = extension_ssl(updated, f.rhs());
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = sigma[i].minus(a[i]);
        if (!a[i].empty()) out[i] |= b[updated.sigma_index(a[i])] & a[i];
      }
      return out;
    }
    default:
      throw UnsupportedOperator(f.op(), "subset-space");
  }
}

SSLModel update_ssl(const SSLModel& m, const Formula& f) { return update_from_extension(m, extension_ssl(m, f)); }

std::optional<PersistenceWitness> is_persistent(const SSLModel& m, const Formula& f) {
  const auto e = extension_ssl(m, f);
  const auto& sigma = m.sigma();
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    for (std::size_t j = 0; j < sigma.size(); ++j) {
      if (i == j || !sigma[j].subset_of(sigma[i])) continue;
      // points of V that satisfy f in U but not in V
      const PointSet bad = (e[i] & sigma[j]).minus(e[j]);
      if (!bad.empty()) return PersistenceWitness{bad.members().front(), sigma[i], sigma[j]};
    }
  }
  return std::nullopt;
}

ImmunityReport persistence_immunity_check(const SSLModel& m, const Formula& f,
                                          const std::vector<Formula>& announcements) {
  if (auto w = is_persistent(m, f)) throw NotPersistent(*w);
  ImmunityReport report;
  const auto holds = extension_ssl(m, f);
  for (const auto& chi : announcements) {
    const auto after = extension_ssl(m, Formula::announce(chi, f));
    for (std::size_t i = 0; i < m.sigma().size(); ++i) {
      for (int s : holds[i].members()) {
        ++report.checked;
        if (!after[i].contains(s)) report.violations.push_back({Situation{s, m.sigma()[i]}, chi});
      }
    }
  }
  return report;
}

std::string format_situation(const SSLModel& m, const Situation& s) {
  const auto& l = m.labels();
  const std::string p = s.point < static_cast<int>(l.size()) ? l[s.point] : std::to_string(s.point);
  return "(" + p + ", " + format_set(l, s.nbhd) + ")";
}

SSLModel random_ssl_model(std::mt19937_64& rng, int max_points, int max_sets,
                          const std::vector<std::string>& atom_names) {
  const int n = uniform_int(rng, 1, max_points);
  const int k = uniform_int(rng, 0, max_sets);
  std::vector<PointSet> sigma;
  for (int i = 0; i < k; ++i) {
    PointSet u{random_bits(rng, n)};
    if (u.empty()) u = PointSet::single(uniform_int(rng, 0, n - 1));
    sigma.push_back(u);
  }
  // Points outside every neighbourhood would vanish at the first update.
  PointSet points;
  for (PointSet u : sigma) points |= u;
  Valuation v;
  for (const auto& a : atom_names) v[a] = PointSet{random_bits(rng, n)} & points;
  return SSLModel::make(numeric_labels(n), points, std::move(sigma), std::move(v));
}

}  // namespace gpal
