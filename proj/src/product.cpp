#include "gpal/product.hpp"

#include <stdexcept>

#include "gpal/random.hpp"

namespace gpal {

namespace {
constexpr std::size_t kMaxCodeSpace = std::size_t{1} << 22;
}

void ProductModel::init_layout() {
  if (factors_.empty()) throw std::invalid_argument("product model needs at least one factor");
  if (factors_.size() > 9) throw std::invalid_argument("at most 9 factors (agents K1..K9)");
  strides_.assign(factors_.size(), 0);
  std::size_t s = 1;
  for (std::size_t i = factors_.size(); i-- > 0;) {
    strides_[i] = s;
    s *= static_cast<std::size_t>(factors_[i].universe_size());
    if (s > kMaxCodeSpace) throw std::invalid_argument("product space too large");
  }
  space_ = s;
}

ProductModel::ProductModel(std::vector<Topology> factors, WorldSet worlds, ProductValuation valuation)
    : factors_(std::move(factors)), worlds_(std::move(worlds)), valuation_(std::move(valuation)) {
  init_layout();
  if (worlds_.size() != space_) throw std::invalid_argument("world set has wrong size");
  if (!worlds_.is_subset_of(full_product()))
    throw std::invalid_argument("worlds outside the product of factor carriers");
  for (auto& [name, set] : valuation_) {
    if (set.size() != space_) throw std::invalid_argument("valuation of '" + name + "' has wrong size");
    if (!set.is_subset_of(worlds_))
      throw std::invalid_argument("valuation of '" + name + "' leaves the surviving worlds");
  }
}

ProductModel ProductModel::full(std::vector<Topology> factors, ProductValuation valuation) {
  ProductModel m;
  m.factors_ = std::move(factors);
  m.init_layout();
  m.worlds_ = m.full_product();
  for (auto& [name, set] : valuation) {
    if (set.size() != m.space_) throw std::invalid_argument("valuation of '" + name + "' has wrong size");
    m.valuation_[name] = set & m.worlds_;
  }
  return m;
}

std::size_t ProductModel::encode(const World& w) const {
  if (w.size() != factors_.size()) throw std::invalid_argument("world has wrong arity");
  std::size_t code = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 0 || w[i] >= factors_[i].universe_size())
      throw std::invalid_argument("world coordinate out of range");
    code += static_cast<std::size_t>(w[i]) * strides_[i];
  }
  return code;
}

World ProductModel::decode(std::size_t code) const {
  World w(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    w[i] = static_cast<int>(code / strides_[i]);
    code %= strides_[i];
  }
  return w;
}

bool ProductModel::in_product(const World& w) const {
  if (w.size() != factors_.size()) return false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 0 || w[i] >= kMaxPoints || !factors_[i].carrier().contains(w[i])) return false;
  }
  return true;
}

WorldSet ProductModel::full_product() const {
  WorldSet all(space_);
  for (std::size_t c = 0; c < space_; ++c)
    if (in_product(decode(c))) all.set(c);
  return all;
}

WorldSet ProductModel::value(const std::string& atom) const {
  auto it = valuation_.find(atom);
  if (it == valuation_.end()) return WorldSet(space_);
  return it->second & worlds_;
}

std::vector<World> ProductModel::world_list() const {
  std::vector<World> out;
  for (auto c = worlds_.find_first(); c != WorldSet::npos; c = worlds_.find_next(c)) out.push_back(decode(c));
  return out;
}

bool operator==(const ProductModel& a, const ProductModel& b) {
  if (a.factors_ != b.factors_ || a.worlds_ != b.worlds_) return false;
  auto covered = [](const ProductModel& x, const ProductModel& y) {
    for (const auto& [name, set] : x.valuation_)
      if (set.any() && y.value(name) != set) return false;
    return true;
  };
  return covered(a, b) && covered(b, a);
}

WorldSet world_set(const ProductModel& m, const std::vector<World>& ws) {
  WorldSet out = m.empty_set();
  for (const auto& w : ws) {
    if (!m.in_product(w)) throw std::invalid_argument("world " + format_world(m, w) + " outside the product");
    out.set(m.encode(w));
  }
  return out;
}

namespace {

void check_agent(const ProductModel& m, int agent) {
  if (agent < 1 || agent > m.agents())
    throw std::out_of_range("agent index " + std::to_string(agent) + " exceeds " + std::to_string(m.agents()) +
                            " factors");
}

// True if every surviving world in the open slice through `code` along factor i lies in e.
bool slice_inside(const ProductModel& m, std::size_t code, int i, PointSet open, const WorldSet& e) {
  const std::size_t stride = m.stride(i);
  const std::size_t base = code - static_cast<std::size_t>(m.decode(code)[i]) * stride;
  for (int u : open.members()) {
    const std::size_t c = base + static_cast<std::size_t>(u) * stride;
    if (m.worlds().test(c) && !e.test(c)) return false;
  }
  return true;
}

}  // namespace

WorldSet knowledge_set(const ProductModel& m, int agent, const WorldSet& e) {
  check_agent(m, agent);
  const int i = agent - 1;
  const Topology& t = m.factors()[i];
  WorldSet out = m.empty_set();
  const WorldSet& ws = m.worlds();
  for (auto c = ws.find_first(); c != WorldSet::npos; c = ws.find_next(c)) {
    const int xi = m.decode(c)[i];
    for (PointSet u : t.opens()) {
      if (u.contains(xi) && slice_inside(m, c, i, u, e)) {
        out.set(c);
        break;
      }
    }
  }
  return out;
}

ProductModel restrict_worlds(const ProductModel& m, const WorldSet& keep) {
  const WorldSet w = m.worlds() & keep;
  ProductValuation v;
  for (const auto& [name, set] : m.valuation()) v[name] = set & w;
  return ProductModel(m.factors(), w, std::move(v));
}

WorldSet extension_product(const ProductModel& m, const Formula& f) {
  const WorldSet& ws = m.worlds();
  switch (f.op()) {
    case Op::Atom: return m.value(f.name());
    case Op::Top: return ws;
    case Op::Bot: return m.empty_set();
    case Op::Not: return ws - extension_product(m, f.arg());
    case Op::And: return extension_product(m, f.lhs()) & extension_product(m, f.rhs());
    case Op::Or: return extension_product(m, f.lhs()) | extension_product(m, f.rhs());
    case Op::Implies: return (ws - extension_product(m, f.lhs())) | extension_product(m, f.rhs());
    case Op::KnowI: return knowledge_set(m, f.agent(), extension_product(m, f.arg()));
    case Op::Announce: {
      const WorldSet announced = extension_product(m, f.lhs());
      const ProductModel updated = restrict_worlds(m, announced);
      return (ws - announced) | extension_product(updated, f.rhs());
    }
    default:
      throw UnsupportedOperator(f.op(), "product");
  }
}

namespace {

bool sat(const ProductModel& m, const World& w, const Formula& f);

WorldSet satisfying_worlds(const ProductModel& m, const Formula& f) {
  WorldSet r = m.empty_set();
  for (const auto& w : m.world_list())
    if (sat(m, w, f)) r.set(m.encode(w));
  return r;
}

bool sat(const ProductModel& m, const World& w, const Formula& f) {
  switch (f.op()) {
    case Op::Atom: return m.value(f.name()).test(m.encode(w));
    case Op::Top: return true;
    case Op::Bot: return false;
    case Op::Not: return !sat(m, w, f.arg());
    case Op::And: return sat(m, w, f.lhs()) && sat(m, w, f.rhs());
    case Op::Or: return sat(m, w, f.lhs()) || sat(m, w, f.rhs());
    case Op::Implies: return !sat(m, w, f.lhs()) || sat(m, w, f.rhs());
    case Op::KnowI: {
      check_agent(m, f.agent());
      const int i = f.agent() - 1;
      for (PointSet u : m.factors()[i].opens()) {
        if (!u.contains(w[i])) continue;
        bool all = true;
        for (int x : u.members()) {
          World v = w;
          v[i] = x;
          if (m.worlds().test(m.encode(v)) && !sat(m, v, f.arg())) {
            all = false;
            break;
          }
        }
        if (all) return true;
      }
      return false;
    }
    case Op::Announce:
      if (!sat(m, w, f.lhs())) return true;
      return sat(restrict_worlds(m, satisfying_worlds(m, f.lhs())), w, f.rhs());
    default:
      throw UnsupportedOperator(f.op(), "product");
  }
}

}  // namespace

bool satisfies_product(const ProductModel& m, const World& w, const Formula& f) {
  if (!m.in_product(w) || !m.worlds().test(m.encode(w)))
    throw std::invalid_argument("world " + format_world(m, w) + " is not a surviving world");
  return sat(m, w, f);
}

ProductModel update_product(const ProductModel& m, const Formula& f) {
  return restrict_worlds(m, extension_product(m, f));
}

bool h_open(const ProductModel& m, const WorldSet& x, int axis) {
  check_agent(m, axis);
  if (x.size() != m.code_space() || !x.is_subset_of(m.full_product()))
    throw std::invalid_argument("set is not contained in the full product");
  const int i = axis - 1;
  const Topology& t = m.factors()[i];
  const std::size_t stride = m.stride(i);
  for (auto c = x.find_first(); c != WorldSet::npos; c = x.find_next(c)) {
    const int xi = m.decode(c)[i];
    const std::size_t base = c - static_cast<std::size_t>(xi) * stride;
    bool found = false;
    for (PointSet u : t.opens()) {
      if (!u.contains(xi)) continue;
      bool inside = true;
      for (int v : u.members()) {
        if (!x.test(base + static_cast<std::size_t>(v) * stride)) {
          inside = false;
          break;
        }
      }
      if (inside) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool h_open(const ProductModel& m, const std::vector<World>& x, int axis) {
  return h_open(m, world_set(m, x), axis);
}

std::string format_world(const ProductModel& m, const World& w) {
  std::string out = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ",";
    const bool known = i < m.factors().size() && w[i] >= 0 && w[i] < m.factors()[i].universe_size();
    out += known ? m.factors()[i].labels()[w[i]] : std::to_string(w[i]);
  }
  return out + ")";
}

ProductModel random_product_model(std::mt19937_64& rng, int factors, int max_points,
                                  const std::vector<std::string>& atom_names) {
  std::vector<Topology> fs;
  for (int i = 0; i < factors; ++i) {
    const int n = uniform_int(rng, 1, max_points);
    fs.push_back(random_topology(rng, n, uniform_int(rng, 0, 3)));
  }
  ProductModel shape = ProductModel::full(fs, {});
  ProductValuation v;
  for (const auto& a : atom_names) {
    WorldSet s = shape.empty_set();
    for (std::size_t c = 0; c < shape.code_space(); ++c)
      if (coin(rng)) s.set(c);
    v[a] = s;
  }
  return ProductModel::full(std::move(fs), std::move(v));
}

}  // namespace gpal
