#include "gpal/rewrite.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "gpal/random.hpp"

namespace gpal {

std::string_view semantics_name(Semantics s) {
  switch (s) {
    case Semantics::Topo: return "topo";
    case Semantics::Ssl: return "ssl";
    case Semantics::Product: return "product";
  }
  return "?";
}

Semantics parse_semantics(std::string_view name) {
  if (name == "topo") return Semantics::Topo;
  if (name == "ssl") return Semantics::Ssl;
  if (name == "product") return Semantics::Product;
  throw std::invalid_argument("unknown semantics '" + std::string(name) + "' (expected topo, ssl or product)");
}

int axiom_count(Semantics s) { return s == Semantics::Ssl ? 5 : 4; }

AxiomId AxiomId::make(Semantics s, int index) {
  if (index < 1 || index > axiom_count(s))
    throw std::invalid_argument("axiom index " + std::to_string(index) + " out of range for " +
                                std::string(semantics_name(s)));
  return AxiomId{s, index};
}

std::string AxiomId::name() const { return std::string(semantics_name(semantics)) + "/" + std::to_string(index); }

namespace {

bool allowed_modal(Op op, Semantics s) {
  switch (s) {
    case Semantics::Topo: return op == Op::Interior || op == Op::Closure;
    case Semantics::Ssl: return op == Op::Know || op == Op::Possible || op == Op::Effort || op == Op::EffortDual;
    case Semantics::Product: return op == Op::KnowI;
  }
  return false;
}

Formula rebuild(const Formula& f, std::vector<Formula> kids) {
  if (kids.empty()) return f;
  if (kids.size() == 1) return Formula::unary(f.op(), std::move(kids[0]), f.agent());
  return Formula::binary(f.op(), std::move(kids[0]), std::move(kids[1]));
}

// Rewrites a derived head (Or, Implies, dual modality) into primitive form.
std::optional<Formula> expand_head(const Formula& b) {
  switch (b.op()) {
    case Op::Or: return Formula::neg(Formula::conj(Formula::neg(b.lhs()), Formula::neg(b.rhs())));
    case Op::Implies: return Formula::neg(Formula::conj(b.lhs(), Formula::neg(b.rhs())));
    case Op::Closure: return Formula::neg(Formula::interior(Formula::neg(b.arg())));
    case Op::Possible: return Formula::neg(Formula::know(Formula::neg(b.arg())));
    case Op::EffortDual: return Formula::neg(Formula::effort(Formula::neg(b.arg())));
    default: return std::nullopt;
  }
}

// Single schema step on [a]b where b has a primitive head that is not an announcement.
Formula apply_schema(const Formula& a, const Formula& b, Semantics s, std::vector<RewriteStep>* trace) {
  Formula out = Formula::top();
  int index = 0;
  switch (b.op()) {
    case Op::Atom:
    case Op::Top:
    case Op::Bot:
      index = 1;
      out = Formula::implies(a, b);
      break;
    case Op::Not:
      index = 2;
      out = Formula::implies(a, Formula::neg(Formula::announce(a, b.arg())));
      break;
    case Op::And:
      index = 3;
      out = Formula::conj(Formula::announce(a, b.lhs()), Formula::announce(a, b.rhs()));
      break;
    case Op::Interior:
    case Op::Know:
    case Op::KnowI:
    case Op::Effort:
      if (!allowed_modal(b.op(), s)) throw UnsupportedOperator(b.op(), std::string(semantics_name(s)));
      index = b.op() == Op::Effort ? 5 : 4;
      out = Formula::implies(a, Formula::unary(b.op(), Formula::announce(a, b.arg()), b.agent()));
      break;
    default:
      throw std::logic_error("apply_schema: unexpected head " + std::string(op_name(b.op())));
  }
  if (trace) trace->push_back({AxiomId{s, index}, Formula::announce(a, b), out});
  return out;
}

// Pushes [a] through an announcement-free body b.
Formula push(const Formula& a, const Formula& b, Semantics s, std::vector<RewriteStep>* trace) {
  if (auto e = expand_head(b)) return push(a, *e, s, trace);
  switch (b.op()) {
    case Op::Atom:
    case Op::Top:
    case Op::Bot:
      return apply_schema(a, b, s, trace);
    case Op::Not:
      apply_schema(a, b, s, trace);
      return Formula::implies(a, Formula::neg(push(a, b.arg(), s, trace)));
    case Op::And:
      apply_schema(a, b, s, trace);
      return Formula::conj(push(a, b.lhs(), s, trace), push(a, b.rhs(), s, trace));
    default:
      apply_schema(a, b, s, trace);
      return Formula::implies(a, Formula::unary(b.op(), push(a, b.arg(), s, trace), b.agent()));
  }
}

Formula reduce_inner(const Formula& f, Semantics s, std::vector<RewriteStep>* trace) {
  if (f.op() == Op::Announce) {
    const Formula a = reduce_inner(f.lhs(), s, trace);
    const Formula b = reduce_inner(f.rhs(), s, trace);
    return push(a, b, s, trace);
  }
  if (!contains_announcement(f)) return f;
  std::vector<Formula> kids;
  for (std::size_t i = 0; i < f.arity(); ++i) kids.push_back(reduce_inner(f.child(i), s, trace));
  return rebuild(f, std::move(kids));
}

std::optional<Formula> rewrite_once(const Formula& f, Semantics s, std::vector<RewriteStep>* trace) {
  if (f.op() == Op::Announce) {
    const Formula& body = f.rhs();
    if (body.op() == Op::Announce) {
      auto inner = rewrite_once(body, s, trace);
      return Formula::announce(f.lhs(), *inner);
    }
    Formula head = body;
    while (auto e = expand_head(head)) head = *e;
    return apply_schema(f.lhs(), head, s, trace);
  }
  for (std::size_t i = 0; i < f.arity(); ++i) {
    if (!contains_announcement(f.child(i))) continue;
    std::vector<Formula> kids;
    for (std::size_t j = 0; j < f.arity(); ++j) kids.push_back(f.child(j));
    kids[i] = *rewrite_once(f.child(i), s, trace);
    return rebuild(f, std::move(kids));
  }
  return std::nullopt;
}

}  // namespace

void check_fragment(const Formula& f, Semantics s) {
  if (f.is_unary_modal() && !allowed_modal(f.op(), s))
    throw UnsupportedOperator(f.op(), std::string(semantics_name(s)));
  for (std::size_t i = 0; i < f.arity(); ++i) check_fragment(f.child(i), s);
}

Formula reduce(const Formula& f, Semantics s, std::vector<RewriteStep>* trace) {
  check_fragment(f, s);
  return reduce_inner(f, s, trace);
}

Formula reduce_outermost(const Formula& f, Semantics s, std::vector<RewriteStep>* trace) {
  check_fragment(f, s);
  Formula cur = f;
  while (auto next = rewrite_once(cur, s, trace)) cur = *next;
  return cur;
}

AxiomInstance instantiate(AxiomId axiom, const Formula& phi, const Formula& psi, const std::optional<Formula>& chi,
                          int agent) {
  switch (axiom.index) {
    case 1:
      return {Formula::announce(phi, psi), Formula::implies(phi, psi)};
    case 2:
      return {Formula::announce(phi, Formula::neg(psi)),
              Formula::implies(phi, Formula::neg(Formula::announce(phi, psi)))};
    case 3: {
      if (!chi) throw std::invalid_argument("conjunction schema needs a third formula");
      return {Formula::announce(phi, Formula::conj(psi, *chi)),
              Formula::conj(Formula::announce(phi, psi), Formula::announce(phi, *chi))};
    }
    case 4: {
      Op op = Op::Interior;
      if (axiom.semantics == Semantics::Ssl) op = Op::Know;
      if (axiom.semantics == Semantics::Product) op = Op::KnowI;
      return {Formula::announce(phi, Formula::unary(op, psi, agent)),
              Formula::implies(phi, Formula::unary(op, Formula::announce(phi, psi), agent))};
    }
    case 5:
      return {Formula::announce(phi, Formula::effort(psi)),
              Formula::implies(phi, Formula::effort(Formula::announce(phi, psi)))};
    default:
      throw std::invalid_argument("bad axiom index");
  }
}

Semantics semantics_of(const AnyModel& m) {
  switch (m.index()) {
    case 0: return Semantics::Topo;
    case 1: return Semantics::Ssl;
    default: return Semantics::Product;
  }
}

std::vector<Locus> loci(const AnyModel& m) {
  std::vector<Locus> out;
  if (auto* t = std::get_if<TopoModel>(&m)) {
    for (int p : t->space.carrier().members()) out.emplace_back(p);
  } else if (auto* s = std::get_if<SSLModel>(&m)) {
    for (const auto& sit : situations(*s)) out.emplace_back(sit);
  } else {
    for (auto& w : std::get<ProductModel>(m).world_list()) out.emplace_back(std::move(w));
  }
  return out;
}

std::vector<bool> truth_table(const AnyModel& m, const Formula& f) {
  std::vector<bool> out;
  if (auto* t = std::get_if<TopoModel>(&m)) {
    const PointSet e = extension(*t, f);
    for (int p : t->space.carrier().members()) out.push_back(e.contains(p));
  } else if (auto* s = std::get_if<SSLModel>(&m)) {
    const auto e = extension_ssl(*s, f);
    for (const auto& sit : situations(*s)) out.push_back(e[s->sigma_index(sit.nbhd)].contains(sit.point));
  } else {
    const auto& pm = std::get<ProductModel>(m);
    const WorldSet e = extension_product(pm, f);
    const WorldSet& ws = pm.worlds();
    for (auto c = ws.find_first(); c != WorldSet::npos; c = ws.find_next(c)) out.push_back(e.test(c));
  }
  return out;
}

bool holds_at(const AnyModel& m, const Locus& at, const Formula& f) {
  if (auto* t = std::get_if<TopoModel>(&m)) return satisfies(*t, std::get<int>(at), f);
  if (auto* s = std::get_if<SSLModel>(&m)) return satisfies_ssl(*s, std::get<Situation>(at), f);
  return satisfies_product(std::get<ProductModel>(m), std::get<World>(at), f);
}

std::string format_locus(const AnyModel& m, const Locus& at) {
  if (auto* t = std::get_if<TopoModel>(&m)) {
    const int p = std::get<int>(at);
    return p < t->space.universe_size() ? t->space.labels()[p] : std::to_string(p);
  }
  if (auto* s = std::get_if<SSLModel>(&m)) return format_situation(*s, std::get<Situation>(at));
  return format_world(std::get<ProductModel>(m), std::get<World>(at));
}

Equivalence equivalent_on(const AnyModel& m, const Formula& f, const Formula& g) {
  const auto a = truth_table(m, f);
  const auto b = truth_table(m, g);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return Equivalence{false, loci(m)[i]};
  }
  return Equivalence{true, std::nullopt};
}

bool reverify(const Counterexample& c) {
  const bool l = holds_at(c.model, c.at, c.instance.lhs);
  const bool r = holds_at(c.model, c.at, c.instance.rhs);
  return l != r && l == c.lhs_value && r == c.rhs_value;
}

std::vector<Formula> schema_pool(Semantics s, int agents) {
  const Formula p = Formula::atom("p"), q = Formula::atom("q");
  std::vector<Formula> pool{p, q, Formula::neg(p), Formula::conj(p, q), Formula::disj(p, Formula::neg(q))};
  std::vector<std::pair<Op, int>> modals;
  switch (s) {
    case Semantics::Topo:
      modals = {{Op::Interior, 0}};
      pool.push_back(Formula::closure(q));
      break;
    case Semantics::Ssl:
      modals = {{Op::Know, 0}, {Op::Effort, 0}};
      pool.push_back(Formula::possible(q));
      pool.push_back(Formula::effort_dual(p));
      break;
    case Semantics::Product:
      for (int i = 1; i <= agents; ++i) modals.push_back({Op::KnowI, i});
      break;
  }
  for (auto [op, agent] : modals) {
    pool.push_back(Formula::unary(op, p, agent));
    pool.push_back(Formula::unary(op, Formula::neg(q), agent));
    pool.push_back(Formula::unary(op, Formula::disj(p, q), agent));
    pool.push_back(Formula::conj(q, Formula::neg(Formula::unary(op, p, agent))));
  }
  return pool;
}

AnyModel random_model(std::mt19937_64& rng, Semantics s) {
  const std::vector<std::string> names{"p", "q"};
  switch (s) {
    case Semantics::Topo: {
      const int n = uniform_int(rng, 1, 6);
      return random_topo_model(rng, n, uniform_int(rng, 0, 4), names);
    }
    case Semantics::Ssl:
      return random_ssl_model(rng, 5, 5, names);
    case Semantics::Product:
      return random_product_model(rng, uniform_int(rng, 2, 3), 4, names);
  }
  throw std::logic_error("unreachable");
}

namespace {

int agent_count(const AnyModel& m) {
  if (auto* pm = std::get_if<ProductModel>(&m)) return pm->agents();
  return 1;
}

std::vector<AxiomInstance> instances_for(AxiomId axiom, const std::vector<Formula>& pool, int agents) {
  std::vector<AxiomInstance> out;
  const std::vector<Formula> atom_pool{Formula::atom("p"), Formula::atom("q")};
  for (const auto& phi : pool) {
    switch (axiom.index) {
      case 1:
        for (const auto& a : atom_pool) out.push_back(instantiate(axiom, phi, a));
        break;
      case 3:
        for (const auto& psi : pool)
          for (const auto& chi : pool) out.push_back(instantiate(axiom, phi, psi, chi));
        break;
      case 4:
        for (const auto& psi : pool)
          for (int i = 1; i <= (axiom.semantics == Semantics::Product ? agents : 1); ++i)
            out.push_back(instantiate(axiom, phi, psi, std::nullopt, i));
        break;
      default:
        for (const auto& psi : pool) out.push_back(instantiate(axiom, phi, psi));
        break;
    }
  }
  return out;
}

std::optional<Counterexample> find_disagreement(const AnyModel& m, const AxiomInstance& inst) {
  const auto a = truth_table(m, inst.lhs);
  const auto b = truth_table(m, inst.rhs);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return Counterexample{m, loci(m)[i], inst, a[i], b[i]};
  }
  return std::nullopt;
}

std::vector<AnyModel> shrink_candidates(const AnyModel& m) {
  std::vector<AnyModel> out;
  if (auto* t = std::get_if<TopoModel>(&m)) {
    for (int p : t->space.carrier().members()) out.emplace_back(restrict_to(*t, t->space.carrier().minus(PointSet::single(p))));
    for (const auto& [name, set] : t->valuation) {
      for (int p : set.members()) {
        TopoModel c = *t;
        c.valuation[name] = set.minus(PointSet::single(p));
        out.emplace_back(std::move(c));
      }
    }
  } else if (auto* s = std::get_if<SSLModel>(&m)) {
    for (std::size_t i = 0; i < s->sigma().size(); ++i) {
      auto sigma = s->sigma();
      sigma.erase(sigma.begin() + static_cast<long>(i));
      out.emplace_back(SSLModel::make(s->labels(), s->points(), std::move(sigma), s->valuation()));
    }
    for (int p : s->points().members()) {
      const PointSet drop = PointSet::single(p);
      std::vector<PointSet> sigma;
      for (PointSet u : s->sigma())
        if (!u.minus(drop).empty()) sigma.push_back(u.minus(drop));
      Valuation v;
      for (const auto& [name, set] : s->valuation()) v[name] = set.minus(drop);
      out.emplace_back(SSLModel::make(s->labels(), s->points().minus(drop), std::move(sigma), std::move(v)));
    }
    for (const auto& [name, set] : s->valuation()) {
      for (int p : set.members()) {
        Valuation v = s->valuation();
        v[name] = set.minus(PointSet::single(p));
        out.emplace_back(SSLModel::make(s->labels(), s->points(), s->sigma(), std::move(v)));
      }
    }
  } else {
    const auto& pm = std::get<ProductModel>(m);
    const WorldSet& ws = pm.worlds();
    for (auto c = ws.find_first(); c != WorldSet::npos; c = ws.find_next(c)) {
      WorldSet keep = ws;
      keep.reset(c);
      out.emplace_back(restrict_worlds(pm, keep));
    }
    for (const auto& [name, set] : pm.valuation()) {
      for (auto c = set.find_first(); c != WorldSet::npos; c = set.find_next(c)) {
        ProductValuation v = pm.valuation();
        v[name].reset(c);
        out.emplace_back(ProductModel(pm.factors(), pm.worlds(), std::move(v)));
      }
    }
  }
  return out;
}

}  // namespace

Counterexample minimize(const Counterexample& c) {
  Counterexample best = c;
  bool progress = true;
  while (progress) {
    progress = false;
    for (auto& candidate : shrink_candidates(best.model)) {
      if (auto found = find_disagreement(candidate, best.instance)) {
        best = std::move(*found);
        progress = true;
        break;
      }
    }
  }
  return best;
}

ValidityReport check_axiom(AxiomId axiom, std::size_t sample_size, std::uint64_t seed,
                           std::size_t max_counterexamples) {
  ValidityReport report;
  report.axiom = axiom;
  report.seed = seed;
  std::mt19937_64 rng(seed);
  std::vector<AnyModel> models;
  for (std::size_t k = 0; k < sample_size; ++k) models.push_back(random_model(rng, axiom.semantics));

  struct Batch {
    std::size_t instances = 0, loci = 0, failing = 0;
    std::vector<Counterexample> found;
  };
  std::vector<Batch> batches(models.size());
  auto work = [&](std::size_t k) {
    const AnyModel& model = models[k];
    const int agents = agent_count(model);
    const auto insts = instances_for(axiom, schema_pool(axiom.semantics, agents), agents);
    const std::size_t nloci = loci(model).size();
    Batch& b = batches[k];
    for (const auto& inst : insts) {
      ++b.instances;
      b.loci += nloci;
      if (auto ce = find_disagreement(model, inst)) {
        ++b.failing;
        if (b.found.size() < max_counterexamples) b.found.push_back(std::move(*ce));
      }
    }
  };
  const std::size_t threads =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(models.size(), 1));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t k; (k = next++) < models.size();) work(k);
    });
  for (std::size_t k; (k = next++) < models.size();) work(k);
  for (auto& t : pool) t.join();

  // Merge in model order so the report does not depend on scheduling.
  for (std::size_t k = 0; k < models.size(); ++k) {
    Batch& b = batches[k];
    ++report.models_checked;
    report.instances_checked += b.instances;
    report.loci_checked += b.loci;
    report.failing_instances += b.failing;
    for (auto& ce : b.found)
      if (report.counterexamples.size() < max_counterexamples) report.counterexamples.push_back(std::move(ce));
  }
  report.pool = schema_pool(axiom.semantics, models.empty() ? 2 : agent_count(models.front()));
  if (!report.counterexamples.empty()) report.minimal = minimize(report.counterexamples.front());
  return report;
}

}  // namespace gpal
