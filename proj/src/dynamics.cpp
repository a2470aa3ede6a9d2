#include "gpal/dynamics.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gpal {

std::size_t model_size(const AnyModel& m) {
  if (auto* t = std::get_if<TopoModel>(&m)) return static_cast<std::size_t>(t->space.carrier().size());
  if (auto* s = std::get_if<SSLModel>(&m)) return situations(*s).size();
  return std::get<ProductModel>(m).worlds().count();
}

AnyModel update_any(const AnyModel& m, const Formula& f) {
  if (auto* t = std::get_if<TopoModel>(&m)) return update(*t, f);
  if (auto* s = std::get_if<SSLModel>(&m)) return update_ssl(*s, f);
  return update_product(std::get<ProductModel>(m), f);
}

std::string_view outcome_name(LimitOutcome o) {
  return o == LimitOutcome::Empty ? "empty" : "stabilized-nonempty";
}

namespace {

bool is_locus(const AnyModel& m, const Locus& at) {
  if (auto* t = std::get_if<TopoModel>(&m)) {
    auto* p = std::get_if<int>(&at);
    return p && *p >= 0 && *p < kMaxPoints && t->space.carrier().contains(*p);
  }
  if (auto* s = std::get_if<SSLModel>(&m)) {
    auto* sit = std::get_if<Situation>(&at);
    return sit && s->is_situation(*sit);
  }
  auto* w = std::get_if<World>(&at);
  const auto& pm = std::get<ProductModel>(m);
  return w && pm.in_product(*w) && pm.worlds().test(pm.encode(*w));
}

void finish(LimitTrace& t, const Formula& f) {
  t.outcome = model_size(t.final_model) == 0 ? LimitOutcome::Empty : LimitOutcome::StabilizedNonempty;
  const auto table = truth_table(t.final_model, f);
  t.holds_everywhere = std::all_of(table.begin(), table.end(), [](bool b) { return b; });
}

void record(LimitTrace& t, const AnyModel& m, std::size_t keep) {
  t.sizes.push_back(model_size(m));
  if (t.stages.size() < keep) t.stages.push_back(m);
}

}  // namespace

LimitTrace limit_model(const AnyModel& m, const Formula& f, std::size_t keep) {
  LimitTrace t;
  AnyModel cur = m;
  record(t, cur, keep);
  for (;;) {
    AnyModel next = update_any(cur, f);
    if (next == cur) break;
    cur = std::move(next);
    ++t.stage_count;
    record(t, cur, keep);
  }
  t.final_model = std::move(cur);
  finish(t, f);
  return t;
}

LimitTrace announce_while_true(const AnyModel& m, const Locus& at, const Formula& f, std::size_t keep) {
  if (!is_locus(m, at)) throw std::invalid_argument("locus " + format_locus(m, at) + " is not in the model");
  LimitTrace t;
  AnyModel cur = m;
  Locus here = at;
  record(t, cur, keep);
  for (;;) {
    if (!holds_at(cur, here, f)) {
      t.reason = StopReason::FalseAtLocus;
      break;
    }
    Locus next_locus = here;
    if (auto* s = std::get_if<SSLModel>(&cur)) {
      const auto e = extension_ssl(*s, f);
      auto& sit = std::get<Situation>(next_locus);
      sit.nbhd = e[s->sigma_index(sit.nbhd)];
    }
    AnyModel next = update_any(cur, f);
    if (next == cur) {
      t.reason = StopReason::Stable;
      break;
    }
    cur = std::move(next);
    here = std::move(next_locus);
    ++t.stage_count;
    record(t, cur, keep);
  }
  t.final_model = std::move(cur);
  t.final_locus = std::move(here);
  finish(t, f);
  return t;
}

CommonKnowledge common_knowledge_extension(const ProductModel& m, const Formula& f) {
  const WorldSet base = extension_product(m, f);
  CommonKnowledge ck{base, 0};
  for (;;) {
    WorldSet next = base;
    for (int i = 1; i <= m.agents(); ++i) next &= knowledge_set(m, i, ck.worlds);
    ++ck.iterations;
    if (next == ck.worlds) break;
    ck.worlds = std::move(next);
  }
  return ck;
}

std::string child_name(int i) { return std::string(1, static_cast<char>('a' + i)); }

Formula muddy_atom(int i) { return Formula::atom("m_" + child_name(i)); }

Formula father_announcement(int n) {
  Formula f = muddy_atom(0);
  for (int i = 1; i < n; ++i) f = Formula::disj(f, muddy_atom(i));
  return f;
}

Formula ignorance_formula(int n) {
  auto one = [](int i) {
    return Formula::conj(Formula::neg(Formula::know_i(i + 1, muddy_atom(i))),
                         Formula::neg(Formula::know_i(i + 1, Formula::neg(muddy_atom(i)))));
  };
  Formula f = one(0);
  for (int i = 1; i < n; ++i) f = Formula::conj(f, one(i));
  return f;
}

MuddyModel muddy_model(int n, const std::vector<int>& muddy) {
  if (n < 1 || n > kMaxChildren) throw std::invalid_argument("number of children must be in 1..6");
  std::vector<Topology> factors(n, Topology::indiscrete({"0", "1"}));
  World actual(n, 0);
  for (int i : muddy) {
    if (i < 0 || i >= n) throw std::invalid_argument("muddy child index out of range");
    actual[i] = 1;
  }
  ProductModel shape = ProductModel::full(factors, {});
  ProductValuation v;
  for (int i = 0; i < n; ++i) {
    WorldSet s = shape.empty_set();
    for (const World& w : shape.world_list())
      if (w[i] == 1) s.set(shape.encode(w));
    v["m_" + child_name(i)] = std::move(s);
  }
  return MuddyModel{ProductModel::full(std::move(factors), std::move(v)), std::move(actual)};
}

std::vector<int> parse_children(const std::string& list, int n) {
  std::vector<int> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.size() != 1 || item[0] < 'a' || item[0] >= 'a' + n)
      throw std::invalid_argument("unknown child '" + item + "' (expected letters a.." + child_name(n - 1) + ")");
    out.push_back(item[0] - 'a');
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MaskSet to_masks(const ProductModel& m, const WorldSet& ws) {
  MaskSet out;
  for (auto c = ws.find_first(); c != WorldSet::npos; c = ws.find_next(c)) {
    const World w = m.decode(c);
    unsigned mask = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i]) mask |= 1u << i;
    out.push_back(mask);
  }
  std::sort(out.begin(), out.end());
  return out;
}

MuddyRun run_muddy(int n, const std::vector<int>& muddy) {
  if (muddy.empty()) throw std::invalid_argument("at least one child must be muddy");
  MuddyModel mm = muddy_model(n, muddy);
  MuddyRun r;
  r.n = n;
  r.muddy = muddy;
  r.knows_after.assign(n, -1);
  r.knows_muddy.assign(n, false);
  r.rounds.push_back(to_masks(mm.model, mm.model.worlds()));

  const ProductModel after_father = update_product(mm.model, father_announcement(n));
  r.rounds.push_back(to_masks(after_father, after_father.worlds()));

  auto note_knowledge = [&](const ProductModel& m, int round) {
    for (int i = 0; i < n; ++i) {
      if (r.knows_after[i] >= 0) continue;
      const bool yes = satisfies_product(m, mm.actual, Formula::know_i(i + 1, muddy_atom(i)));
      const bool no = satisfies_product(m, mm.actual, Formula::know_i(i + 1, Formula::neg(muddy_atom(i))));
      if (yes || no) {
        r.knows_after[i] = round;
        r.knows_muddy[i] = yes;
      }
    }
  };
  note_knowledge(after_father, 0);

  const Formula ign = ignorance_formula(n);
  const LimitTrace pointed = announce_while_true(after_father, mm.actual, ign);
  for (std::size_t k = 1; k < pointed.stages.size(); ++k) {
    const auto& pm = std::get<ProductModel>(pointed.stages[k]);
    r.rounds.push_back(to_masks(pm, pm.worlds()));
    note_knowledge(pm, static_cast<int>(k));
  }
  r.unpointed = limit_model(after_father, ign);
  return r;
}

KripkeTrace kripke_oracle(int n, const std::vector<int>& muddy) {
  if (n < 1 || n > kMaxChildren) throw std::invalid_argument("number of children must be in 1..6");
  if (muddy.empty()) throw std::invalid_argument("at least one child must be muddy");
  unsigned actual = 0;
  for (int i : muddy) actual |= 1u << i;
  const unsigned total = 1u << n;
  std::vector<bool> alive(total, true);
  auto snapshot = [&](const std::vector<bool>& a) {
    MaskSet s;
    for (unsigned w = 0; w < total; ++w)
      if (a[w]) s.push_back(w);
    return s;
  };
  // Child i cannot tell w from w with bit i flipped; it knows its state iff
  // that twin is gone.
  auto knows = [&](const std::vector<bool>& a, unsigned w, int i) { return !a[w ^ (1u << i)]; };
  auto ignorant = [&](const std::vector<bool>& a, unsigned w) {
    for (int i = 0; i < n; ++i)
      if (knows(a, w, i)) return false;
    return true;
  };
  auto step = [&](const std::vector<bool>& a) {
    std::vector<bool> b(total, false);
    for (unsigned w = 0; w < total; ++w) b[w] = a[w] && ignorant(a, w);
    return b;
  };

  KripkeTrace k;
  k.knows_after.assign(n, -1);
  k.knows_muddy.assign(n, false);
  k.rounds.push_back(snapshot(alive));
  alive[0] = false;
  k.rounds.push_back(snapshot(alive));
  auto note = [&](int round) {
    for (int i = 0; i < n; ++i) {
      if (k.knows_after[i] < 0 && knows(alive, actual, i)) {
        k.knows_after[i] = round;
        k.knows_muddy[i] = (actual >> i) & 1u;
      }
    }
  };
  note(0);
  const std::vector<bool> after_father = alive;
  int round = 0;
  while (ignorant(alive, actual)) {
    std::vector<bool> next = step(alive);
    if (next == alive) break;
    alive = std::move(next);
    k.rounds.push_back(snapshot(alive));
    note(++round);
  }
  std::vector<bool> a = after_father;
  k.unpointed.push_back(snapshot(a));
  for (;;) {
    std::vector<bool> next = step(a);
    if (next == a) break;
    a = std::move(next);
    k.unpointed.push_back(snapshot(a));
  }
  return k;
}

std::string render_muddy_summary(const MuddyRun& r) {
  std::ostringstream os;
  for (std::size_t k = 0; k < r.rounds.size(); ++k) os << (k ? " → " : "") << r.rounds[k].size();
  int last = -1;
  for (int x : r.knows_after) last = std::max(last, x);
  std::vector<std::string> parts;
  for (int i = 0; i < r.n; ++i) {
    if (r.knows_after[i] < 0) continue;
    const std::string atom = "m_" + child_name(i);
    parts.push_back(child_name(i) + " knows " + (r.knows_muddy[i] ? atom : "~" + atom));
  }
  if (!parts.empty()) {
    os << "; ";
    // Group children by the round in which they learnt their state.
    bool first_group = true;
    for (int round = 0; round <= last; ++round) {
      std::vector<std::string> group;
      for (int i = 0, j = 0; i < r.n; ++i) {
        if (r.knows_after[i] < 0) continue;
        if (r.knows_after[i] == round) group.push_back(parts[j]);
        ++j;
      }
      if (group.empty()) continue;
      if (!first_group) os << "; ";
      first_group = false;
      for (std::size_t g = 0; g < group.size(); ++g) os << (g ? ", " : "") << group[g];
      if (round == 0)
        os << " after the father's announcement";
      else
        os << " after round " << round;
    }
  }
  return os.str();
}

std::string render_trace(const LimitTrace& t) {
  std::ostringstream os;
  for (std::size_t k = 0; k < t.sizes.size(); ++k) os << "stage " << k << ": " << t.sizes[k] << "\n";
  os << "stages: " << t.stage_count << "\n";
  if (t.reason == StopReason::FalseAtLocus)
    os << "outcome: stopped, announcement false at the tracked locus\n";
  else
    os << "outcome: " << outcome_name(t.outcome) << "\n";
  return os.str();
}

}  // namespace gpal
