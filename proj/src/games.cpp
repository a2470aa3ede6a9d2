#include "gpal/games.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "gpal/random.hpp"

namespace gpal {

GameSpec GameSpec::leaf(std::vector<Rational> payoff) { return GameSpec{0, std::move(payoff), {}}; }

GameSpec GameSpec::node(int player, std::vector<GameSpec> children) {
  return GameSpec{player, {}, std::move(children)};
}

GameTree::GameTree(const GameSpec& spec) {
  add(spec, -1);
  for (const auto& n : nodes_) {
    if (n.is_leaf()) {
      if (n.payoff.empty()) throw std::invalid_argument("leaf without payoff");
      if (players_ == 0) players_ = static_cast<int>(n.payoff.size());
      if (static_cast<int>(n.payoff.size()) != players_)
        throw std::invalid_argument("inconsistent payoff vector lengths");
    }
  }
  for (const auto& n : nodes_) {
    if (!n.is_leaf() && (n.player < 1 || n.player > players_))
      throw std::invalid_argument("node owner " + std::to_string(n.player) + " outside 1.." +
                                  std::to_string(players_));
  }
}

int GameTree::add(const GameSpec& s, int parent) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(GameNode{s.player, s.payoff, {}, parent});
  if (!s.children.empty() && !s.payoff.empty()) throw std::invalid_argument("payoff at an internal node");
  if (s.children.empty() && s.player != 0) throw std::invalid_argument("internal node without children");
  for (const auto& c : s.children) {
    const int cid = add(c, id);
    nodes_[id].children.push_back(cid);
  }
  return id;
}

int GameTree::depth() const {
  std::vector<int> d(nodes_.size(), 0);
  int best = 0;
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    d[i] = d[nodes_[i].parent] + 1;
    best = std::max(best, d[i]);
  }
  return best;
}

std::vector<int> GameTree::leaves() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (nodes_[i].is_leaf()) out.push_back(i);
  return out;
}

GameSpec GameTree::spec() const {
  auto build = [&](auto&& self, int i) -> GameSpec {
    const auto& n = nodes_[i];
    if (n.is_leaf()) return GameSpec::leaf(n.payoff);
    std::vector<GameSpec> kids;
    for (int c : n.children) kids.push_back(self(self, c));
    return GameSpec::node(n.player, std::move(kids));
  };
  return build(build, 0);
}

Topology tree_topology(const GameTree& t, TreeOrientation orientation) {
  if (t.size() > kMaxPoints) throw std::length_error("tree_topology supports at most 64 nodes");
  const auto& nodes = t.nodes();
  std::vector<PointSet> cone(nodes.size());
  if (orientation == TreeOrientation::DescendantClosed) {
    for (int i = t.size() - 1; i >= 0; --i) {
      cone[i] = PointSet::single(i);
      for (int c : nodes[i].children) cone[i] |= cone[c];
    }
  } else {
    for (int i = 0; i < t.size(); ++i) {
      cone[i] = PointSet::single(i);
      if (nodes[i].parent >= 0) cone[i] |= cone[nodes[i].parent];
    }
  }
  std::vector<std::string> labels;
  for (int i = 0; i < t.size(); ++i) labels.push_back("n" + std::to_string(i));
  return generate_from_subbasis(std::move(labels), cone);
}

BackwardInduction backward_induction(const GameTree& t) {
  const auto& nodes = t.nodes();
  std::vector<std::vector<Rational>> value(nodes.size());
  std::vector<int> choice(nodes.size(), -1);
  BackwardInduction r;
  for (int i = t.size() - 1; i >= 0; --i) {
    const auto& n = nodes[i];
    if (n.is_leaf()) {
      value[i] = n.payoff;
      continue;
    }
    const int o = n.player - 1;
    int best = n.children.front();
    for (std::size_t k = 1; k < n.children.size(); ++k) {
      const int c = n.children[k];
      if (value[c][o] > value[best][o]) best = c;
    }
    for (int c : n.children)
      if (c != best && value[c][o] == value[best][o]) r.generic = false;
    choice[i] = best;
    value[i] = value[best];
  }
  r.value = value[0];
  r.subtree = NodeSet(nodes.size());
  for (int i = 0; i != -1; i = choice[i]) {
    r.path.push_back(i);
    r.subtree.set(i);
  }
  return r;
}

NodeSet rational_extension(const GameModel& g) {
  const GameTree& t = *g.tree;
  const auto& nodes = t.nodes();
  const int players = t.players();
  // worst/best payoff per player over surviving leaves below each node
  std::vector<std::vector<std::optional<Rational>>> lo(nodes.size(), std::vector<std::optional<Rational>>(players));
  auto hi = lo;
  for (int i = t.size() - 1; i >= 0; --i) {
    if (!g.surviving.test(i)) continue;
    if (nodes[i].is_leaf()) {
      for (int p = 0; p < players; ++p) lo[i][p] = hi[i][p] = nodes[i].payoff[p];
      continue;
    }
    for (int c : nodes[i].children) {
      if (!g.surviving.test(c) || !lo[c][0]) continue;
      for (int p = 0; p < players; ++p) {
        if (!lo[i][p] || *lo[c][p] < *lo[i][p]) lo[i][p] = lo[c][p];
        if (!hi[i][p] || *hi[c][p] > *hi[i][p]) hi[i][p] = hi[c][p];
      }
    }
  }
  NodeSet rational(nodes.size());
  if (!g.surviving.test(0)) return rational;
  rational.set(0);
  for (int i = 0; i < t.size(); ++i) {
    if (!rational.test(i) || nodes[i].is_leaf()) continue;
    const int o = nodes[i].player - 1;
    for (int c : nodes[i].children) {
      if (!g.surviving.test(c) || !hi[c][o]) continue;
      bool dominated = false;
      for (int d : nodes[i].children) {
        if (d != c && g.surviving.test(d) && lo[d][o] && *lo[d][o] > *hi[c][o]) {
          dominated = true;
          break;
        }
      }
      if (!dominated) rational.set(c);
    }
  }
  return rational;
}

GameLimit bi_via_announcements(const GameTree& t) {
  GameLimit r;
  const BackwardInduction bi = backward_induction(t);
  r.generic = bi.generic;
  GameModel g{&t, t.all_nodes()};
  r.sizes.push_back(g.surviving.count());
  for (;;) {
    NodeSet next = rational_extension(g);
    if (next == g.surviving) break;
    g.surviving = std::move(next);
    ++r.rounds;
    r.sizes.push_back(g.surviving.count());
  }
  r.surviving = g.surviving;
  for (int leaf : t.leaves())
    if (r.surviving.test(leaf)) r.leaves.push_back(leaf);
  r.matches_backward_induction = r.leaves.size() == 1 && r.leaves.front() == bi.path.back();
  return r;
}

namespace {

GameSpec random_spec(std::mt19937_64& rng, int depth, int max_depth, int max_branching, bool force_internal) {
  const bool internal = depth < max_depth && (force_internal || coin(rng));
  if (!internal) return GameSpec::leaf({});
  const int k = uniform_int(rng, 1, max_branching);
  std::vector<GameSpec> kids;
  for (int i = 0; i < k; ++i) kids.push_back(random_spec(rng, depth + 1, max_depth, max_branching, false));
  return GameSpec::node(uniform_int(rng, 1, 2), std::move(kids));
}

void assign_payoffs(GameSpec& s, std::vector<std::vector<int>>& pools, std::size_t& next) {
  if (s.children.empty()) {
    s.payoff = {Rational(pools[0][next]), Rational(pools[1][next])};
    ++next;
    return;
  }
  for (auto& c : s.children) assign_payoffs(c, pools, next);
}

std::size_t count_leaves(const GameSpec& s) {
  if (s.children.empty()) return 1;
  std::size_t n = 0;
  for (const auto& c : s.children) n += count_leaves(c);
  return n;
}

}  // namespace

GameTree random_generic_tree(std::mt19937_64& rng, int max_depth, int max_branching) {
  GameSpec s = random_spec(rng, 0, max_depth, max_branching, max_depth > 0);
  const std::size_t leaves = count_leaves(s);
  std::vector<std::vector<int>> pools(2);
  for (auto& pool : pools) {
    for (std::size_t i = 0; i < leaves; ++i) pool.push_back(static_cast<int>(i) + 1);
    for (std::size_t i = leaves; i > 1; --i) std::swap(pool[i - 1], pool[uniform_below(rng, i)]);
  }
  std::size_t next = 0;
  assign_payoffs(s, pools, next);
  return GameTree(s);
}

std::string format_payoff(const std::vector<Rational>& payoff) {
  std::string out = "(";
  for (std::size_t i = 0; i < payoff.size(); ++i) {
    if (i) out += ",";
    out += format_rational(payoff[i]);
  }
  return out + ")";
}

}  // namespace gpal
