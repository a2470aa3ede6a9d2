#pragma once

#include <boost/dynamic_bitset.hpp>
#include <random>
#include <string>
#include <vector>

#include "gpal/rational.hpp"
#include "gpal/topology.hpp"

namespace gpal {

// Nested description of a game: a leaf carries a payoff vector, an internal
// node an owner (1-based player) and ordered children.
struct GameSpec {
  int player = 0;
  std::vector<Rational> payoff;
  std::vector<GameSpec> children;

  static GameSpec leaf(std::vector<Rational> payoff);
  static GameSpec node(int player, std::vector<GameSpec> children);
};

struct GameNode {
  int player = 0;  // 0 for leaves
  std::vector<Rational> payoff;
  std::vector<int> children;
  int parent = -1;
  bool is_leaf() const { return children.empty(); }
};

using NodeSet = boost::dynamic_bitset<>;

// Finite perfect-information game tree, nodes numbered in preorder (root 0).
class GameTree {
 public:
  // Throws std::invalid_argument on payoffs at internal nodes, leaves without
  // payoffs, inconsistent payoff lengths, or owners outside 1..players.
  explicit GameTree(const GameSpec& spec);

  const std::vector<GameNode>& nodes() const { return nodes_; }
  const GameNode& node(int i) const { return nodes_.at(i); }
  int size() const { return static_cast<int>(nodes_.size()); }
  int players() const { return players_; }
  int depth() const;
  std::vector<int> leaves() const;
  NodeSet all_nodes() const { return NodeSet(nodes_.size()).set(); }
  GameSpec spec() const;

 private:
  int add(const GameSpec& s, int parent);
  std::vector<GameNode> nodes_;
  int players_ = 0;
};

enum class TreeOrientation {
  DescendantClosed,  // opens closed under taking children (default)
  AncestorClosed,
};

// Alexandrov topology of the tree order. Throws std::length_error beyond 64 nodes.
Topology tree_topology(const GameTree& t, TreeOrientation orientation = TreeOrientation::DescendantClosed);

struct BackwardInduction {
  std::vector<Rational> value;
  std::vector<int> path;  // root to leaf
  NodeSet subtree;        // nodes on the path
  bool generic = true;    // false if any mover faced a tie (lowest index chosen)
};

BackwardInduction backward_induction(const GameTree& t);

struct GameModel {
  const GameTree* tree = nullptr;
  NodeSet surviving;
};

// Nodes reached without anyone taking a strictly dominated move: move a
// dominates b for the mover when the mover's worst surviving payoff after a
// beats the best surviving payoff after b.
NodeSet rational_extension(const GameModel& g);

struct GameLimit {
  std::vector<std::size_t> sizes;  // surviving node counts per round, starting with the full tree
  std::size_t rounds = 0;          // announcements that changed the model
  NodeSet surviving;
  std::vector<int> leaves;         // surviving leaves at the fixpoint
  bool generic = true;
  bool matches_backward_induction = false;
};

GameLimit bi_via_announcements(const GameTree& t);

// Random tree with depth at most max_depth (edges), branching 1..max_branching
// at internal nodes, two players, payoffs all distinct per player.
GameTree random_generic_tree(std::mt19937_64& rng, int max_depth, int max_branching);

std::string format_payoff(const std::vector<Rational>& payoff);

}  // namespace gpal
