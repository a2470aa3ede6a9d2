#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gpal {

enum class Op {
  Atom,
  Top,
  Bot,
  Not,
  And,
  Or,
  Implies,
  Interior,    // I
  Closure,     // C
  Know,        // K  (single-agent, subset spaces)
  Possible,    // L
  Effort,      // E  (box over shrinking neighbourhoods)
  EffortDual,  // D
  KnowI,       // K1..K9 (product models)
  Announce,    // [!phi] psi
};

std::string_view op_name(Op op);

// Immutable formula value. Copies share structure.
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula top();
  static Formula bot();
  static Formula neg(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula interior(Formula f);
  static Formula closure(Formula f);
  static Formula know(Formula f);
  static Formula possible(Formula f);
  static Formula effort(Formula f);
  static Formula effort_dual(Formula f);
  static Formula know_i(int agent, Formula f);
  static Formula announce(Formula announced, Formula body);

  // Builds a node with the same shape as `op` from the given children.
  static Formula unary(Op op, Formula f, int agent = 0);
  static Formula binary(Op op, Formula a, Formula b);

  Op op() const;
  const std::string& name() const;  // Atom only
  int agent() const;                // KnowI only
  std::size_t arity() const;
  const Formula& child(std::size_t i) const;
  const Formula& arg() const { return child(0); }
  const Formula& lhs() const { return child(0); }
  const Formula& rhs() const { return child(1); }

  bool is_binary() const;
  bool is_unary_modal() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t column, const std::string& what);
  // 1-based column of the offending character (byte offset + 1).
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

// Raised when a formula uses an operator outside an evaluator's language.
class UnsupportedOperator : public std::invalid_argument {
 public:
  UnsupportedOperator(Op op, const std::string& semantics)
      : std::invalid_argument("operator '" + std::string(op_name(op)) + "' is not supported by " +
                              semantics + " semantics"),
        op_(op) {}
  Op op() const { return op_; }

 private:
  Op op_;
};

Formula parse(std::string_view text);
std::string render(const Formula& f);

// Termination measure for announcement elimination. Or, Implies and the dual
// modalities are weighted as their primitive expansions (~(~a & ~b), ~(a & ~b),
// ~M~a) so normalizing them does not change the measure.
std::size_t complexity(const Formula& f);

std::size_t depth(const Formula& f);
std::size_t size(const Formula& f);
bool contains_announcement(const Formula& f);
bool is_boolean(const Formula& f);
std::vector<std::string> atoms(const Formula& f);

}  // namespace gpal
