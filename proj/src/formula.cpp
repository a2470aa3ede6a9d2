#include "gpal/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace gpal {

struct Formula::Node {
  Op op;
  std::string name;
  int agent = 0;
  std::vector<Formula> children;
};

std::string_view op_name(Op op) {
  switch (op) {
    case Op::Atom: return "atom";
    case Op::Top: return "true";
    case Op::Bot: return "false";
    case Op::Not: return "~";
    case Op::And: return "&";
    case Op::Or: return "|";
    case Op::Implies: return "->";
    case Op::Interior: return "I";
    case Op::Closure: return "C";
    case Op::Know: return "K";
    case Op::Possible: return "L";
    case Op::Effort: return "E";
    case Op::EffortDual: return "D";
    case Op::KnowI: return "Ki";
    case Op::Announce: return "[!]";
  }
  return "?";
}

namespace {

bool valid_ident(std::string_view s) {
  if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

Formula Formula::atom(std::string name) {
  if (!valid_ident(name) || name == "true" || name == "false")
    throw std::invalid_argument("invalid atom name '" + name + "'");
  return Formula(std::make_shared<const Node>(Node{Op::Atom, std::move(name), 0, {}}));
}
Formula Formula::top() { return Formula(std::make_shared<const Node>(Node{Op::Top, {}, 0, {}})); }
Formula Formula::bot() { return Formula(std::make_shared<const Node>(Node{Op::Bot, {}, 0, {}})); }

Formula Formula::unary(Op op, Formula f, int agent) {
  switch (op) {
    case Op::Not:
    case Op::Interior:
    case Op::Closure:
    case Op::Know:
    case Op::Possible:
    case Op::Effort:
    case Op::EffortDual:
      agent = 0;
      break;
    case Op::KnowI:
      if (agent < 1) throw std::invalid_argument("agent index must be >= 1");
      break;
    default:
      throw std::invalid_argument("not a unary operator: " + std::string(op_name(op)));
  }
  return Formula(std::make_shared<const Node>(Node{op, {}, agent, {std::move(f)}}));
}

Formula Formula::binary(Op op, Formula a, Formula b) {
  if (op != Op::And && op != Op::Or && op != Op::Implies && op != Op::Announce)
    throw std::invalid_argument("not a binary operator: " + std::string(op_name(op)));
  return Formula(std::make_shared<const Node>(Node{op, {}, 0, {std::move(a), std::move(b)}}));
}

Formula Formula::neg(Formula f) { return unary(Op::Not, std::move(f)); }
Formula Formula::conj(Formula a, Formula b) { return binary(Op::And, std::move(a), std::move(b)); }
Formula Formula::disj(Formula a, Formula b) { return binary(Op::Or, std::move(a), std::move(b)); }
Formula Formula::implies(Formula a, Formula b) {
  return binary(Op::Implies, std::move(a), std::move(b));
}
Formula Formula::interior(Formula f) { return unary(Op::Interior, std::move(f)); }
Formula Formula::closure(Formula f) { return unary(Op::Closure, std::move(f)); }
Formula Formula::know(Formula f) { return unary(Op::Know, std::move(f)); }
Formula Formula::possible(Formula f) { return unary(Op::Possible, std::move(f)); }
Formula Formula::effort(Formula f) { return unary(Op::Effort, std::move(f)); }
Formula Formula::effort_dual(Formula f) { return unary(Op::EffortDual, std::move(f)); }
Formula Formula::know_i(int agent, Formula f) { return unary(Op::KnowI, std::move(f), agent); }
Formula Formula::announce(Formula announced, Formula body) {
  return binary(Op::Announce, std::move(announced), std::move(body));
}

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
int Formula::agent() const { return node_->agent; }
std::size_t Formula::arity() const { return node_->children.size(); }
const Formula& Formula::child(std::size_t i) const { return node_->children.at(i); }

bool Formula::is_binary() const { return arity() == 2; }
bool Formula::is_unary_modal() const { return arity() == 1 && op() != Op::Not; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op() || a.agent() != b.agent() || a.name() != b.name() ||
      a.arity() != b.arity())
    return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (a.child(i) != b.child(i)) return false;
  return true;
}

ParseError::ParseError(std::size_t column, const std::string& what)
    : std::runtime_error("column " + std::to_string(column) + ": " + what), column_(column) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse_all() {
    Formula f = imp();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_ + 1, msg); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(std::string_view tok) {
    skip_ws();
    return text_.substr(pos_, tok.size()) == tok;
  }

  bool accept(std::string_view tok) {
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }

  Formula imp() {
    Formula left = disj();
    if (accept("->")) return Formula::implies(std::move(left), imp());
    return left;
  }

  Formula disj() {
    Formula left = conj();
    while (accept("|")) left = Formula::disj(std::move(left), conj());
    return left;
  }

  Formula conj() {
    Formula left = un();
    while (accept("&")) left = Formula::conj(std::move(left), un());
    return left;
  }

  Formula un() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '~') {
      ++pos_;
      return Formula::neg(un());
    }
    if (accept("[!")) {
      const std::size_t open = pos_ - 2;
      Formula announced = imp();
      if (!accept("]")) {
        throw ParseError(pos_ + 1, "unbalanced announcement brackets: expected ']' to close '[!' at column " +
                                       std::to_string(open + 1));
      }
      return Formula::announce(std::move(announced), un());
    }
    if (accept("<!")) {
      const std::size_t open = pos_ - 2;
      Formula announced = imp();
      if (!accept(">")) {
        throw ParseError(pos_ + 1, "unbalanced announcement brackets: expected '>' to close '<!' at column " +
                                       std::to_string(open + 1));
      }
      // <!a> b  ==  ~[!a] ~b
      return Formula::neg(Formula::announce(std::move(announced), Formula::neg(un())));
    }
    if (c == '(') {
      ++pos_;
      Formula inner = imp();
      if (!accept(")")) fail("expected ')'");
      return inner;
    }
    if (c == '[' || c == '<') fail("expected '!' after '" + std::string(1, c) + "'");
    if (c == ']' || c == '>') fail("unbalanced announcement brackets: stray '" + std::string(1, c) + "'");
    if (std::isupper(static_cast<unsigned char>(c))) {
      ++pos_;
      switch (c) {
        case 'I': return Formula::interior(un());
        case 'C': return Formula::closure(un());
        case 'L': return Formula::possible(un());
        case 'E': return Formula::effort(un());
        case 'D': return Formula::effort_dual(un());
        case 'K':
          if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            const int agent = text_[pos_] - '0';
            if (agent == 0) fail("agent index must be >= 1");
            ++pos_;
            return Formula::know_i(agent, un());
          }
          return Formula::know(un());
        default:
          --pos_;
          fail("unknown operator '" + std::string(1, c) + "'");
      }
    }
    if (c >= 'a' && c <= 'z') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string word(text_.substr(start, pos_ - start));
      if (word == "true") return Formula::top();
      if (word == "false") return Formula::bot();
      return Formula::atom(word);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Precedence levels: 0 implication, 1 disjunction, 2 conjunction, 3 prefix/atomic.
int level(const Formula& f) {
  switch (f.op()) {
    case Op::Implies: return 0;
    case Op::Or: return 1;
    case Op::And: return 2;
    default: return 3;
  }
}

void render_into(const Formula& f, int min_level, std::string& out) {
  const bool parens = level(f) < min_level;
  if (parens) out += '(';
  switch (f.op()) {
    case Op::Atom: out += f.name(); break;
    case Op::Top: out += "true"; break;
    case Op::Bot: out += "false"; break;
    case Op::Not:
      out += '~';
      render_into(f.arg(), 3, out);
      break;
    case Op::And:
      render_into(f.lhs(), 2, out);
      out += " & ";
      render_into(f.rhs(), 3, out);
      break;
    case Op::Or:
      render_into(f.lhs(), 1, out);
      out += " | ";
      render_into(f.rhs(), 2, out);
      break;
    case Op::Implies:
      render_into(f.lhs(), 1, out);
      out += " -> ";
      render_into(f.rhs(), 0, out);
      break;
    case Op::Interior:
    case Op::Closure:
    case Op::Know:
    case Op::Possible:
    case Op::Effort:
    case Op::EffortDual:
      out += op_name(f.op());
      out += ' ';
      render_into(f.arg(), 3, out);
      break;
    case Op::KnowI:
      out += 'K';
      out += std::to_string(f.agent());
      out += ' ';
      render_into(f.arg(), 3, out);
      break;
    case Op::Announce:
      out += "[!";
      render_into(f.lhs(), 0, out);
      out += "] ";
      render_into(f.rhs(), 3, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

Formula parse(std::string_view text) { return Parser(text).parse_all(); }

std::string render(const Formula& f) {
  std::string out;
  render_into(f, 0, out);
  return out;
}

std::size_t complexity(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Top:
    case Op::Bot:
      return 1;
    case Op::Not:
    case Op::Interior:
    case Op::Know:
    case Op::Effort:
    case Op::KnowI:
      return 1 + complexity(f.arg());
    case Op::Closure:
    case Op::Possible:
    case Op::EffortDual:
      return 3 + complexity(f.arg());
    case Op::And:
      return 1 + std::max(complexity(f.lhs()), complexity(f.rhs()));
    case Op::Or:
      return 3 + std::max(complexity(f.lhs()), complexity(f.rhs()));
    case Op::Implies:
      return 2 + std::max(complexity(f.lhs()), 1 + complexity(f.rhs()));
    case Op::Announce:
      return (4 + complexity(f.lhs())) * complexity(f.rhs());
  }
  return 1;
}

std::size_t depth(const Formula& f) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < f.arity(); ++i) d = std::max(d, depth(f.child(i)));
  return d + 1;
}

std::size_t size(const Formula& f) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < f.arity(); ++i) n += size(f.child(i));
  return n;
}

bool contains_announcement(const Formula& f) {
  if (f.op() == Op::Announce) return true;
  for (std::size_t i = 0; i < f.arity(); ++i)
    if (contains_announcement(f.child(i))) return true;
  return false;
}

bool is_boolean(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Top:
    case Op::Bot:
      return true;
    case Op::Not:
    case Op::And:
    case Op::Or:
    case Op::Implies:
      for (std::size_t i = 0; i < f.arity(); ++i)
        if (!is_boolean(f.child(i))) return false;
      return true;
    default:
      return false;
  }
}

namespace {
void collect_atoms(const Formula& f, std::set<std::string>& out) {
  if (f.op() == Op::Atom) out.insert(f.name());
  for (std::size_t i = 0; i < f.arity(); ++i) collect_atoms(f.child(i), out);
}
}  // namespace

std::vector<std::string> atoms(const Formula& f) {
  std::set<std::string> s;
  collect_atoms(f, s);
  return {s.begin(), s.end()};
}

}  // namespace gpal
