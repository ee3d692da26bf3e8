#include "ncalg/formula.hpp"

#include <limits>

namespace ncalg {

struct Formula::Node {
  Kind kind;
  std::int64_t value = 0;     /* Const */
  std::size_t var = 0;        /* Var */
  std::shared_ptr<const Node> a, b;
  std::size_t size = 0;       /* gate count, Neg transparent */
  std::size_t max_var = 0;
  std::size_t inv_height = 0;
};

namespace {

using NodePtr = std::shared_ptr<const Formula::Node>;

NodePtr make_node(Formula::Kind kind, std::int64_t value, std::size_t var,
                  NodePtr a, NodePtr b) {
  auto n = std::make_shared<Formula::Node>();
  n->kind = kind;
  n->value = value;
  n->var = var;
  const std::size_t sa = a ? a->size : 0;
  const std::size_t sb = b ? b->size : 0;
  const std::size_t va = a ? a->max_var : 0;
  const std::size_t vb = b ? b->max_var : 0;
  n->size = sa + sb + (kind == Formula::Kind::Neg ? 0 : 1);
  n->max_var = std::max({va, vb, kind == Formula::Kind::Var ? var : 0});
  const std::size_t ha = a ? a->inv_height : 0;
  const std::size_t hb = b ? b->inv_height : 0;
  n->inv_height = std::max(ha, hb) + (kind == Formula::Kind::Inv ? 1 : 0);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

}  // namespace

Formula Formula::constant(std::int64_t v) {
  return Formula(make_node(Kind::Const, v, 0, nullptr, nullptr));
}
Formula Formula::var(std::size_t index) {
  if (index == 0)
    throw PreconditionError("formula variables are numbered from t1");
  return Formula(make_node(Kind::Var, 0, index, nullptr, nullptr));
}
Formula Formula::neg(Formula a) {
  return Formula(make_node(Kind::Neg, 0, 0, std::move(a.node_), nullptr));
}
Formula Formula::add(Formula a, Formula b) {
  return Formula(
      make_node(Kind::Add, 0, 0, std::move(a.node_), std::move(b.node_)));
}
Formula Formula::mul(Formula a, Formula b) {
  return Formula(
      make_node(Kind::Mul, 0, 0, std::move(a.node_), std::move(b.node_)));
}
Formula Formula::inv(Formula a) {
  return Formula(make_node(Kind::Inv, 0, 0, std::move(a.node_), nullptr));
}

Formula::Kind Formula::kind() const { return node_->kind; }
std::int64_t Formula::value() const {
  if (node_->kind != Kind::Const) throw Error("formula: not a constant node");
  return node_->value;
}
std::size_t Formula::var_index() const {
  if (node_->kind != Kind::Var) throw Error("formula: not a variable node");
  return node_->var;
}
std::size_t Formula::arity() const {
  switch (node_->kind) {
    case Kind::Const:
    case Kind::Var:
      return 0;
    case Kind::Neg:
    case Kind::Inv:
      return 1;
    case Kind::Add:
    case Kind::Mul:
      return 2;
  }
  return 0;
}
Formula Formula::child(std::size_t i) const {
  const auto& c = i == 0 ? node_->a : node_->b;
  if (!c) throw Error("formula: no such child");
  return Formula(c);
}
std::size_t Formula::size() const { return node_->size; }
std::size_t Formula::max_var() const { return node_->max_var; }
std::size_t Formula::inv_height() const { return node_->inv_height; }

bool Formula::operator==(const Formula& o) const {
  auto eq = [](auto&& self, const Node* x, const Node* y) -> bool {
    if (x == y) return true;
    if (!x || !y) return false;
    if (x->kind != y->kind || x->value != y->value || x->var != y->var)
      return false;
    return self(self, x->a.get(), y->a.get()) &&
           self(self, x->b.get(), y->b.get());
  };
  return eq(eq, node_.get(), o.node_.get());
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Formula run() {
    auto f = expr();
    skip_ws();
    if (pos_ != s_.size())
      throw SyntaxError("unexpected trailing input", pos_);
    return f;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() &&
           (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' ||
            s_[pos_] == '\r'))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  std::uint64_t integer(const char* what) {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ >= s_.size() || s_[pos_] < '0' || s_[pos_] > '9')
      throw SyntaxError(std::string("expected ") + what, pos_);
    std::uint64_t v = 0;
    while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') {
      const std::uint64_t d = static_cast<std::uint64_t>(s_[pos_] - '0');
      if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10)
        throw SyntaxError("integer literal too large", start);
      v = v * 10 + d;
      ++pos_;
    }
    return v;
  }

  Formula expr() {
    Formula f = term();
    for (;;) {
      if (eat('+')) {
        f = Formula::add(std::move(f), term());
      } else if (eat('-')) {
        f = Formula::add(std::move(f), Formula::neg(term()));
      } else {
        return f;
      }
    }
  }

  Formula term() {
    const bool negated = eat('-');
    Formula f = factor();
    while (eat('*')) f = Formula::mul(std::move(f), factor());
    return negated ? Formula::neg(std::move(f)) : f;
  }

  Formula factor() {
    Formula f = atom();
    while (peek() == '^') {
      ++pos_;  /* '^' */
      if (!eat('-'))
        throw SyntaxError("expected '-1' after '^'", pos_);
      const std::size_t at = pos_;
      if (integer("'1' after '^-'") != 1)
        throw SyntaxError("only the exponent -1 is supported", at);
      f = Formula::inv(std::move(f));
    }
    return f;
  }

  Formula atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw SyntaxError("unexpected end of input", pos_);
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Formula f = expr();
      if (!eat(')')) throw SyntaxError("expected ')'", pos_);
      return f;
    }
    if (c == 't') {
      ++pos_;
      const std::size_t at = pos_;
      if (pos_ >= s_.size() || s_[pos_] < '0' || s_[pos_] > '9')
        throw SyntaxError("expected variable index after 't'", pos_);
      const std::uint64_t idx = integer("variable index");
      if (idx == 0)
        throw VarIndexError("variable indices start at t1", at);
      if (idx > 1000000)
        throw VarIndexError("variable index too large", at);
      return Formula::var(static_cast<std::size_t>(idx));
    }
    if (c >= '0' && c <= '9') {
      const std::size_t at = pos_;
      const std::uint64_t v = integer("integer");
      if (v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
        throw SyntaxError("integer literal too large", at);
      return Formula::constant(static_cast<std::int64_t>(v));
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

/* Where a subtree may appear without parentheses; see the grammar. */
enum class Ctx {
  Expr,      /* top level, inside parens, left operand of +/- */
  Term,      /* right operand of +/- (unary minus legal) */
  TermBody,  /* under a unary minus (product chain legal) */
  MulChain,  /* left operand of * */
  Factor,    /* right operand of * */
  Atom       /* operand of ^-1 */
};

void print(const Formula& f, Ctx ctx, std::string& out) {
  using Kind = Formula::Kind;
  const auto parens = [&](auto&& body) {
    out += '(';
    body();
    out += ')';
  };
  switch (f.kind()) {
    case Kind::Const: {
      const std::int64_t v = f.value();
      if (v >= 0) {
        out += std::to_string(v);
      } else if (ctx == Ctx::Expr || ctx == Ctx::Term) {
        out += std::to_string(v);  /* reads back as neg(constant) */
      } else {
        parens([&] { out += std::to_string(v); });
      }
      return;
    }
    case Kind::Var:
      out += 't';
      out += std::to_string(f.var_index());
      return;
    case Kind::Neg: {
      const auto body = [&] {
        out += '-';
        print(f.child(), Ctx::TermBody, out);
      };
      if (ctx == Ctx::Expr || ctx == Ctx::Term) body();
      else parens(body);
      return;
    }
    case Kind::Add: {
      const auto body = [&] {
        print(f.child(0), Ctx::Expr, out);
        const Formula r = f.child(1);
        if (r.kind() == Kind::Neg) {
          out += " - ";
          print(r.child(), Ctx::Term, out);
        } else {
          out += " + ";
          print(r, Ctx::Term, out);
        }
      };
      if (ctx == Ctx::Expr) body();
      else parens(body);
      return;
    }
    case Kind::Mul: {
      const auto body = [&] {
        print(f.child(0), Ctx::MulChain, out);
        out += '*';
        print(f.child(1), Ctx::Factor, out);
      };
      if (ctx == Ctx::Expr || ctx == Ctx::Term || ctx == Ctx::TermBody ||
          ctx == Ctx::MulChain)
        body();
      else
        parens(body);
      return;
    }
    case Kind::Inv:
      print(f.child(), Ctx::Atom, out);
      out += "^-1";
      return;
  }
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).run(); }

std::string to_text(const Formula& f) {
  std::string out;
  print(f, Ctx::Expr, out);
  return out;
}

}  // namespace ncalg
