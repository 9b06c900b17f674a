#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gammareg/errors.hpp"
#include "gammareg/ext_real.hpp"
#include "gammareg/point.hpp"

namespace gammareg {

// ---------------------------------------------------------------------------
// Extended-real evaluation semantics. The codomain is (-inf, +inf]; any
// operation whose exact result would be -inf or indeterminate raises
// EvalError. Division by zero with positive numerator gives +inf.
// ---------------------------------------------------------------------------
namespace er {

inline ExtReal neg(ExtReal a) {
  if (a.is_inf()) throw EvalError("negation of inf");
  return ExtReal(-a.value());
}

inline ExtReal add(ExtReal a, ExtReal b) { return a + b; }
inline ExtReal sub(ExtReal a, ExtReal b) { return a - b; }

inline ExtReal mul(ExtReal a, ExtReal b) {
  if (a.is_inf() || b.is_inf()) {
    double other = a.is_inf() ? (b.is_inf() ? 1.0 : b.value()) : a.value();
    if (other > 0.0) return ExtReal::infinity();
    throw EvalError(other == 0.0 ? "0 * inf" : "result would be -inf");
  }
  double r = a.value() * b.value();
  if (r == -std::numeric_limits<double>::infinity())
    throw EvalError("result would be -inf");
  return ExtReal(r);
}

inline ExtReal div(ExtReal a, ExtReal b) {
  if (b.is_inf()) {
    if (a.is_inf()) throw EvalError("inf / inf");
    return ExtReal(0.0);
  }
  if (b.value() == 0.0) {
    if (a > ExtReal(0.0)) return ExtReal::infinity();
    throw EvalError("division by zero with non-positive numerator");
  }
  if (a.is_inf()) {
    if (b.value() > 0.0) return ExtReal::infinity();
    throw EvalError("result would be -inf");
  }
  double r = a.value() / b.value();
  if (r == -std::numeric_limits<double>::infinity())
    throw EvalError("result would be -inf");
  return ExtReal(r);
}

inline ExtReal pow(ExtReal a, ExtReal b) {
  if (a.is_inf()) {
    if (b > ExtReal(0.0)) return ExtReal::infinity();
    return ExtReal(b.value() == 0.0 ? 1.0 : 0.0);
  }
  if (b.is_inf()) {
    double m = std::abs(a.value());
    if (m > 1.0) return ExtReal::infinity();
    return ExtReal(m == 1.0 ? 1.0 : 0.0);
  }
  double r = std::pow(a.value(), b.value());
  if (std::isnan(r)) throw EvalError("fractional power of a negative base");
  if (r == -std::numeric_limits<double>::infinity())
    throw EvalError("result would be -inf");
  return ExtReal(r);
}

inline ExtReal abs(ExtReal a) { return a.is_inf() ? a : ExtReal(std::abs(a.value())); }
inline ExtReal exp(ExtReal a) { return a.is_inf() ? a : ExtReal(std::exp(a.value())); }

inline ExtReal sqrt(ExtReal a) {
  if (a.is_inf()) return a;
  if (a.value() < 0.0) throw EvalError("square root of a negative value");
  return ExtReal(std::sqrt(a.value()));
}

}  // namespace er

// ---------------------------------------------------------------------------
// AST
// ---------------------------------------------------------------------------

enum class BinOp { Add, Sub, Mul, Div, Pow };
enum class CmpOp { Eq, Lt, Le, Gt, Ge };
enum class Func1 { Abs, Exp, Sqrt };
enum class Func2 { Min, Max };

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression tree over variables x, y, z; see the grammar in the
/// repository README.
class Expr {
public:
  enum class Kind { Num, Inf, Var, Neg, Bin, Fn1, Fn2, If };

  Kind kind;
  double num = 0.0;     // Num
  int var = 0;          // Var: 0=x, 1=y, 2=z
  BinOp bin{};          // Bin
  Func1 fn1{};          // Fn1
  Func2 fn2{};          // Fn2
  CmpOp cmp{};          // If condition operator
  ExprPtr a, b, c, d;   // children: Neg(a); Bin(a,b); Fn1(a); Fn2(a,b);
                        // If(a cmp b, then=c, else=d)

  static ExprPtr number(double v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Num;
    e->num = v;
    return e;
  }
  static ExprPtr inf() {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Inf;
    return e;
  }
  static ExprPtr variable(int i) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Var;
    e->var = i;
    return e;
  }
  static ExprPtr neg(ExprPtr x) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Neg;
    e->a = std::move(x);
    return e;
  }
  static ExprPtr bin_op(BinOp op, ExprPtr x, ExprPtr y) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Bin;
    e->bin = op;
    e->a = std::move(x);
    e->b = std::move(y);
    return e;
  }
  static ExprPtr call1(Func1 f, ExprPtr x) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Fn1;
    e->fn1 = f;
    e->a = std::move(x);
    return e;
  }
  static ExprPtr call2(Func2 f, ExprPtr x, ExprPtr y) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Fn2;
    e->fn2 = f;
    e->a = std::move(x);
    e->b = std::move(y);
    return e;
  }
  static ExprPtr cond(CmpOp op, ExprPtr lhs, ExprPtr rhs, ExprPtr t, ExprPtr f) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::If;
    e->cmp = op;
    e->a = std::move(lhs);
    e->b = std::move(rhs);
    e->c = std::move(t);
    e->d = std::move(f);
    return e;
  }

  /// Highest variable index used, or -1 for constant expressions.
  int max_var() const {
    int m = kind == Kind::Var ? var : -1;
    for (const ExprPtr* ch : {&a, &b, &c, &d})
      if (*ch) m = std::max(m, (*ch)->max_var());
    return m;
  }
};

inline bool equal(const ExprPtr& x, const ExprPtr& y) {
  if (!x || !y) return !x && !y;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case Expr::Kind::Num:
      return x->num == y->num;
    case Expr::Kind::Inf:
      return true;
    case Expr::Kind::Var:
      return x->var == y->var;
    case Expr::Kind::Neg:
      return equal(x->a, y->a);
    case Expr::Kind::Bin:
      return x->bin == y->bin && equal(x->a, y->a) && equal(x->b, y->b);
    case Expr::Kind::Fn1:
      return x->fn1 == y->fn1 && equal(x->a, y->a);
    case Expr::Kind::Fn2:
      return x->fn2 == y->fn2 && equal(x->a, y->a) && equal(x->b, y->b);
    case Expr::Kind::If:
      return x->cmp == y->cmp && equal(x->a, y->a) && equal(x->b, y->b) &&
             equal(x->c, y->c) && equal(x->d, y->d);
  }
  return false;
}

/// Evaluate at a point. The point dimension must cover every variable used.
inline ExtReal eval(const ExprPtr& e, const Point& p) {
  switch (e->kind) {
    case Expr::Kind::Num:
      return ExtReal(e->num);
    case Expr::Kind::Inf:
      return ExtReal::infinity();
    case Expr::Kind::Var:
      if (e->var >= p.dim)
        throw ArityError("expression uses a variable beyond the point dimension");
      return ExtReal(p[e->var]);
    case Expr::Kind::Neg:
      return er::neg(eval(e->a, p));
    case Expr::Kind::Bin: {
      ExtReal x = eval(e->a, p), y = eval(e->b, p);
      switch (e->bin) {
        case BinOp::Add: return er::add(x, y);
        case BinOp::Sub: return er::sub(x, y);
        case BinOp::Mul: return er::mul(x, y);
        case BinOp::Div: return er::div(x, y);
        case BinOp::Pow: return er::pow(x, y);
      }
      break;
    }
    case Expr::Kind::Fn1: {
      ExtReal x = eval(e->a, p);
      switch (e->fn1) {
        case Func1::Abs: return er::abs(x);
        case Func1::Exp: return er::exp(x);
        case Func1::Sqrt: return er::sqrt(x);
      }
      break;
    }
    case Expr::Kind::Fn2: {
      ExtReal x = eval(e->a, p), y = eval(e->b, p);
      return e->fn2 == Func2::Min ? min(x, y) : max(x, y);
    }
    case Expr::Kind::If: {
      ExtReal l = eval(e->a, p), r = eval(e->b, p);
      bool t = false;
      switch (e->cmp) {
        case CmpOp::Eq: t = l == r; break;
        case CmpOp::Lt: t = l < r; break;
        case CmpOp::Le: t = l <= r; break;
        case CmpOp::Gt: t = l > r; break;
        case CmpOp::Ge: t = l >= r; break;
      }
      return eval(t ? e->c : e->d, p);
    }
  }
  throw EvalError("malformed expression tree");
}

// ---------------------------------------------------------------------------
// Parser: recursive descent, precedence ^ > unary- > * / > + -, with ^
// right-associative. Comparisons appear only as the condition of
// "if <cmp> then <expr> else <expr>".
// ---------------------------------------------------------------------------

namespace detail {

class ExprParser {
public:
  explicit ExprParser(std::string_view src) : src_(src) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip_ws();
    if (pos_ < src_.size()) fail("unexpected trailing input");
    return e;
  }

private:
  std::string_view src_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SyntaxError(msg, line, col);
  }

  void skip_ws() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' ||
                                  src_[pos_] == '\n' || src_[pos_] == '\r'))
      ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c, const char* what) {
    if (!accept(c)) fail(std::string("expected '") + c + "' " + what);
  }

  bool word_boundary(std::size_t i) const {
    return i >= src_.size() || !(std::isalnum(static_cast<unsigned char>(src_[i])) || src_[i] == '_');
  }

  bool accept_word(std::string_view w) {
    skip_ws();
    if (src_.substr(pos_).size() < w.size()) return false;
    if (src_.substr(pos_, w.size()) != w) return false;
    if (!word_boundary(pos_ + w.size())) return false;
    pos_ += w.size();
    return true;
  }

  ExprPtr expr() {
    if (accept_word("if")) return conditional();
    return additive();
  }

  ExprPtr conditional() {
    ExprPtr lhs = additive();
    CmpOp op;
    skip_ws();
    if (accept('=')) {
      expect('=', "in comparison");
      op = CmpOp::Eq;
    } else if (accept('<')) {
      op = accept('=') ? CmpOp::Le : CmpOp::Lt;
    } else if (accept('>')) {
      op = accept('=') ? CmpOp::Ge : CmpOp::Gt;
    } else {
      fail("expected comparison operator in if-condition");
    }
    ExprPtr rhs = additive();
    if (!accept_word("then")) fail("expected 'then'");
    ExprPtr t = expr();
    if (!accept_word("else")) fail("expected 'else'");
    ExprPtr f = expr();
    return Expr::cond(op, std::move(lhs), std::move(rhs), std::move(t), std::move(f));
  }

  ExprPtr additive() {
    ExprPtr e = multiplicative();
    for (;;) {
      if (accept('+'))
        e = Expr::bin_op(BinOp::Add, std::move(e), multiplicative());
      else if (accept('-'))
        e = Expr::bin_op(BinOp::Sub, std::move(e), multiplicative());
      else
        return e;
    }
  }

  ExprPtr multiplicative() {
    ExprPtr e = unary();
    for (;;) {
      if (accept('*'))
        e = Expr::bin_op(BinOp::Mul, std::move(e), unary());
      else if (accept('/'))
        e = Expr::bin_op(BinOp::Div, std::move(e), unary());
      else
        return e;
    }
  }

  ExprPtr unary() {
    if (accept('-')) return Expr::neg(unary());
    if (accept('+')) return unary();
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (accept('^')) return Expr::bin_op(BinOp::Pow, std::move(base), unary());
    return base;
  }

  ExprPtr primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    char ch = src_[pos_];
    if (ch == '(') {
      ++pos_;
      ExprPtr e = expr();
      expect(')', "to close '('");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') return identifier();
    fail("unexpected character");
  }

  ExprPtr number() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
      ++pos_;
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t mark = pos_++;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      } else {
        pos_ = mark;  // 'e' belonged to something else
      }
    }
    double v = 0.0;
    auto res = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (res.ec != std::errc() || res.ptr != src_.data() + pos_) {
      pos_ = start;
      fail("malformed number literal");
    }
    return Expr::number(v);
  }

  ExprPtr identifier() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    std::string_view id = src_.substr(start, pos_ - start);
    if (id == "inf") return Expr::inf();
    if (id == "x") return Expr::variable(0);
    if (id == "y") return Expr::variable(1);
    if (id == "z") return Expr::variable(2);
    if (id == "abs" || id == "exp" || id == "sqrt") {
      expect('(', "after function name");
      ExprPtr a = expr();
      if (accept(',')) throw ArityError(std::string(id) + " takes exactly one argument");
      expect(')', "to close argument list");
      Func1 f = id == "abs" ? Func1::Abs : id == "exp" ? Func1::Exp : Func1::Sqrt;
      return Expr::call1(f, std::move(a));
    }
    if (id == "min" || id == "max") {
      expect('(', "after function name");
      ExprPtr a = expr();
      if (!accept(',')) {
        pos_ = start;
        throw ArityError(std::string(id) + " takes exactly two arguments");
      }
      ExprPtr b = expr();
      if (accept(',')) {
        pos_ = start;
        throw ArityError(std::string(id) + " takes exactly two arguments");
      }
      expect(')', "to close argument list");
      return Expr::call2(id == "min" ? Func2::Min : Func2::Max, std::move(a), std::move(b));
    }
    if (id == "if" || id == "then" || id == "else") fail("misplaced keyword");
    throw UnknownIdentifier("unknown identifier '" + std::string(id) + "'");
  }
};

}  // namespace detail

/// Parse an expression. The printed canonical form re-parses to an equal tree.
inline ExprPtr parse(std::string_view source) { return detail::ExprParser(source).parse(); }

// ---------------------------------------------------------------------------
// Printer: canonical form with minimal parentheses.
// ---------------------------------------------------------------------------

namespace detail {

inline int level_of(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::If: return 0;
    case Expr::Kind::Bin:
      switch (e.bin) {
        case BinOp::Add:
        case BinOp::Sub: return 1;
        case BinOp::Mul:
        case BinOp::Div: return 2;
        case BinOp::Pow: return 4;
      }
      return 1;
    case Expr::Kind::Neg: return 3;
    default: return 5;
  }
}

inline void print_rec(const ExprPtr& e, std::string& out, int parent_level, bool rhs);

inline void print_child(const ExprPtr& c, std::string& out, int my_level, bool rhs) {
  bool parens;
  int cl = level_of(*c);
  if (cl < my_level)
    parens = true;
  else if (cl == my_level)
    // +,-,*,/ are left-associative: parenthesize an equal-level right child.
    // ^ is right-associative: parenthesize an equal-level left child.
    parens = (my_level == 4) ? !rhs : rhs;
  else
    parens = false;
  if (parens) out += '(';
  print_rec(c, out, 0, false);
  if (parens) out += ')';
}

inline void print_rec(const ExprPtr& e, std::string& out, int, bool) {
  switch (e->kind) {
    case Expr::Kind::Num: {
      char buf[32];
      double v = e->num == 0.0 ? 0.0 : e->num;  // never print "-0"
      auto res = std::to_chars(buf, buf + sizeof buf, v);
      out.append(buf, res.ptr);
      return;
    }
    case Expr::Kind::Inf:
      out += "inf";
      return;
    case Expr::Kind::Var:
      out += e->var == 0 ? 'x' : e->var == 1 ? 'y' : 'z';
      return;
    case Expr::Kind::Neg:
      out += '-';
      print_child(e->a, out, 3, false);
      return;
    case Expr::Kind::Bin: {
      int lvl = level_of(*e);
      const char* op = e->bin == BinOp::Add   ? "+"
                       : e->bin == BinOp::Sub ? "-"
                       : e->bin == BinOp::Mul ? "*"
                       : e->bin == BinOp::Div ? "/"
                                              : "^";
      print_child(e->a, out, lvl, false);
      out += op;
      print_child(e->b, out, lvl, true);
      return;
    }
    case Expr::Kind::Fn1:
      out += e->fn1 == Func1::Abs ? "abs" : e->fn1 == Func1::Exp ? "exp" : "sqrt";
      out += '(';
      print_rec(e->a, out, 0, false);
      out += ')';
      return;
    case Expr::Kind::Fn2:
      out += e->fn2 == Func2::Min ? "min" : "max";
      out += '(';
      print_rec(e->a, out, 0, false);
      out += ',';
      print_rec(e->b, out, 0, false);
      out += ')';
      return;
    case Expr::Kind::If: {
      out += "if ";
      print_child(e->a, out, 1, false);
      switch (e->cmp) {
        case CmpOp::Eq: out += "=="; break;
        case CmpOp::Lt: out += '<'; break;
        case CmpOp::Le: out += "<="; break;
        case CmpOp::Gt: out += '>'; break;
        case CmpOp::Ge: out += ">="; break;
      }
      print_child(e->b, out, 1, false);
      out += " then ";
      print_child(e->c, out, 1, false);
      out += " else ";
      print_child(e->d, out, 1, false);
      return;
    }
  }
}

}  // namespace detail

inline std::string print(const ExprPtr& e) {
  std::string out;
  detail::print_rec(e, out, 0, false);
  return out;
}

}  // namespace gammareg
