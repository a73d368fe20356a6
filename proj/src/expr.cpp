#include "hermweb/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

#include "hermweb/error.hpp"

namespace hermweb {

struct Expr::Node {
  Kind kind;
  double value = 0.0;
  int axis = -1;
  std::optional<Expr> lhs{};
  std::optional<Expr> rhs{};
  int depth = 1;
};

namespace {

bool is_function(Expr::Kind k) {
  return k == Expr::Kind::Sin || k == Expr::Kind::Cos || k == Expr::Kind::Exp ||
         k == Expr::Kind::Log;
}

const char* function_name(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Sin: return "sin";
    case Expr::Kind::Cos: return "cos";
    case Expr::Kind::Exp: return "exp";
    case Expr::Kind::Log: return "log";
    default: return "?";
  }
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Expr Expr::number(double v) { return Expr(std::make_shared<const Node>(Node{Kind::Number, v})); }
Expr Expr::pi() { return Expr(std::make_shared<const Node>(Node{Kind::Pi})); }
Expr Expr::variable(int axis) {
  return Expr(std::make_shared<const Node>(Node{Kind::Variable, 0.0, axis}));
}
Expr Expr::unary(Kind kind, Expr arg) {
  if (kind != Kind::Negate && !is_function(kind)) throw InputError("not a unary node kind");
  const int d = arg.depth() + 1;
  return Expr(std::make_shared<const Node>(Node{kind, 0.0, -1, std::move(arg), std::nullopt, d}));
}
Expr Expr::binary(Kind kind, Expr lhs, Expr rhs) {
  if (kind != Kind::Add && kind != Kind::Sub && kind != Kind::Mul && kind != Kind::Div)
    throw InputError("not a binary node kind");
  const int d = std::max(lhs.depth(), rhs.depth()) + 1;
  return Expr(std::make_shared<const Node>(Node{kind, 0.0, -1, std::move(lhs), std::move(rhs), d}));
}
Expr Expr::power(Expr base, double exponent) {
  const int d = base.depth() + 1;
  return Expr(
      std::make_shared<const Node>(Node{Kind::Pow, exponent, -1, std::move(base), std::nullopt, d}));
}

Expr::Kind Expr::kind() const { return node_->kind; }
double Expr::value() const { return node_->value; }
int Expr::axis() const { return node_->axis; }
const Expr& Expr::lhs() const { return *node_->lhs; }
const Expr& Expr::rhs() const { return *node_->rhs; }
int Expr::depth() const { return node_->depth; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.axis != y.axis) return false;
  // Bitwise comparison keeps -0.0 and 0.0 distinct, matching the printed form.
  if (std::signbit(x.value) != std::signbit(y.value) || x.value != y.value) return false;
  if (x.lhs.has_value() != y.lhs.has_value() || x.rhs.has_value() != y.rhs.has_value())
    return false;
  return (!x.lhs || *x.lhs == *y.lhs) && (!x.rhs || *x.rhs == *y.rhs);
}

std::string Expr::to_string() const {
  const auto& nd = *node_;
  switch (nd.kind) {
    case Kind::Number: return format_number(nd.value);
    case Kind::Pi: return "pi";
    case Kind::Variable:
      return std::string(nd.axis % 2 ? "y" : "x") + std::to_string(nd.axis / 2 + 1);
    case Kind::Negate: return "(-" + nd.lhs->to_string() + ")";
    case Kind::Add: return "(" + nd.lhs->to_string() + " + " + nd.rhs->to_string() + ")";
    case Kind::Sub: return "(" + nd.lhs->to_string() + " - " + nd.rhs->to_string() + ")";
    case Kind::Mul: return "(" + nd.lhs->to_string() + " * " + nd.rhs->to_string() + ")";
    case Kind::Div: return "(" + nd.lhs->to_string() + " / " + nd.rhs->to_string() + ")";
    case Kind::Pow: return "(" + nd.lhs->to_string() + "^" + format_number(nd.value) + ")";
    default: return std::string(function_name(nd.kind)) + "(" + nd.lhs->to_string() + ")";
  }
}

double Expr::evaluate(const Coordinates& x) const {
  const auto& nd = *node_;
  switch (nd.kind) {
    case Kind::Number: return nd.value;
    case Kind::Pi: return M_PI;
    case Kind::Variable: return x[static_cast<std::size_t>(nd.axis)];
    case Kind::Negate: return -nd.lhs->evaluate(x);
    case Kind::Add: return nd.lhs->evaluate(x) + nd.rhs->evaluate(x);
    case Kind::Sub: return nd.lhs->evaluate(x) - nd.rhs->evaluate(x);
    case Kind::Mul: return nd.lhs->evaluate(x) * nd.rhs->evaluate(x);
    case Kind::Div: return nd.lhs->evaluate(x) / nd.rhs->evaluate(x);
    case Kind::Pow: return std::pow(nd.lhs->evaluate(x), nd.value);
    case Kind::Sin: return std::sin(nd.lhs->evaluate(x));
    case Kind::Cos: return std::cos(nd.lhs->evaluate(x));
    case Kind::Exp: return std::exp(nd.lhs->evaluate(x));
    case Kind::Log: {
      const double v = nd.lhs->evaluate(x);
      return v > 0.0 ? std::log(v) : NAN;
    }
  }
  return NAN;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, int n) : text_(text), n_(n) {}

  Expr run() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    Expr e = expr();
    skip_space();
    if (pos_ != text_.size())
      throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return e;
  }

 private:
  static constexpr int kMaxNesting = 256;

  Expr checked(Expr e, std::size_t at) const {
    if (e.depth() > Expr::kMaxDepth)
      throw ParseError("expression deeper than " + std::to_string(Expr::kMaxDepth), at);
    return e;
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    if (++nesting_ > kMaxNesting) throw ParseError("expression nested too deeply", pos_);
    const std::size_t start = pos_;
    Expr e = term();
    for (;;) {
      if (accept('+')) e = checked(Expr::binary(Expr::Kind::Add, e, term()), start);
      else if (accept('-')) e = checked(Expr::binary(Expr::Kind::Sub, e, term()), start);
      else break;
    }
    --nesting_;
    return e;
  }

  Expr term() {
    const std::size_t start = pos_;
    Expr e = unary();
    for (;;) {
      if (accept('*')) e = checked(Expr::binary(Expr::Kind::Mul, e, unary()), start);
      else if (accept('/')) e = checked(Expr::binary(Expr::Kind::Div, e, unary()), start);
      else break;
    }
    return e;
  }

  Expr unary() {
    skip_space();
    const std::size_t start = pos_;
    if (accept('-')) {
      if (++nesting_ > kMaxNesting) throw ParseError("expression nested too deeply", start);
      Expr e = checked(Expr::unary(Expr::Kind::Negate, unary()), start);
      --nesting_;
      return e;
    }
    return power();
  }

  Expr power() {
    skip_space();
    const std::size_t start = pos_;
    Expr base = primary();
    if (!accept('^')) return base;
    skip_space();
    bool negative = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      negative = true;
      ++pos_;
    }
    if (pos_ >= text_.size() || !(std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                                  text_[pos_] == '.'))
      throw ParseError("exponent must be a numeric literal", pos_);
    const double v = number();
    return checked(Expr::power(base, negative ? -v : v), start);
  }

  double number() {
    const std::size_t start = pos_;
    std::size_t end = pos_;
    auto digits = [&] {
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
    };
    digits();
    if (end < text_.size() && text_[end] == '.') {
      ++end;
      digits();
    }
    if (end == start + (text_[start] == '.' ? 1u : 0u)) throw ParseError("malformed number", start);
    if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
      std::size_t e = end + 1;
      if (e < text_.size() && (text_[e] == '+' || text_[e] == '-')) ++e;
      if (e >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[e])))
        throw ParseError("malformed exponent", e);
      end = e;
      digits();
    }
    double v = 0.0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + end, v);
    if (res.ec != std::errc() || res.ptr != text_.data() + end || !std::isfinite(v))
      throw ParseError("number out of range", start);
    pos_ = end;
    return v;
  }

  Expr primary() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ >= text_.size()) throw ParseError("expected an expression", pos_);
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Expr::number(number());
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) ++end;
      const std::string_view word = text_.substr(pos_, end - pos_);
      pos_ = end;
      if (word == "pi") return Expr::pi();
      for (auto kind : {Expr::Kind::Sin, Expr::Kind::Cos, Expr::Kind::Exp, Expr::Kind::Log})
        if (word == function_name(kind)) {
          if (!accept('(')) throw ParseError("expected '(' after " + std::string(word), pos_);
          Expr arg = expr();
          if (!accept(')')) throw ParseError("expected ')'", pos_);
          return checked(Expr::unary(kind, arg), start);
        }
      if ((word[0] == 'x' || word[0] == 'y') && word.size() > 1 &&
          word.find_first_not_of("0123456789", 1) == std::string_view::npos) {
        int index = 0;
        std::from_chars(word.data() + 1, word.data() + word.size(), index);
        if (index < 1 || index > n_)
          throw ParseError("variable " + std::string(word) + " out of range for n = " +
                               std::to_string(n_),
                           start);
        return Expr::variable(word[0] == 'x' ? x_axis(index - 1) : y_axis(index - 1));
      }
      throw ParseError("unknown identifier '" + std::string(word) + "'", start);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view text_;
  int n_;
  std::size_t pos_ = 0;
  int nesting_ = 0;
};

std::string describe_point(const PeriodicGrid& grid, const Coordinates& x) {
  std::ostringstream os;
  os << "(";
  for (int a = 0; a < grid.real_dim(); ++a) {
    if (a) os << ", ";
    os << (a % 2 ? "y" : "x") << a / 2 + 1 << "=" << x[static_cast<std::size_t>(a)];
  }
  os << ")";
  return os.str();
}

}  // namespace

Expr parse_expr(std::string_view text, int n) {
  if (n < 1 || n > kMaxComplexDim) throw InputError("expression dimension must be 1..3");
  return Parser(text, n).run();
}

ScalarField evaluate(const Expr& e, const PeriodicGrid& grid) {
  ScalarField f(grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto x = grid.coordinates(k);
    const double v = e.evaluate(x);
    if (!std::isfinite(v))
      throw DomainError("expression " + e.to_string() + " is not finite at grid point " +
                        describe_point(grid, x));
    f[k] = v;
  }
  return f;
}

double periodicity_defect(const Expr& e, const PeriodicGrid& grid) {
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto x = grid.coordinates(k);
    for (int a = 0; a < grid.real_dim(); ++a) {
      if (!grid.active(a) || x[static_cast<std::size_t>(a)] != 0.0) continue;
      auto wrapped = x;
      wrapped[static_cast<std::size_t>(a)] = 1.0;
      const double d = std::abs(e.evaluate(wrapped) - e.evaluate(x));
      if (std::isfinite(d)) worst = std::max(worst, d);
    }
  }
  return worst;
}

}  // namespace hermweb
