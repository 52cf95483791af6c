#include "riordan/exprparse.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace riordan::expr {

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Rational: return "number";
    case TokenKind::Ident: return "identifier";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Slash: return "'/'";
    case TokenKind::Caret: return "'^'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::Comma: return "','";
    case TokenKind::End: return "end of input";
  }
  return "?";
}

std::string_view to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::IllegalCharacter: return "IllegalCharacter";
    case ParseErrorKind::UnknownIdentifier: return "UnknownIdentifier";
    case ParseErrorKind::UnexpectedToken: return "UnexpectedToken";
    case ParseErrorKind::IntegerTooLarge: return "IntegerTooLarge";
    case ParseErrorKind::InvalidRootIndex: return "InvalidRootIndex";
    case ParseErrorKind::NestingTooDeep: return "NestingTooDeep";
    case ParseErrorKind::DivisionValuation: return "DivisionValuation";
    case ParseErrorKind::DivisionByZero: return "DivisionByZero";
    case ParseErrorKind::RootConstantTerm: return "RootConstantTerm";
    case ParseErrorKind::NegativePowerOfNonunit: return "NegativePowerOfNonunit";
  }
  return "?";
}

namespace {

std::string format_message(ParseErrorKind kind, Span span, const std::string& message,
                           const std::vector<std::string>& expected) {
  std::string out = std::string(to_string(kind)) + " at offset " + std::to_string(span.begin) +
                    ": " + message;
  if (!expected.empty()) {
    out += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) out += i + 1 == expected.size() ? " or " : ", ";
      out += expected[i];
    }
    out += ")";
  }
  return out;
}

}  // namespace

ParseError::ParseError(ParseErrorKind kind, Span span, std::string message,
                       std::vector<std::string> expected)
    : Error(ErrorCode::InvalidArgument, format_message(kind, span, message, expected)),
      kind_(kind),
      span_(span),
      expected_(std::move(expected)) {}

std::vector<Token> tokenize(std::string_view input) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
  const auto is_alpha = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; };
  while (i < input.size()) {
    const char c = input[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_digit(c)) {
      while (i < input.size() && is_digit(input[i])) ++i;
      if (i < input.size() && input[i] == '.') {
        if (i + 1 >= input.size() || !is_digit(input[i + 1]))
          throw ParseError(ParseErrorKind::IllegalCharacter, {i, i + 1},
                           "decimal point must be followed by digits");
        ++i;
        while (i < input.size() && is_digit(input[i])) ++i;
      }
      Token tok{TokenKind::Rational, {start, i}, std::string(input.substr(start, i - start)), {}};
      tok.value = Rational::parse(tok.text);
      tokens.push_back(std::move(tok));
      continue;
    }
    if (is_alpha(c)) {
      while (i < input.size() && (is_alpha(input[i]) || is_digit(input[i]) || input[i] == '_')) ++i;
      std::string word(input.substr(start, i - start));
      if (word != "t" && word != "sqrt" && word != "root")
        throw ParseError(ParseErrorKind::UnknownIdentifier, {start, i},
                         "unknown identifier '" + word + "'", {"t", "sqrt", "root"});
      tokens.push_back({TokenKind::Ident, {start, i}, std::move(word), {}});
      continue;
    }
    TokenKind kind;
    switch (c) {
      case '+': kind = TokenKind::Plus; break;
      case '-': kind = TokenKind::Minus; break;
      case '*': kind = TokenKind::Star; break;
      case '/': kind = TokenKind::Slash; break;
      case '^': kind = TokenKind::Caret; break;
      case '(': kind = TokenKind::LParen; break;
      case ')': kind = TokenKind::RParen; break;
      case ',': kind = TokenKind::Comma; break;
      default: {
        std::string shown = std::isprint(static_cast<unsigned char>(c))
                                ? std::string("'") + c + "'"
                                : "byte " + std::to_string(static_cast<unsigned char>(c));
        throw ParseError(ParseErrorKind::IllegalCharacter, {i, i + 1},
                         "illegal character " + shown);
      }
    }
    ++i;
    tokens.push_back({kind, {start, i}, std::string(1, c), {}});
  }
  tokens.push_back({TokenKind::End, {input.size(), input.size()}, {}, {}});
  return tokens;
}

NodePtr literal(const Rational& value) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Literal;
  n->value = value;
  n->text = value.to_string();
  return n;
}

NodePtr variable() {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Var;
  return n;
}

NodePtr unary(NodeKind kind, NodePtr operand, long integer) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(operand);
  n->integer = kind == NodeKind::Sqrt ? 2 : integer;
  return n;
}

NodePtr binary(NodeKind kind, NodePtr lhs, NodePtr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

namespace {

constexpr int kMaxDepth = 256;

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {}

  NodePtr run() {
    auto e = expr();
    expect(TokenKind::End, {"operator", "end of input"});
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void unexpected(std::vector<std::string> expected) const {
    const Token& tok = peek();
    std::string what = tok.kind == TokenKind::End ? "End" : "'" + tok.text + "'";
    throw ParseError(ParseErrorKind::UnexpectedToken, tok.span, "unexpected " + what,
                     std::move(expected));
  }

  const Token& expect(TokenKind kind, std::vector<std::string> expected) {
    if (peek().kind != kind) unexpected(std::move(expected));
    return advance();
  }

  static NodePtr make(NodeKind kind, NodePtr lhs, NodePtr rhs, Span span, long integer = 0) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    n->integer = integer;
    n->span = span;
    return n;
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxDepth)
        throw ParseError(ParseErrorKind::NestingTooDeep, parser.peek().span,
                         "expression nested deeper than " + std::to_string(kMaxDepth));
    }
    ~DepthGuard() { --parser.depth_; }
    Parser& parser;
  };

  NodePtr expr() {
    DepthGuard guard(*this);
    auto lhs = term();
    while (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus) {
      const auto kind = advance().kind == TokenKind::Plus ? NodeKind::Add : NodeKind::Sub;
      auto rhs = term();
      const Span span{lhs->span.begin, rhs->span.end};
      lhs = make(kind, lhs, rhs, span);
    }
    return lhs;
  }

  NodePtr term() {
    auto lhs = unary_expr();
    while (peek().kind == TokenKind::Star || peek().kind == TokenKind::Slash) {
      const auto kind = advance().kind == TokenKind::Star ? NodeKind::Mul : NodeKind::Div;
      auto rhs = unary_expr();
      const Span span{lhs->span.begin, rhs->span.end};
      lhs = make(kind, lhs, rhs, span);
    }
    return lhs;
  }

  NodePtr unary_expr() {
    DepthGuard guard(*this);
    if (peek().kind == TokenKind::Minus) {
      const std::size_t start = advance().span.begin;
      auto operand = unary_expr();
      const Span span{start, operand->span.end};
      return make(NodeKind::Neg, operand, nullptr, span);
    }
    return power();
  }

  long integer_literal(std::vector<std::string> expected) {
    const Token& tok = peek();
    if (tok.kind != TokenKind::Rational || !tok.value.is_integer() ||
        tok.text.find('.') != std::string::npos)
      unexpected(std::move(expected));
    long value = 0;
    const auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
    if (ec != std::errc() || ptr != tok.text.data() + tok.text.size())
      throw ParseError(ParseErrorKind::IntegerTooLarge, tok.span,
                       "integer " + tok.text + " is too large");
    advance();
    return value;
  }

  NodePtr power() {
    auto base = atom();
    if (peek().kind != TokenKind::Caret) return base;
    advance();
    bool negative = false;
    if (peek().kind == TokenKind::Minus) {
      negative = true;
      advance();
    }
    const Token& exp_tok = peek();
    long e = integer_literal({"integer exponent"});
    if (negative) e = -e;
    const Span span{base->span.begin, exp_tok.span.end};
    return make(NodeKind::Pow, base, nullptr, span, e);
  }

  NodePtr atom() {
    const Token& tok = peek();
    switch (tok.kind) {
      case TokenKind::Rational: {
        advance();
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::Literal;
        n->value = tok.value;
        n->text = tok.text;
        n->span = tok.span;
        return n;
      }
      case TokenKind::LParen: {
        advance();
        auto inner = expr();
        expect(TokenKind::RParen, {"')'"});
        return inner;
      }
      case TokenKind::Ident: {
        if (tok.text == "t") {
          advance();
          auto n = std::make_shared<Node>();
          n->kind = NodeKind::Var;
          n->span = tok.span;
          return n;
        }
        const bool is_sqrt = tok.text == "sqrt";
        const std::size_t start = advance().span.begin;
        expect(TokenKind::LParen, {"'('"});
        long index = 2;
        if (!is_sqrt) {
          const Span index_span = peek().span;
          index = integer_literal({"integer root index"});
          if (index < 1)
            throw ParseError(ParseErrorKind::InvalidRootIndex, index_span,
                             "root index must be a positive integer");
          expect(TokenKind::Comma, {"','"});
        }
        auto inner = expr();
        const std::size_t end = expect(TokenKind::RParen, {"')'"}).span.end;
        return make(is_sqrt ? NodeKind::Sqrt : NodeKind::Root, inner, nullptr, {start, end}, index);
      }
      default:
        unexpected({"number", "'t'", "'('", "'sqrt'", "'root'", "'-'"});
    }
  }

  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace

NodePtr parse(const std::vector<Token>& tokens) {
  if (tokens.empty() || tokens.back().kind != TokenKind::End)
    throw Error(ErrorCode::InvalidArgument, "token stream must end with End");
  return Parser(tokens).run();
}

NodePtr parse(std::string_view input) { return parse(tokenize(input)); }

namespace {

// Precedence levels: 1 sum, 2 product, 3 unary minus, 4 power, 5 atom.
std::string render(const Node& n, int min_level) {
  std::string out;
  int level = 5;
  switch (n.kind) {
    case NodeKind::Literal: out = n.text.empty() ? n.value.to_string() : n.text; break;
    case NodeKind::Var: out = "t"; break;
    case NodeKind::Add:
    case NodeKind::Sub:
      level = 1;
      out = render(*n.lhs, 1) + (n.kind == NodeKind::Add ? " + " : " - ") + render(*n.rhs, 2);
      break;
    case NodeKind::Mul:
    case NodeKind::Div:
      level = 2;
      out = render(*n.lhs, 2) + (n.kind == NodeKind::Mul ? "*" : "/") + render(*n.rhs, 3);
      break;
    case NodeKind::Neg:
      level = 3;
      out = "-" + render(*n.lhs, 3);
      break;
    case NodeKind::Pow:
      level = 4;
      out = render(*n.lhs, 5) + "^" + std::to_string(n.integer);
      break;
    case NodeKind::Sqrt: out = "sqrt(" + render(*n.lhs, 1) + ")"; break;
    case NodeKind::Root:
      out = "root(" + std::to_string(n.integer) + ", " + render(*n.lhs, 1) + ")";
      break;
  }
  // Literals whose text is not a single number token (e.g. "1/2") need parentheses.
  if (n.kind == NodeKind::Literal && out.find('/') != std::string::npos) level = 2;
  if (n.kind == NodeKind::Literal && out.front() == '-') level = 3;
  return level < min_level ? "(" + out + ")" : out;
}

std::string_view tree_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::Literal: return "";
    case NodeKind::Var: return "t";
    case NodeKind::Neg: return "Neg";
    case NodeKind::Add: return "Add";
    case NodeKind::Sub: return "Sub";
    case NodeKind::Mul: return "Mul";
    case NodeKind::Div: return "Div";
    case NodeKind::Pow: return "Pow";
    case NodeKind::Sqrt: return "Sqrt";
    case NodeKind::Root: return "Root";
  }
  return "?";
}

}  // namespace

std::string to_string(const Node& node) { return render(node, 1); }

std::string to_tree(const Node& n) {
  const std::string name(tree_name(n.kind));
  switch (n.kind) {
    case NodeKind::Literal: return n.value.to_string();
    case NodeKind::Var: return name;
    case NodeKind::Neg:
    case NodeKind::Sqrt: return name + "(" + to_tree(*n.lhs) + ")";
    case NodeKind::Pow: return name + "(" + to_tree(*n.lhs) + ", " + std::to_string(n.integer) + ")";
    case NodeKind::Root: return name + "(" + std::to_string(n.integer) + ", " + to_tree(*n.lhs) + ")";
    default: return name + "(" + to_tree(*n.lhs) + ", " + to_tree(*n.rhs) + ")";
  }
}

bool same_shape(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::Literal: return a.value == b.value;
    case NodeKind::Var: return true;
    case NodeKind::Neg:
    case NodeKind::Sqrt:
    case NodeKind::Pow:
    case NodeKind::Root: return a.integer == b.integer && same_shape(*a.lhs, *b.lhs);
    default: return same_shape(*a.lhs, *b.lhs) && same_shape(*a.rhs, *b.rhs);
  }
}

namespace {

// A value computed at working order W whose coefficients 0..reliable are exact.
struct Value {
  Fps series;
  long reliable;
};

// Thrown when the working order is too small to decide a valuation.
struct NeedMorePrecision {
  Span span;
};

class Evaluator {
 public:
  explicit Evaluator(std::size_t working) : w_(working) {}

  Value eval(const Node& n) {
    switch (n.kind) {
      case NodeKind::Literal: return exact(Fps::constant(n.value, w_));
      case NodeKind::Var: return exact(Fps::variable(w_));
      case NodeKind::Neg: {
        auto a = eval(*n.lhs);
        return {negate(a.series), a.reliable};
      }
      case NodeKind::Add:
      case NodeKind::Sub: {
        auto a = eval(*n.lhs);
        auto b = eval(*n.rhs);
        return {n.kind == NodeKind::Add ? add(a.series, b.series) : sub(a.series, b.series),
                std::min(a.reliable, b.reliable)};
      }
      case NodeKind::Mul: return product(eval(*n.lhs), eval(*n.rhs));
      case NodeKind::Div: return quotient(eval(*n.lhs), eval(*n.rhs), n);
      case NodeKind::Pow: return raise(eval(*n.lhs), n.integer, n);
      case NodeKind::Sqrt:
      case NodeKind::Root: return root(eval(*n.lhs), n.kind == NodeKind::Sqrt ? 2 : n.integer, n);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown expression node");
  }

 private:
  Value exact(Fps s) const { return {std::move(s), static_cast<long>(w_)}; }

  long cap(long r) const { return std::min(r, static_cast<long>(w_)); }

  // Lower bound on the valuation from the reliable coefficients.
  static long valuation_bound(const Value& v) {
    for (long k = 0; k <= v.reliable; ++k)
      if (!v.series[static_cast<std::size_t>(k)].is_zero()) return k;
    return v.reliable + 1;
  }

  // Exact valuation, or a retry when the reliable part is all zero.
  static std::size_t valuation(const Value& v, const Node& n) {
    const long k = valuation_bound(v);
    if (k > v.reliable) throw NeedMorePrecision{n.span};
    return static_cast<std::size_t>(k);
  }

  Value product(const Value& a, const Value& b) const {
    const long r = std::min(a.reliable + valuation_bound(b), b.reliable + valuation_bound(a));
    return {mul(a.series, b.series), cap(r)};
  }

  Value quotient(const Value& a, const Value& b, const Node& n) const {
    const std::size_t v = valuation(b, n);
    for (std::size_t k = 0; k < v; ++k) {
      if (static_cast<long>(k) > a.reliable) throw NeedMorePrecision{n.span};
      if (!a.series[k].is_zero())
        throw ParseError(ParseErrorKind::DivisionValuation, n.span,
                         "numerator has valuation " + std::to_string(k) +
                             ", below the divisor's " + std::to_string(v));
    }
    Fps q = mul(shift_down(a.series, v), recip(shift_down(b.series, v)));
    return {std::move(q), std::min(a.reliable, b.reliable) - static_cast<long>(v)};
  }

  Value raise(const Value& a, long e, const Node& n) const {
    if (e == 0) return exact(Fps::one(w_));
    Value base = a;
    if (e < 0) {
      if (a.reliable < 0) throw NeedMorePrecision{n.span};
      if (a.series[0].is_zero())
        throw ParseError(ParseErrorKind::NegativePowerOfNonunit, n.span,
                         "negative power of a series with zero constant term");
      base = {recip(a.series), a.reliable};
      e = -e;
    }
    const long v = valuation_bound(base);
    // (v + x)^e with x known through reliable: error enters at reliable + (e-1) v.
    const long extra = v == 0 ? 0 : (e - 1 > static_cast<long>(w_) / v ? static_cast<long>(w_) : (e - 1) * v);
    return {power(base.series, e), cap(base.reliable + extra)};
  }

  static std::optional<mpz_class> exact_root(const mpz_class& x, long n) {
    if (x < 0 && n % 2 == 0) return std::nullopt;
    mpz_class r;
    mpz_class ax = abs(x);
    if (mpz_root(r.get_mpz_t(), ax.get_mpz_t(), static_cast<unsigned long>(n)) == 0)
      return std::nullopt;
    return x < 0 ? mpz_class(-r) : r;
  }

  Value root(const Value& a, long index, const Node& n) const {
    if (index == 1) return a;
    const std::size_t v = valuation(a, n);
    if (v % static_cast<std::size_t>(index) != 0)
      throw ParseError(ParseErrorKind::RootConstantTerm, n.span,
                       "radicand has valuation " + std::to_string(v) + ", not divisible by " +
                           std::to_string(index));
    const Rational c = a.series[v];
    const auto num = exact_root(c.numerator(), index);
    const auto den = exact_root(c.denominator(), index);
    if (!num || !den)
      throw ParseError(ParseErrorKind::RootConstantTerm, n.span,
                       "leading coefficient " + c.to_string() + " has no rational " +
                           std::to_string(index) + "-th root");
    const Rational c_root(mpq_class(*num, *den));
    const Fps unit = scale(shift_down(a.series, v), c.inverse());
    Fps r = shift_up(scale(unit_power(unit, Rational(1, index)), c_root),
                     v / static_cast<std::size_t>(index));
    const long shift = static_cast<long>(v) - static_cast<long>(v) / index;
    return {std::move(r), a.reliable - shift};
  }

  std::size_t w_;
};

}  // namespace

Fps evaluate(const Node& node, std::size_t order) {
  const std::size_t limit = 4 * order + 128;
  std::size_t working = order + 8;
  while (true) {
    try {
      const Value v = Evaluator(working).eval(node);
      if (v.reliable >= static_cast<long>(order)) return v.series.truncate(order);
    } catch (const NeedMorePrecision& need) {
      if (working >= limit)
        throw ParseError(ParseErrorKind::DivisionByZero, need.span,
                         "a divisor or radicand vanishes through degree " + std::to_string(working));
    }
    if (working >= limit)
      throw ParseError(ParseErrorKind::DivisionValuation, node.span,
                       "cancellation leaves fewer than " + std::to_string(order + 1) +
                           " exact coefficients");
    working = std::min(limit, 2 * working);
  }
}

Fps evaluate(std::string_view input, std::size_t order) { return evaluate(*parse(input), order); }

}  // namespace riordan::expr
