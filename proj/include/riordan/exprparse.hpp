#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "riordan/fps.hpp"

namespace riordan::expr {

struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
};

enum class TokenKind { Rational, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::End;
  Span span;
  std::string text;
  Rational value;  // Rational tokens only
};

enum class ParseErrorKind {
  IllegalCharacter,
  UnknownIdentifier,
  UnexpectedToken,
  IntegerTooLarge,
  InvalidRootIndex,
  NestingTooDeep,
  DivisionValuation,
  DivisionByZero,
  RootConstantTerm,
  NegativePowerOfNonunit,
};

std::string_view to_string(ParseErrorKind kind);

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, Span span, std::string message,
             std::vector<std::string> expected = {});

  ParseErrorKind kind() const noexcept { return kind_; }
  Span span() const noexcept { return span_; }
  std::size_t offset() const noexcept { return span_.begin; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  ParseErrorKind kind_;
  Span span_;
  std::vector<std::string> expected_;
};

std::vector<Token> tokenize(std::string_view input);

enum class NodeKind { Literal, Var, Neg, Add, Sub, Mul, Div, Pow, Sqrt, Root };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  NodeKind kind = NodeKind::Literal;
  Rational value;    // Literal
  std::string text;  // Literal source text
  long integer = 0;  // Pow exponent, Root index
  NodePtr lhs;       // operand of unary nodes
  NodePtr rhs;
  Span span;
};

NodePtr literal(const Rational& value);
NodePtr variable();
NodePtr unary(NodeKind kind, NodePtr operand, long integer = 0);
NodePtr binary(NodeKind kind, NodePtr lhs, NodePtr rhs);

NodePtr parse(const std::vector<Token>& tokens);
NodePtr parse(std::string_view input);

// Minimal-parenthesis rendering; parse(to_string(e)) has the same shape as e.
std::string to_string(const Node& node);

// Structural tree form, e.g. Div(Neg(t), Root(2, Add(1, Pow(t, 2)))).
std::string to_tree(const Node& node);

bool same_shape(const Node& a, const Node& b);

// Evaluates at order N. Internally works at a higher order so that
// cancellations in division and roots do not lose the top coefficients.
Fps evaluate(const Node& node, std::size_t order);
Fps evaluate(std::string_view input, std::size_t order);

}  // namespace riordan::expr
