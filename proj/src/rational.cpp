#include "riordan/rational.hpp"

#include <cctype>
#include <ostream>

#include "riordan/error.hpp"

namespace riordan {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorCode::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorCode::ValuationTooHigh: return "ValuationTooHigh";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotUnitConstant: return "NotUnitConstant";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::G0Zero: return "G0Zero";
    case ErrorCode::F0Nonzero: return "F0Nonzero";
    case ErrorCode::F1Zero: return "F1Zero";
    case ErrorCode::MatrixTooLarge: return "MatrixTooLarge";
    case ErrorCode::NotInvolution: return "NotInvolution";
    case ErrorCode::ScalarArray: return "ScalarArray";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::NotMember: return "NotMember";
    case ErrorCode::NoNonscalarInvolutions: return "NoNonscalarInvolutions";
    case ErrorCode::InvalidWitness: return "InvalidWitness";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
  }
  return "Unknown";
}

Rational::Rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  mpq_class value;
  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto num = body.substr(0, slash);
    const auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw Error(ErrorCode::InvalidArgument, "malformed rational '" + std::string(text) + "'");
    mpz_class d(std::string(den), 10);
    if (d == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
    value = mpq_class(mpz_class(std::string(num), 10), d);
  } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
    const auto whole = body.substr(0, dot);
    const auto frac = body.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac))
      throw Error(ErrorCode::InvalidArgument, "malformed decimal '" + std::string(text) + "'");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    value = mpq_class(mpz_class(std::string(whole) + std::string(frac), 10), scale);
  } else {
    if (!all_digits(body))
      throw Error(ErrorCode::InvalidArgument, "malformed rational '" + std::string(text) + "'");
    value = mpq_class(mpz_class(std::string(body), 10));
  }
  value.canonicalize();
  if (negative) value = -value;
  return Rational(value);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "rational division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::inverse() const { return Rational(1) / *this; }

Rational Rational::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  Rational result(1);
  Rational base = *this;
  for (unsigned long e = static_cast<unsigned long>(exponent); e != 0; e >>= 1) {
    if (e & 1U) result *= base;
    base *= base;
  }
  return result;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace riordan
