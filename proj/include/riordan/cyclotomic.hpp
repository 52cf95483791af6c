#pragma once

#include <memory>
#include <string>
#include <vector>

#include "riordan/rational.hpp"

namespace riordan {

// The number field Q(z) with z = exp(2*pi*i/m), stored as Q[x] / Phi_m(x).
struct CyclotomicField {
  int m = 1;
  std::vector<Rational> modulus;  // monic Phi_m, lowest degree first

  std::size_t degree() const { return modulus.size() - 1; }
  std::string name() const;
};

std::shared_ptr<const CyclotomicField> cyclotomic_field(int m);

// Element of a cyclotomic field. A default-constructed or rational-built value
// carries no field and coerces into whichever field it meets.
class Cyclotomic {
 public:
  Cyclotomic() : coeffs_{Rational(0)} {}
  Cyclotomic(long v) : coeffs_{Rational(v)} {}                 // NOLINT
  Cyclotomic(const Rational& v) : coeffs_{v} {}                // NOLINT
  Cyclotomic(std::shared_ptr<const CyclotomicField> field, std::vector<Rational> coeffs);

  static Cyclotomic zeta(const std::shared_ptr<const CyclotomicField>& field);

  const std::shared_ptr<const CyclotomicField>& field() const noexcept { return field_; }
  // Coefficients in the power basis 1, z, z^2, ...; trailing zeros trimmed.
  std::vector<Rational> coefficients() const;

  bool is_zero() const;
  bool is_rational() const;
  Rational rational_part() const { return coeffs_.front(); }

  std::string to_string(const std::string& symbol = "z") const;

  Cyclotomic operator-() const;
  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b);
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
  Cyclotomic& operator/=(const Cyclotomic& o) { return *this = *this / o; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

  Cyclotomic inverse() const;

 private:
  std::shared_ptr<const CyclotomicField> field_;
  std::vector<Rational> coeffs_;  // length degree() with a field, 1 without
};

}  // namespace riordan
