#include "riordan/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "riordan/error.hpp"

namespace riordan {

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (p.size() > 1 && p.back().is_zero()) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

Poly poly_sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// Returns (quotient, remainder) of a / b, b nonzero.
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  if (a.size() - 1 < db) return {Poly{Rational(0)}, a};
  Poly q(a.size() - db, Rational(0));
  const Rational lead = b.back();
  for (std::size_t i = a.size(); i-- > db;) {
    const Rational c = a[i] / lead;
    q[i - db] = c;
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  a.resize(db == 0 ? 1 : db, Rational(0));
  trim(a);
  trim(q);
  return {q, a};
}

bool poly_is_zero(const Poly& p) { return p.size() == 1 && p[0].is_zero(); }

Poly compute_cyclotomic(int m) {
  // x^m - 1 = prod_{d | m} Phi_d(x)
  Poly num(static_cast<std::size_t>(m) + 1, Rational(0));
  num[0] = Rational(-1);
  num[static_cast<std::size_t>(m)] = Rational(1);
  for (int d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    num = poly_divmod(num, compute_cyclotomic(d)).first;
  }
  return num;
}

}  // namespace

std::string CyclotomicField::name() const {
  if (degree() == 1) return "Q";
  return "Q(z), z = exp(2*pi*i/" + std::to_string(m) + ")";
}

std::shared_ptr<const CyclotomicField> cyclotomic_field(int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "cyclotomic order must be positive");
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const CyclotomicField>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[m];
  if (!slot) {
    auto field = std::make_shared<CyclotomicField>();
    field->m = m;
    field->modulus = compute_cyclotomic(m);
    slot = std::move(field);
  }
  return slot;
}

Cyclotomic::Cyclotomic(std::shared_ptr<const CyclotomicField> field, std::vector<Rational> coeffs)
    : field_(std::move(field)) {
  if (!field_) throw Error(ErrorCode::InvalidArgument, "null cyclotomic field");
  if (coeffs.empty()) coeffs.push_back(Rational(0));
  trim(coeffs);
  coeffs = poly_divmod(coeffs, field_->modulus).second;
  coeffs.resize(field_->degree(), Rational(0));
  coeffs_ = std::move(coeffs);
}

Cyclotomic Cyclotomic::zeta(const std::shared_ptr<const CyclotomicField>& field) {
  return Cyclotomic(field, {Rational(0), Rational(1)});
}

std::vector<Rational> Cyclotomic::coefficients() const {
  Poly p = coeffs_;
  trim(p);
  return p;
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) return false;
  return true;
}

std::string Cyclotomic::to_string(const std::string& symbol) const {
  const Poly p = coefficients();
  if (p.size() == 1) return p[0].to_string();
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i].is_zero()) continue;
    Rational c = p[i];
    if (!first) {
      os << (c.sign() < 0 ? " - " : " + ");
      if (c.sign() < 0) c = -c;
    } else if (c.sign() < 0 && i > 0) {
      os << "-";
      c = -c;
    }
    first = false;
    if (i == 0) {
      os << c;
    } else {
      if (!c.is_one()) os << c << "*";
      os << symbol;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

namespace {

const std::shared_ptr<const CyclotomicField>& join(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.field() && b.field() && a.field() != b.field())
    throw Error(ErrorCode::FieldMismatch, "cyclotomic values from different fields");
  return a.field() ? a.field() : b.field();
}

Poly lifted(const Cyclotomic& v) {
  Poly p = v.coefficients();
  return p;
}

Cyclotomic build(const std::shared_ptr<const CyclotomicField>& field, Poly p) {
  if (!field) {
    trim(p);
    return Cyclotomic(p.front());
  }
  return Cyclotomic(field, std::move(p));
}

}  // namespace

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  const auto& field = join(a, b);
  Poly p = lifted(a), q = lifted(b);
  if (p.size() < q.size()) p.resize(q.size(), Rational(0));
  for (std::size_t i = 0; i < q.size(); ++i) p[i] += q[i];
  return build(field, std::move(p));
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  const auto& field = join(a, b);
  return build(field, poly_mul(lifted(a), lifted(b)));
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "cyclotomic division by zero");
  if (!field_) return Cyclotomic(coeffs_.front().inverse());
  // Extended Euclid: find s with s * a = 1 (mod Phi_m); Phi_m is irreducible.
  Poly r0 = field_->modulus, r1 = coefficients();
  Poly s0{Rational(0)}, s1{Rational(1)};
  while (!poly_is_zero(r1)) {
    auto [q, r] = poly_divmod(r0, r1);
    Poly s2 = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant gcd.
  const Rational scale = r0.front().inverse();
  for (auto& c : s0) c *= scale;
  return Cyclotomic(field_, std::move(s0));
}

Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  join(a, b);
  return a.coefficients() == b.coefficients();
}

}  // namespace riordan
