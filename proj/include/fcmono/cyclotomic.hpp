#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace fcmono {

using Rational = mpq_class;

// Parses "p", "-p" or "p/q" (canonicalised). Throws Error(parse_error).
Rational parse_rational(const std::string& text);
std::string rational_to_string(const Rational& q);
// Representative of q mod 1 in [0, 1).
Rational frac_part(const Rational& q);

// Q(zeta_N) with basis 1, z, ..., z^(phi-1), z = exp(2 pi i / N).
// Instances are interned, so pointer equality is field equality.
class CycField {
 public:
  static const CycField& get(std::uint32_t order);

  std::uint32_t order() const { return order_; }
  std::size_t degree() const { return degree_; }
  // Phi_N, low degree first, monic.
  const std::vector<std::int64_t>& min_poly() const { return min_poly_; }
  // Reduced coordinates of z^k for any integer k.
  const std::vector<std::int64_t>& power(std::int64_t k) const;
  std::string name() const;

  CycField(const CycField&) = delete;
  CycField& operator=(const CycField&) = delete;

 private:
  explicit CycField(std::uint32_t order);
  std::uint32_t order_;
  std::size_t degree_;
  std::vector<std::int64_t> min_poly_;
  std::vector<std::vector<std::int64_t>> powers_;
};

// Integer cyclotomic polynomial Phi_n, low degree first.
std::vector<std::int64_t> cyclotomic_polynomial(std::uint32_t n);
std::uint32_t euler_phi(std::uint32_t n);

class CycNum {
 public:
  // Zero of Q.
  CycNum() : CycNum(CycField::get(1)) {}
  explicit CycNum(const CycField& field);
  CycNum(const CycField& field, std::vector<Rational> coeffs);

  static CycNum zero(const CycField& field) { return CycNum(field); }
  static CycNum from_rational(const CycField& field, const Rational& q);
  static CycNum from_int(const CycField& field, long v) { return from_rational(field, Rational(v)); }
  // z^k.
  static CycNum root_power(const CycField& field, std::int64_t k);
  // exp(2 pi i q); the denominator of q must divide the field order.
  static CycNum root_of_unity(const CycField& field, const Rational& q);
  static CycNum parse(const CycField& field, const std::string& text);

  const CycField& field() const { return *field_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_integral() const;

  CycNum operator+(const CycNum& o) const;
  CycNum operator-(const CycNum& o) const;
  CycNum operator-() const;
  CycNum operator*(const CycNum& o) const;
  CycNum operator/(const CycNum& o) const;
  CycNum& operator+=(const CycNum& o);
  CycNum& operator-=(const CycNum& o);
  CycNum& operator*=(const CycNum& o);
  bool operator==(const CycNum& o) const;
  bool operator!=(const CycNum& o) const { return !(*this == o); }

  CycNum inv() const;
  CycNum pow(std::int64_t e) const;
  CycNum scaled(const Rational& q) const;
  // Image under Q(zeta_N) -> Q(zeta_M), N | M.
  CycNum embed(const CycField& target) const;

  // k in [0, N) with *this == z^k, or -1 if not a root of unity in the field.
  std::int64_t root_exponent() const;
  // Multiplicative order of a root of unity. Throws precondition_violated otherwise.
  std::uint32_t root_order() const;

  std::string to_string() const;
  std::size_t hash() const;

 private:
  void check_same(const CycNum& o) const;
  const CycField* field_;
  std::vector<Rational> coeffs_;
};

}  // namespace fcmono
