#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ramanujan/field.hpp"

namespace ramanujan {

/// Univariate polynomial over a finite field, coefficients lowest degree
/// first with no trailing zeros. The zero polynomial has degree -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(FieldPtr field);
  Poly(FieldPtr field, std::vector<Elem> coeffs);

  static Poly constant(FieldPtr field, Elem c);
  static Poly monomial(FieldPtr field, Elem c, unsigned degree);
  static Poly x(FieldPtr field) { return monomial(std::move(field), 1, 1); }

  const FieldPtr& field() const { return field_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  Elem lead() const { return c_.empty() ? 0 : c_.back(); }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  Poly monic() const;
  Poly scaled(Elem c) const;
  Poly shifted(unsigned k) const;  // times x^k
  Poly derivative() const;

  /// Same coefficients viewed over another field of the same tower
  /// (embedding into an extension, or restriction when all coefficients lie
  /// in the smaller field).
  Poly with_field(FieldPtr target) const;
  /// Applies phi^i to every coefficient.
  Poly frobenius(long i) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b);

  /// Human readable, descending powers: "x^3+x+1".
  std::string to_string(std::string_view var = "x") const;
  /// Ascending powers: "1+x+x^3".
  std::string to_string_ascending(std::string_view var = "x") const;

  /// Accepts "x^3+x+1", "2*x^2 - x + 3", or a coefficient list "[1,1,0,1]".
  static Poly parse(FieldPtr field, std::string_view text);

 private:
  void trim();

  FieldPtr field_;
  std::vector<Elem> c_;
};

struct PolyDivMod {
  Poly quotient;
  Poly remainder;
};

/// Throws DivisionByZeroPoly when `divisor` is zero.
PolyDivMod divmod(const Poly& dividend, const Poly& divisor);
inline Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).remainder; }
inline Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).quotient; }

/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

struct ExtGcd {
  Poly gcd;  // monic
  Poly u;
  Poly v;    // u*a + v*b = gcd
};
ExtGcd ext_gcd(const Poly& a, const Poly& b);

/// f(h(x)).
Poly compose(const Poly& f, const Poly& h);
Poly pow(const Poly& f, unsigned e);
Poly pow_mod(const Poly& f, std::uint64_t e, const Poly& modulus);

/// Evaluates f at `at`, an element of `where` (which must contain f's
/// coefficient field in its tower).
Elem evaluate(const Poly& f, const Field& where, Elem at);

/// Element of the fraction field, kept reduced with a monic denominator so
/// that equality is structural.
class RationalFn {
 public:
  RationalFn() = default;
  explicit RationalFn(Poly num);
  RationalFn(Poly num, Poly den);

  static RationalFn zero(FieldPtr f) { return RationalFn(Poly(std::move(f))); }
  static RationalFn one(FieldPtr f) { return RationalFn(Poly::constant(std::move(f), 1)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const FieldPtr& field() const { return num_.field(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }

  RationalFn inverse() const;
  RationalFn frobenius(long i) const;
  RationalFn with_field(FieldPtr target) const;

  RationalFn operator-() const;
  friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b);
  friend bool operator==(const RationalFn& a, const RationalFn& b);

  std::string to_string(std::string_view var = "x") const;

 private:
  void normalize();

  Poly num_;
  Poly den_;
};

/// The finite local ring F_q[x]/(g^s) with g monic irreducible of degree e.
/// Elements are packed polynomials of degree < e*s.
class LocalRing {
 public:
  LocalRing(Poly g, unsigned s);

  const FieldPtr& base_field() const { return g_.field(); }
  const Poly& g() const { return g_; }
  unsigned s() const { return s_; }
  unsigned e() const { return static_cast<unsigned>(g_.degree()); }
  const Poly& modulus() const { return modulus_; }
  /// |L| = q^(e*s).
  std::uint64_t size() const { return size_; }
  /// |L_0| = q^e.
  std::uint64_t residue_size() const { return residue_size_; }

  Elem reduce(const Poly& f) const;
  Poly lift(Elem a) const;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(Elem a, Elem b) const { return add_packed(a, b, base_field()->characteristic()); }
  Elem sub(Elem a, Elem b) const { return sub_packed(a, b, base_field()->characteristic()); }
  Elem neg(Elem a) const { return sub(0, a); }
  Elem mul(Elem a, Elem b) const;
  Elem pow(Elem a, std::uint64_t e) const;

  /// Unit iff g does not divide the representative.
  bool is_unit(Elem a) const;
  /// Inverse through the extended Euclidean algorithm against g^s. Throws
  /// NonUnit for elements of the maximal ideal.
  Elem inverse(Elem a) const;
  /// Image in the residue field L_0 = F_q[x]/(g), packed.
  Elem residue(Elem a) const;

  void check(Elem a) const;

 private:
  Elem mul_generic(Elem a, Elem b) const;

  Poly g_;
  unsigned s_ = 1;
  Poly modulus_;
  unsigned len_ = 0;
  std::uint64_t size_ = 0;
  std::uint64_t residue_size_ = 0;
  std::vector<Elem> mul_table_;
  std::vector<Elem> inv_table_;  // 0 marks a non-unit
};

}  // namespace ramanujan
