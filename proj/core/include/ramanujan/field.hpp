#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ramanujan/error.hpp"

namespace ramanujan {

/// Packed field (or ring) element: c_0 + c_1*B + c_2*B^2 + ... where B is the
/// size of the coefficient field and c_i are coefficients, lowest degree first.
/// Because every level of a tower packs the same way, an element of a base
/// field has the same integer value inside any extension of it.
using Elem = std::uint64_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// A finite field: either the prime field F_p, or a simple extension
/// base[t]/(modulus(t)) of another Field with a chosen Frobenius generator
/// phi(a) = a^(|base|^ell).
///
/// Fields are immutable after construction and are shared by pointer.
class Field {
 public:
  static FieldPtr prime(std::uint64_t p);
  /// Extension by an explicit monic irreducible modulus (coefficients over
  /// `base`, lowest degree first). Throws InvalidArgument when the modulus is
  /// reducible or `ell` is not prime to the degree.
  static FieldPtr extension(FieldPtr base, std::vector<Elem> modulus, unsigned ell = 1);
  /// Extension of the given degree using the lexicographically first
  /// irreducible modulus.
  static FieldPtr extension(FieldPtr base, unsigned degree, unsigned ell = 1);
  /// F_{p^m} as a single extension of F_p (F_p itself when m == 1).
  static FieldPtr galois(std::uint64_t p, unsigned m);

  std::uint64_t characteristic() const { return p_; }
  std::uint64_t order() const { return order_; }
  /// Degree over `base()`; 1 for a prime field.
  unsigned degree() const { return degree_; }
  bool is_prime() const { return base_ == nullptr; }
  const FieldPtr& base() const { return base_; }
  /// Order of the coefficient field (p for a prime field, which has no base).
  std::uint64_t base_order() const { return base_ ? base_->order() : p_; }
  std::span<const Elem> modulus() const { return modulus_; }
  unsigned frobenius_exp() const { return ell_; }

  /// True when both describe the same field (same tower and moduli).
  bool same_as(const Field& other) const;

  bool contains(Elem a) const { return a < order_; }
  bool in_base(Elem a) const { return a < base_order(); }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t v) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  /// Coefficients over the base field, lowest degree first, length degree().
  std::vector<Elem> coords(Elem a) const;
  Elem from_coords(std::span<const Elem> c) const;

  /// phi^i(a) with phi = a -> a^(|base|^ell). Negative i is allowed.
  Elem frobenius(Elem a, long i = 1) const;
  /// Trace and norm down to the base field.
  Elem trace(Elem a) const;
  Elem norm(Elem a) const;

  /// Multiplicative order of a nonzero element.
  std::uint64_t multiplicative_order(Elem a) const;
  /// Lexicographically first generator of the multiplicative group.
  Elem primitive_element() const;

  /// Throws SpecMismatch unless `a` is a valid element of this field.
  void check(Elem a) const;

  std::string describe() const;

 private:
  Field() = default;
  void build_tables();
  Elem mul_generic(Elem a, Elem b) const;

  std::uint64_t p_ = 0;
  std::uint64_t order_ = 0;
  unsigned degree_ = 1;
  unsigned ell_ = 1;
  FieldPtr base_;
  std::vector<Elem> modulus_;
  // exp/log tables for small extensions; empty otherwise.
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
};

/// Digit-wise addition of packed base-p integers; valid for every level of a
/// tower over F_p.
Elem add_packed(Elem a, Elem b, std::uint64_t p);
Elem sub_packed(Elem a, Elem b, std::uint64_t p);

void require_same_field(const Field& a, const Field& b, const char* what);

}  // namespace ramanujan
