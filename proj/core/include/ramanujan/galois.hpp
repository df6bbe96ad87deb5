#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ramanujan/field.hpp"
#include "ramanujan/polyring.hpp"

namespace ramanujan {

/// Dense row-major matrix over a finite field.
struct FieldMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Elem> a;

  FieldMatrix() = default;
  FieldMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

  static FieldMatrix identity(std::size_t n);

  Elem& operator()(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  Elem operator()(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;
};

FieldMatrix matmul(const Field& f, const FieldMatrix& x, const FieldMatrix& y);
FieldMatrix transpose(const FieldMatrix& m);
std::size_t rank(const Field& f, FieldMatrix m);
/// Throws SingularMatrix.
FieldMatrix inverse(const Field& f, const FieldMatrix& m);

/// Lexicographically first monic irreducible polynomial of degree n over
/// `base`, scanning lower coefficients as a packed integer. Irreducibility is
/// decided by gcd(x^(q^i) - x, f) = 1 for i <= n/2 and f | x^(q^n) - x.
Poly find_irreducible(const FieldPtr& base, unsigned n);
bool is_irreducible(const Poly& f);

/// Minimal polynomial of `a` over ext.base(), found by Gaussian elimination on
/// the coordinate vectors of 1, a, a^2, ...
Poly min_poly(const FieldPtr& ext, Elem a);

/// True iff F_q(a) is all of `ext` (degree e over its base): a^(q^e') != a for
/// every maximal proper divisor e' of e.
bool is_field_generator(const Field& ext, Elem a);

/// The conjugate matrix of zeta: column i holds the coordinates of phi^i(zeta).
FieldMatrix conjugate_matrix(const Field& ext, Elem zeta);
bool is_normal_element(const Field& ext, Elem zeta);
/// First element, in packed order, whose conjugates form a basis.
Elem normal_element(const Field& ext);
/// zeta_i = phi^i(zeta_0), i < degree.
std::vector<Elem> normal_basis(const Field& ext, Elem zeta0);
std::vector<Elem> power_basis(const Field& ext);
bool is_basis(const Field& ext, std::span<const Elem> basis);

/// Serialization as coefficient vectors over the base, lowest degree first.
std::vector<Elem> to_coeff_vector(const Field& f, Elem a);
Elem from_coeff_vector(const Field& f, std::span<const Elem> coeffs);

std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace ramanujan
