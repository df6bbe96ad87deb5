#pragma once

#include <cstdint>
#include <vector>

#include "ramanujan/polyring.hpp"

namespace ramanujan {

/// A d x d matrix over L, scaled so its first row-major unit entry is 1.
struct ProjMatrix {
  unsigned n = 0;
  std::vector<Elem> a;  // row-major

  Elem operator()(unsigned r, unsigned c) const { return a[r * n + c]; }
  friend bool operator==(const ProjMatrix&, const ProjMatrix&) = default;
  friend auto operator<=>(const ProjMatrix&, const ProjMatrix&) = default;
};

/// Determinant over the commutative ring L (elimination with unit pivots;
/// returns a non-unit when no unit pivot exists).
Elem determinant(const LocalRing& ring, unsigned n, std::vector<Elem> m);

/// Throws SingularMatrix when the determinant is not a unit.
ProjMatrix canonicalize(const LocalRing& ring, unsigned n, std::vector<Elem> m);
ProjMatrix identity_proj(unsigned n);
ProjMatrix mat_mul(const LocalRing& ring, const ProjMatrix& x, const ProjMatrix& y);

struct ClosureEdge {
  std::uint32_t src;
  std::uint32_t dst;
  std::uint32_t color;      // k
  std::uint32_t generator;  // index into GroupClosure::generators
};

struct GroupClosure {
  unsigned n = 0;
  std::vector<Elem> elements;  // element i occupies [i*n*n, (i+1)*n*n)
  std::vector<ClosureEdge> edges;
  std::vector<ProjMatrix> generators;
  std::vector<std::uint32_t> generator_color;

  std::size_t size() const { return n == 0 ? 0 : elements.size() / (static_cast<std::size_t>(n) * n); }
  ProjMatrix element(std::size_t i) const;
  unsigned max_color() const;
};

constexpr std::size_t kDefaultClosureCap = 2'000'000;

/// Breadth-first closure from the identity under right multiplication.
/// `by_color[k-1]` lists the generators of color k; each color's list is
/// sorted by encoding before use, and generator ids follow that order.
/// Throws CapExceeded when more than `cap` elements appear.
GroupClosure closure(const LocalRing& ring, std::vector<std::vector<ProjMatrix>> by_color,
                     std::size_t cap = kDefaultClosureCap);

/// r * |PSL_d(F_Q)|.
std::uint64_t expected_order(unsigned d, std::uint64_t Q, unsigned s, unsigned r);
/// r * |PSL_d(L)| with |SL_d(L)| = |SL_d(L_0)| |L_0|^((s-1)(d^2-1)) and the
/// scalar subgroup {c : c^d = 1} counted in L. Throws UnsupportedParams when
/// s > 1 and d is divisible by the characteristic.
std::uint64_t expected_order(const LocalRing& ring, unsigned d, unsigned r);

/// Elements c of L with c^d = 1, by enumeration.
std::uint64_t count_dth_roots_of_unity(const LocalRing& ring, unsigned d);

}  // namespace ramanujan
