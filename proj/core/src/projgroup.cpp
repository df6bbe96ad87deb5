#include "ramanujan/projgroup.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "ramanujan/galois.hpp"

namespace ramanujan {

namespace {

// Cofactor expansion; used only for blocks without a unit pivot.
Elem laplace(const LocalRing& ring, unsigned n, const std::vector<Elem>& m) {
  if (n == 1) return m[0];
  Elem total = 0;
  std::vector<Elem> minor(static_cast<std::size_t>(n - 1) * (n - 1));
  for (unsigned c = 0; c < n; ++c) {
    if (m[c] == 0) continue;
    std::size_t idx = 0;
    for (unsigned i = 1; i < n; ++i)
      for (unsigned j = 0; j < n; ++j)
        if (j != c) minor[idx++] = m[i * n + j];
    const Elem term = ring.mul(m[c], laplace(ring, n - 1, minor));
    total = c % 2 == 0 ? ring.add(total, term) : ring.sub(total, term);
  }
  return total;
}

struct VecHash {
  std::size_t operator()(const std::vector<Elem>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (Elem x : v) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

void scale_to_canonical(const LocalRing& ring, std::vector<Elem>& m) {
  for (Elem v : m) {
    if (v != 0 && ring.is_unit(v)) {
      if (v == 1) return;
      const Elem inv = ring.inverse(v);
      for (Elem& x : m) x = ring.mul(x, inv);
      return;
    }
  }
  throw Error(ErrorKind::SingularMatrix, "matrix has no unit entry");
}

bool mul_overflows(std::uint64_t a, std::uint64_t b, std::uint64_t& out) {
  return __builtin_mul_overflow(a, b, &out);
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (mul_overflows(a, b, r)) throw Error(ErrorKind::InvalidArgument, "group order exceeds 64 bits");
  return r;
}

std::uint64_t checked_pow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r = checked_mul(r, b);
  return r;
}

// |SL_d(F_Q)|
std::uint64_t sl_order(unsigned d, std::uint64_t Q) {
  std::uint64_t r = checked_pow(Q, static_cast<std::uint64_t>(d) * (d - 1) / 2);
  for (unsigned i = 2; i <= d; ++i) r = checked_mul(r, checked_pow(Q, i) - 1);
  return r;
}

}  // namespace

Elem determinant(const LocalRing& ring, unsigned n, std::vector<Elem> m) {
  if (m.size() != static_cast<std::size_t>(n) * n) throw Error(ErrorKind::InvalidArgument, "bad matrix size");
  Elem det = 1;
  for (unsigned c = 0; c < n; ++c) {
    unsigned piv = c;
    while (piv < n && !ring.is_unit(m[piv * n + c])) ++piv;
    if (piv == n) {
      std::vector<Elem> rest;
      for (unsigned i = c; i < n; ++i)
        for (unsigned j = c; j < n; ++j) rest.push_back(m[i * n + j]);
      return ring.mul(det, laplace(ring, n - c, rest));
    }
    if (piv != c) {
      for (unsigned j = 0; j < n; ++j) std::swap(m[piv * n + j], m[c * n + j]);
      det = ring.neg(det);
    }
    const Elem p = m[c * n + c];
    det = ring.mul(det, p);
    const Elem pinv = ring.inverse(p);
    for (unsigned i = c + 1; i < n; ++i) {
      const Elem f = ring.mul(m[i * n + c], pinv);
      if (f == 0) continue;
      for (unsigned j = c; j < n; ++j) m[i * n + j] = ring.sub(m[i * n + j], ring.mul(f, m[c * n + j]));
    }
  }
  return det;
}

ProjMatrix canonicalize(const LocalRing& ring, unsigned n, std::vector<Elem> m) {
  for (Elem v : m) ring.check(v);
  if (!ring.is_unit(determinant(ring, n, m))) {
    throw Error(ErrorKind::SingularMatrix, "determinant is not a unit of L");
  }
  scale_to_canonical(ring, m);
  return {n, std::move(m)};
}

ProjMatrix identity_proj(unsigned n) {
  ProjMatrix p{n, std::vector<Elem>(static_cast<std::size_t>(n) * n, 0)};
  for (unsigned i = 0; i < n; ++i) p.a[i * n + i] = 1;
  return p;
}

ProjMatrix mat_mul(const LocalRing& ring, const ProjMatrix& x, const ProjMatrix& y) {
  const unsigned n = x.n;
  std::vector<Elem> r(static_cast<std::size_t>(n) * n, 0);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned k = 0; k < n; ++k) {
      const Elem a = x.a[i * n + k];
      if (a == 0) continue;
      for (unsigned j = 0; j < n; ++j) r[i * n + j] = ring.add(r[i * n + j], ring.mul(a, y.a[k * n + j]));
    }
  scale_to_canonical(ring, r);
  return {n, std::move(r)};
}

ProjMatrix GroupClosure::element(std::size_t i) const {
  const std::size_t sz = static_cast<std::size_t>(n) * n;
  return {n, std::vector<Elem>(elements.begin() + static_cast<std::ptrdiff_t>(i * sz),
                               elements.begin() + static_cast<std::ptrdiff_t>((i + 1) * sz))};
}

unsigned GroupClosure::max_color() const {
  unsigned m = 0;
  for (auto c : generator_color) m = std::max<unsigned>(m, c);
  return m;
}

GroupClosure closure(const LocalRing& ring, std::vector<std::vector<ProjMatrix>> by_color, std::size_t cap) {
  if (cap == 0) throw Error(ErrorKind::InvalidArgument, "closure cap must be positive");
  GroupClosure out;
  unsigned n = 0;
  for (std::size_t k = 0; k < by_color.size(); ++k) {
    auto& list = by_color[k];
    std::sort(list.begin(), list.end());
    for (auto& g : list) {
      if (n == 0) n = g.n;
      if (g.n != n) throw Error(ErrorKind::InvalidArgument, "generators of different sizes");
      out.generators.push_back(g);
      out.generator_color.push_back(static_cast<std::uint32_t>(k + 1));
    }
  }
  if (n == 0) n = 1;
  out.n = n;
  const std::size_t sz = static_cast<std::size_t>(n) * n;

  std::unordered_map<std::vector<Elem>, std::uint32_t, VecHash> index;
  const ProjMatrix id = identity_proj(n);
  out.elements = id.a;
  index.emplace(id.a, 0);

  std::vector<Elem> prod(sz);
  for (std::size_t cur = 0; cur < out.size(); ++cur) {
    for (std::size_t gi = 0; gi < out.generators.size(); ++gi) {
      const auto& g = out.generators[gi].a;
      std::fill(prod.begin(), prod.end(), 0);
      const Elem* x = out.elements.data() + cur * sz;
      for (unsigned i = 0; i < n; ++i)
        for (unsigned k = 0; k < n; ++k) {
          const Elem a = x[i * n + k];
          if (a == 0) continue;
          for (unsigned j = 0; j < n; ++j) prod[i * n + j] = ring.add(prod[i * n + j], ring.mul(a, g[k * n + j]));
        }
      scale_to_canonical(ring, prod);
      auto [it, inserted] = index.try_emplace(prod, static_cast<std::uint32_t>(out.size()));
      if (inserted) {
        if (out.size() >= cap) {
          throw Error(ErrorKind::CapExceeded,
                      "closure exceeded cap of " + std::to_string(cap) + " elements");
        }
        out.elements.insert(out.elements.end(), prod.begin(), prod.end());
      }
      out.edges.push_back({static_cast<std::uint32_t>(cur), it->second, out.generator_color[gi],
                           static_cast<std::uint32_t>(gi)});
    }
  }
  return out;
}

std::uint64_t expected_order(unsigned d, std::uint64_t Q, unsigned s, unsigned r) {
  if (s != 1) throw Error(ErrorKind::UnsupportedParams, "the closed formula covers s = 1; pass the ring for s > 1");
  const std::uint64_t c = std::gcd(static_cast<std::uint64_t>(d), Q - 1);
  return checked_mul(sl_order(d, Q) / c, r);
}

std::uint64_t count_dth_roots_of_unity(const LocalRing& ring, unsigned d) {
  std::uint64_t count = 0;
  for (Elem c = 1; c < ring.size(); ++c)
    if (ring.is_unit(c) && ring.pow(c, d) == 1) ++count;
  return count;
}

std::uint64_t expected_order(const LocalRing& ring, unsigned d, unsigned r) {
  const std::uint64_t p = ring.base_field()->characteristic();
  if (ring.s() > 1 && d % p == 0) {
    throw Error(ErrorKind::UnsupportedParams, "s > 1 requires d prime to the characteristic");
  }
  const std::uint64_t Q = ring.residue_size();
  std::uint64_t sl = sl_order(d, Q);
  sl = checked_mul(sl, checked_pow(Q, static_cast<std::uint64_t>(ring.s() - 1) * (d * d - 1)));
  return checked_mul(sl / count_dth_roots_of_unity(ring, d), r);
}

}  // namespace ramanujan
