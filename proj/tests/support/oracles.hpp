#pragma once

// Brute-force reference computations on plain integer vectors modulo a prime.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <unordered_set>
#include <vector>

namespace oracle {

using IVec = std::vector<std::int64_t>;  // polynomial mod p, lowest degree first

inline std::int64_t mod(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

inline void trim(IVec& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline IVec mul(const IVec& a, const IVec& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  IVec c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = mod(c[i + j] + a[i] * b[j], p);
  trim(c);
  return c;
}

inline std::int64_t inv(std::int64_t a, std::int64_t p) {
  for (std::int64_t x = 1; x < p; ++x)
    if (mod(a * x, p) == 1) return x;
  return 0;
}

inline IVec rem(IVec a, const IVec& b, std::int64_t p) {
  trim(a);
  const std::int64_t li = inv(b.back(), p);
  while (a.size() >= b.size()) {
    const std::int64_t c = mod(a.back() * li, p);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = mod(a[shift + i] - c * b[i], p);
    trim(a);
  }
  return a;
}

/// Monic polynomial of degree n numbered by the packed integer of its lower
/// coefficients.
inline IVec monic_from_index(std::uint64_t idx, unsigned n, std::int64_t p) {
  IVec f(n + 1, 0);
  for (unsigned i = 0; i < n; ++i) {
    f[i] = static_cast<std::int64_t>(idx % p);
    idx /= p;
  }
  f[n] = 1;
  return f;
}

/// Trial division by every monic polynomial of degree 1..deg/2.
inline bool irreducible_by_trial(const IVec& f, std::int64_t p) {
  const unsigned n = static_cast<unsigned>(f.size() - 1);
  for (unsigned k = 1; k <= n / 2; ++k) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < k; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx)
      if (rem(f, monic_from_index(idx, k, p), p).empty()) return false;
  }
  return true;
}

/// Row-reduced echelon form mod p; returns the rank.
inline unsigned rref(std::vector<IVec>& m, std::int64_t p) {
  unsigned rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const std::int64_t li = inv(m[rank][c], p);
    for (auto& v : m[rank]) v = mod(v * li, p);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const std::int64_t f = m[r][c];
      for (std::size_t k = 0; k < cols; ++k) m[r][k] = mod(m[r][k] - f * m[rank][k], p);
    }
    ++rank;
  }
  return rank;
}

/// k-dimensional subspaces of F_p^d, by listing every k x d matrix and
/// collecting the distinct row-reduced forms of full rank.
inline std::uint64_t count_subspaces(unsigned d, unsigned k, std::int64_t p) {
  std::set<std::vector<IVec>> seen;
  std::uint64_t total = 1;
  for (unsigned i = 0; i < d * k; ++i) total *= p;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<IVec> m(k, IVec(d, 0));
    std::uint64_t t = idx;
    for (unsigned r = 0; r < k; ++r)
      for (unsigned c = 0; c < d; ++c) {
        m[r][c] = static_cast<std::int64_t>(t % p);
        t /= p;
      }
    if (rref(m, p) == k) seen.insert(m);
  }
  return seen.size();
}

/// |PSL_d(F_Q)| = Q^(d(d-1)/2) prod_{i=2..d} (Q^i - 1) / gcd(d, Q - 1).
inline std::uint64_t psl_order(unsigned d, std::uint64_t Q) {
  std::uint64_t n = 1;
  for (unsigned i = 0; i < d * (d - 1) / 2; ++i) n *= Q;
  std::uint64_t qi = Q;
  for (unsigned i = 2; i <= d; ++i) {
    qi *= Q;
    n *= qi - 1;
  }
  return n / std::gcd<std::uint64_t>(d, Q - 1);
}

struct Edge {
  std::uint32_t u;
  std::uint32_t v;
};

/// Triangles {a < b < c} of an undirected simple graph given as an edge
/// list: every edge (a, b) is extended by each c > b adjacent to a, and the
/// closing edge (b, c) is looked up in a hash set.
inline std::vector<std::vector<std::uint32_t>> triangles(std::size_t n, const std::vector<Edge>& edges) {
  std::unordered_set<std::uint64_t> has;
  std::vector<std::vector<std::uint32_t>> nbr(n);
  auto key = [](std::uint32_t a, std::uint32_t b) { return (static_cast<std::uint64_t>(a) << 32) | b; };
  for (const auto& e : edges) {
    if (e.u == e.v) continue;
    const auto a = std::min(e.u, e.v), b = std::max(e.u, e.v);
    if (has.insert(key(a, b)).second) {
      nbr[a].push_back(b);
      nbr[b].push_back(a);
    }
  }
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b : nbr[a]) {
      if (b <= a) continue;
      for (std::uint32_t c : nbr[a])
        if (c > b && has.count(key(b, c))) out.push_back({a, b, c});
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
