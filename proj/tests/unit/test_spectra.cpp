#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ramanujan/complex.hpp"
#include "ramanujan/quotient.hpp"
#include "ramanujan/spectra.hpp"

using namespace ramanujan;
using cd = std::complex<double>;

namespace {

struct Built {
  GroupClosure closure;
  unsigned r = 1;
};

Built quotient_group(std::uint64_t q, unsigned d, unsigned e) {
  AlgebraOptions o;
  o.q = q;
  o.d = d;
  Construction c = construct(o, e, 1);
  auto S = reduce_headers(header_sets(c.algebra, relations_P(c.algebra)), *c.quotient.ring);
  return {closure(*c.quotient.ring, S), c.quotient.r};
}

// Cayley graph of Z_n: color k moves x to x + t for t in shifts[k - 1].
GroupClosure circulant(std::uint32_t n, const std::vector<std::vector<std::int64_t>>& shifts) {
  GroupClosure g;
  g.n = 1;
  for (std::uint32_t i = 0; i < n; ++i) g.elements.push_back(i);
  for (std::uint32_t x = 0; x < n; ++x)
    for (unsigned k = 1; k <= shifts.size(); ++k)
      for (auto t : shifts[k - 1]) {
        auto y = static_cast<std::uint32_t>(((static_cast<std::int64_t>(x) + t) % n + n) % n);
        g.edges.push_back({x, y, k, 0});
      }
  return g;
}

// Character sums sum_t w^(j t) for each color, per frequency j.
std::vector<Tuple> circulant_spectrum(std::uint32_t n, const std::vector<std::vector<std::int64_t>>& shifts) {
  std::vector<Tuple> out;
  for (std::uint32_t j = 0; j < n; ++j) {
    Tuple t;
    for (const auto& s : shifts) {
      cd sum = 0;
      for (auto v : s) sum += std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(j) * static_cast<double>(v) / n);
      t.push_back(sum);
    }
    out.push_back(t);
  }
  return out;
}

bool close(const Tuple& a, const Tuple& b, double tol) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (std::abs(a[k] - b[k]) > tol) return false;
  return true;
}

// Every expected tuple is found with its multiplicity.
void check_against(const SpectrumReport& rep, const std::vector<Tuple>& expected) {
  std::size_t total = 0;
  for (const auto& t : rep.tuples) total += t.multiplicity;
  CHECK(total == expected.size());
  for (const auto& t : rep.tuples) {
    auto m = std::count_if(expected.begin(), expected.end(), [&](const Tuple& e) { return close(e, t.lambda, 1e-8); });
    CHECK(static_cast<std::size_t>(m) == t.multiplicity);
  }
}

// lambda_k = q^(k(d-k)/2) e_k(z)
Tuple tuple_from_torus(const std::vector<cd>& z, std::uint64_t q) {
  const auto d = static_cast<unsigned>(z.size());
  std::vector<cd> e(d + 1, 0.0);
  e[0] = 1;
  for (const auto& zi : z)
    for (unsigned k = d; k >= 1; --k) e[k] += e[k - 1] * zi;
  Tuple t;
  for (unsigned k = 1; k < d; ++k) t.push_back(std::pow(static_cast<double>(q), k * (d - k) / 2.0) * e[k]);
  return t;
}

std::vector<cd> random_torus_point(unsigned d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
  std::vector<cd> z;
  double sum = 0;
  for (unsigned i = 0; i + 1 < d; ++i) {
    double a = angle(rng);
    sum += a;
    z.push_back(std::polar(1.0, a));
  }
  z.push_back(std::polar(1.0, -sum));
  return z;
}

}  // namespace

TEST_CASE("polynomial roots") {
  auto roots = polynomial_roots({6.0, -7.0, 0.0, 1.0});  // (t - 1)(t - 2)(t + 3)
  REQUIRE(roots.size() == 3);
  std::sort(roots.begin(), roots.end(), [](cd a, cd b) { return a.real() < b.real(); });
  CHECK(std::abs(roots[0] - cd(-3)) < 1e-10);
  CHECK(std::abs(roots[1] - cd(1)) < 1e-10);
  CHECK(std::abs(roots[2] - cd(2)) < 1e-10);

  auto unit = polynomial_roots({1.0, 0.0, 0.0, 0.0, 1.0});  // t^4 + 1
  for (auto z : unit) CHECK(std::abs(std::abs(z) - 1) < 1e-12);
}

TEST_CASE("S_d membership") {
  std::mt19937_64 rng(41);
  for (std::uint64_t q : {2u, 3u, 7u}) {
    CHECK(sd_membership(tuple_from_torus({1.0, 1.0, 1.0}, q), q, 3));
    CHECK(sd_membership(tuple_from_torus({1.0, 1.0}, q), q, 2));
    for (unsigned d : {2u, 3u, 4u}) {
      for (int t = 0; t < 200; ++t) {
        auto z = random_torus_point(d, rng);
        CHECK(sd_membership(tuple_from_torus(z, q), q, d));
        auto off = z;
        off[0] *= 1.05;
        off[1] /= 1.05;
        CHECK_FALSE(sd_membership(tuple_from_torus(off, q), q, d));
      }
    }
  }
  // repeated roots on the circle: (zeta, zeta, zeta^-2)
  auto w = std::polar(1.0, 0.7);
  CHECK(sd_membership(tuple_from_torus({w, w, 1.0 / (w * w)}, 3), 3, 3));
  // the trivial tuple of a d = 2 graph lies outside
  CHECK_FALSE(sd_membership({cd(4)}, 3, 2));
  CHECK(sd_membership({cd(2 * std::sqrt(3.0))}, 3, 2));
  CHECK_THROWS_AS(sd_membership({cd(1), cd(1)}, 3, 2), Error);
}

TEST_CASE("radius bound") {
  CHECK(sd_radius_bound(3, 2, 1) == doctest::Approx(2 * std::sqrt(3.0)));
  CHECK(sd_radius_bound(2, 3, 1) == doctest::Approx(6));
  CHECK(sd_radius_bound(2, 4, 2) == doctest::Approx(24));
}

TEST_CASE("trivial tuples") {
  auto t = trivial_tuples(3, 2, 3);
  REQUIRE(t.size() == 3);
  for (unsigned j = 0; j < 3; ++j) {
    cd zeta = std::polar(1.0, 2 * std::numbers::pi * j / 3);
    CHECK(std::abs(t[j][0] - 7.0 * zeta) < 1e-12);
    CHECK(std::abs(t[j][1] - 7.0 * zeta * zeta) < 1e-12);
  }
  auto t4 = trivial_tuples(1, 2, 4);
  CHECK(std::abs(t4[0][0] - cd(15)) < 1e-12);
  CHECK(std::abs(t4[0][1] - cd(35)) < 1e-12);
  CHECK(std::abs(t4[0][2] - cd(15)) < 1e-12);
  CHECK_THROWS_AS(trivial_tuples(0, 2, 3), Error);
}

TEST_CASE("dense spectrum of a circulant, d = 3") {
  std::vector<std::vector<std::int64_t>> shifts{{1, 3, 9}, {-1, -3, -9}};
  auto ops = assemble_hecke(circulant(13, shifts), 3);
  CHECK(equal(transpose(ops[0]), ops[1]));
  CHECK(commute(ops[0], ops[1]));
  for (bool lapack : {true, false}) {
    SpectrumOptions o;
    o.use_lapack = lapack;
    auto rep = simultaneous_spectrum(ops, SpectrumMode::Dense, o);
    CHECK(rep.eigensolver == (lapack ? "lapack-dsyevd" : "eigen"));
    CHECK(rep.degrees == std::vector<std::uint64_t>{3, 3});
    CHECK(rep.tuples.size() == 5);
    check_against(rep, circulant_spectrum(13, shifts));
  }
}

TEST_CASE("dense spectrum of a circulant, d = 4") {
  std::vector<std::vector<std::int64_t>> shifts{{1, 4}, {5, -5, 6, -6}, {-1, -4}};
  auto ops = assemble_hecke(circulant(17, shifts), 4);
  auto rep = simultaneous_spectrum(ops, SpectrumMode::Dense);
  check_against(rep, circulant_spectrum(17, shifts));
}

TEST_CASE("sparse radius of a circulant") {
  std::vector<std::vector<std::int64_t>> shifts{{1, 3, 9}, {-1, -3, -9}};
  auto ops = assemble_hecke(circulant(13, shifts), 3);
  auto rep = simultaneous_spectrum(ops, SpectrumMode::Sparse);
  double want = 0;
  auto eig = circulant_spectrum(13, shifts);
  for (std::size_t j = 1; j < eig.size(); ++j) want = std::max(want, std::abs(eig[j][0]));
  CHECK(rep.deflated_radius[0] == doctest::Approx(want).epsilon(1e-8));
  CHECK(rep.deflated_radius[1] == doctest::Approx(want).epsilon(1e-8));
  CHECK(rep.converged[0]);
}

TEST_CASE("operators that fail the checks") {
  GroupClosure g;
  g.n = 1;
  g.elements = {0, 1, 2};
  g.edges = {{0, 1, 1, 0}, {1, 0, 2, 0}};
  auto ops = assemble_hecke(g, 3);
  CHECK_FALSE(commute(ops[0], ops[1]));
  try {
    simultaneous_spectrum(ops, SpectrumMode::Dense);
    FAIL("expected NonCommutingOperators");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonCommutingOperators);
  }

  g.edges = {{0, 1, 1, 0}, {1, 2, 1, 0}, {2, 0, 1, 0}, {0, 1, 2, 0}, {1, 2, 2, 0}, {2, 0, 2, 0}};
  try {
    simultaneous_spectrum(assemble_hecke(g, 3), SpectrumMode::Dense);
    FAIL("A_2 != A_1^T should be rejected");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonCommutingOperators);
  }

  std::vector<std::vector<std::int64_t>> shifts{{1, 3, 9}, {-1, -3, -9}};
  SpectrumOptions small;
  small.dense_cap = 10;
  try {
    simultaneous_spectrum(assemble_hecke(circulant(13, shifts), 3), SpectrumMode::Dense, small);
    FAIL("dense cap not enforced");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DenseCapExceeded);
  }
  g.edges = {{0, 1, 3, 0}};
  CHECK_THROWS_AS(assemble_hecke(g, 3), Error);
}

TEST_CASE("q=3, d=2, e=1 spectrum") {
  Built b = quotient_group(3, 2, 1);
  auto ops = assemble_hecke(b.closure, 2);
  REQUIRE(ops.size() == 1);
  CHECK(equal(transpose(ops[0]), ops[0]));
  auto colors = assign_colors(b.closure, b.r);
  auto exact = trivial_eigenpairs_exact(ops, colors, b.r, 3, 2);
  CHECK(exact == std::vector<bool>{true, true});

  SpectrumReport lap, eig;
  {
    SpectrumOptions o;
    lap = simultaneous_spectrum(ops, SpectrumMode::Dense, o);
    o.use_lapack = false;
    eig = simultaneous_spectrum(ops, SpectrumMode::Dense, o);
  }
  REQUIRE(lap.tuples.size() == eig.tuples.size());
  for (std::size_t i = 0; i < lap.tuples.size(); ++i) {
    CHECK(lap.tuples[i].multiplicity == eig.tuples[i].multiplicity);
    CHECK(std::abs(lap.tuples[i].lambda[0] - eig.tuples[i].lambda[0]) < 1e-9);
  }

  ramanujan_verdict(lap, b.r, 3, 2);
  CHECK(lap.verdict == Verdict::Ramanujan);
  std::size_t trivial = 0, total = 0;
  for (const auto& t : lap.tuples) {
    total += t.multiplicity;
    CHECK(std::abs(t.lambda[0].imag()) < 1e-9);
    if (t.trivial) {
      trivial += t.multiplicity;
      CHECK(std::abs(std::abs(t.lambda[0]) - 4) < 1e-9);
    } else {
      CHECK(std::abs(t.lambda[0]) <= 2 * std::sqrt(3.0) + 1e-8);
    }
  }
  CHECK(trivial == 2);
  CHECK(total == 24);
}

TEST_CASE("q=3, d=3, e=1 operators") {
  Built b = quotient_group(3, 3, 1);
  auto ops = assemble_hecke(b.closure, 3);
  CHECK(equal(transpose(ops[0]), ops[1]));
  CHECK(commute(ops[0], ops[1]));
  CHECK(ops[0].row_sum(0) == 13);
  CHECK(ops[0].trace() == 0);
  auto colors = assign_colors(b.closure, b.r);
  CHECK(trivial_eigenpairs_exact(ops, colors, b.r, 3, 3) == std::vector<bool>{true});

  SpectrumOptions o;
  o.colors = colors;
  o.r = b.r;
  auto rep = simultaneous_spectrum(ops, SpectrumMode::Sparse, o);
  ramanujan_verdict(rep, b.r, 3, 3);
  CHECK(rep.verdict == Verdict::Partial);
  CHECK(rep.deflated_radius[0] <= sd_radius_bound(3, 3, 1) + 1e-4);
  CHECK(rep.deflated_radius[0] > 3);

  // a wrong color map breaks the exact identity
  auto shuffled = colors;
  std::swap(shuffled[0], shuffled[1]);
  auto bad = trivial_eigenpairs_exact(ops, shuffled, 3, 3, 3);
  CHECK(std::count(bad.begin(), bad.end(), false) >= 1);
}

TEST_CASE("coincidence with a trivial value is flagged") {
  // two disjoint K_4, read as q = 2, d = 2: the degree 3 appears twice, r = 1
  std::vector<std::vector<std::int64_t>> shifts{{1, 2, 3}};
  GroupClosure g = circulant(4, shifts);
  GroupClosure twice;
  twice.n = 1;
  for (std::uint32_t i = 0; i < 8; ++i) twice.elements.push_back(i);
  for (const auto& e : g.edges) {
    twice.edges.push_back(e);
    twice.edges.push_back({e.src + 4, e.dst + 4, e.color, 0});
  }
  auto rep = simultaneous_spectrum(assemble_hecke(twice, 2), SpectrumMode::Dense);
  ramanujan_verdict(rep, 1, 2, 2);
  CHECK(rep.coincidence_flagged);
  std::map<bool, std::size_t> by_kind;
  for (const auto& t : rep.tuples)
    if (std::abs(t.lambda[0] - cd(3)) < 1e-9) by_kind[t.trivial] += t.multiplicity;
  CHECK(by_kind[true] == 1);
  CHECK(by_kind[false] == 1);
  CHECK(rep.verdict == Verdict::NotRamanujan);
}
