#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ramanujan/polyring.hpp"

using namespace ramanujan;

namespace {

Poly random_poly(const FieldPtr& f, int max_deg, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> deg(-1, max_deg);
  std::uniform_int_distribution<Elem> c(0, f->order() - 1);
  std::vector<Elem> coeffs(static_cast<std::size_t>(deg(rng) + 1));
  for (auto& v : coeffs) v = c(rng);
  return Poly(f, coeffs);
}

oracle::IVec ivec(const Poly& p) { return oracle::IVec(p.coeffs().begin(), p.coeffs().end()); }

}  // namespace

TEST_CASE("division with remainder") {
  std::mt19937_64 rng(1);
  for (const auto& f : {Field::prime(5), Field::galois(2, 2), Field::prime(2)}) {
    for (int trial = 0; trial < 300; ++trial) {
      Poly a = random_poly(f, 9, rng), b = random_poly(f, 5, rng);
      if (b.is_zero()) {
        CHECK_THROWS_AS(divmod(a, b), Error);
        continue;
      }
      auto [q, r] = divmod(a, b);
      CHECK(q * b + r == a);
      CHECK(r.degree() < b.degree());
    }
  }
}

TEST_CASE("gcd and extended gcd") {
  std::mt19937_64 rng(2);
  auto f = Field::prime(3);
  for (int trial = 0; trial < 200; ++trial) {
    Poly a = random_poly(f, 7, rng), b = random_poly(f, 7, rng);
    Poly c = random_poly(f, 3, rng);
    a = a * c;
    b = b * c;
    auto eg = ext_gcd(a, b);
    CHECK(eg.gcd == gcd(a, b));
    CHECK(eg.u * a + eg.v * b == eg.gcd);
    if (eg.gcd.is_zero()) continue;
    CHECK(eg.gcd.is_monic());
    CHECK((a % eg.gcd).is_zero());
    CHECK((b % eg.gcd).is_zero());
    if (!c.is_zero()) CHECK((eg.gcd % c.monic()).is_zero());
  }
}

TEST_CASE("product matches schoolbook multiplication mod p") {
  std::mt19937_64 rng(3);
  auto f = Field::prime(7);
  for (int trial = 0; trial < 200; ++trial) {
    Poly a = random_poly(f, 8, rng), b = random_poly(f, 8, rng);
    CHECK(ivec(a * b) == oracle::mul(ivec(a), ivec(b), 7));
  }
}

TEST_CASE("composition evaluates as nested evaluation") {
  std::mt19937_64 rng(4);
  auto f = Field::prime(3);
  auto ext = Field::galois(3, 3);
  for (int trial = 0; trial < 60; ++trial) {
    Poly a = random_poly(f, 4, rng), h = random_poly(f, 3, rng);
    Poly c = compose(a, h);
    for (Elem x = 0; x < ext->order(); x += 5) CHECK(evaluate(c, *ext, x) == evaluate(a, *ext, evaluate(h, *ext, x)));
  }
}

TEST_CASE("derivative obeys the product rule") {
  std::mt19937_64 rng(5);
  auto f = Field::galois(3, 2);
  for (int trial = 0; trial < 100; ++trial) {
    Poly a = random_poly(f, 6, rng), b = random_poly(f, 6, rng);
    CHECK((a * b).derivative() == a.derivative() * b + a * b.derivative());
  }
  CHECK(Poly::parse(Field::prime(2), "x^2+1").derivative().is_zero());
}

TEST_CASE("pow_mod agrees with repeated multiplication") {
  std::mt19937_64 rng(6);
  auto f = Field::prime(5);
  Poly m = Poly::parse(f, "x^4+x+2");
  for (int trial = 0; trial < 40; ++trial) {
    Poly a = random_poly(f, 5, rng);
    Poly acc = Poly::constant(f, 1) % m;
    for (unsigned e = 0; e < 12; ++e) {
      CHECK(pow_mod(a, e, m) == acc);
      acc = (acc * a) % m;
    }
  }
}

TEST_CASE("parsing and printing") {
  auto f7 = Field::prime(7);
  CHECK(Poly::parse(f7, "2*x^2 - x + 3").to_string() == "2*x^2+6*x+3");
  CHECK(Poly::parse(f7, "[3,6,2]") == Poly::parse(f7, "2*x^2+6*x+3"));
  CHECK(Poly::parse(f7, "x^3 + 5*x^2 + x + 1").to_string_ascending() == "1+x+5*x^2+x^3");
  CHECK(Poly::parse(f7, "[]").is_zero());
  CHECK(Poly::parse(f7, "0").is_zero());
  CHECK(Poly(f7).to_string() == "0");
  auto f2 = Field::prime(2);
  CHECK(Poly::parse(f2, "x^3+x+1").to_string() == "x^3+x+1");
  CHECK(Poly::parse(f2, "x + x").is_zero());

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Poly a = random_poly(f7, 6, rng);
    CHECK(Poly::parse(f7, a.to_string()) == a);
    CHECK(Poly::parse(f7, a.to_string_ascending()) == a);
  }
  for (const char* bad : {"", "x^", "3x+", "[1,2", "x^2 1", "8", "[1,9]", "y^2+x"}) {
    CHECK_THROWS_AS(Poly::parse(f7, bad), Error);
  }
}

TEST_CASE("rational functions form a field") {
  std::mt19937_64 rng(8);
  auto f = Field::prime(3);
  auto random_fn = [&] {
    Poly n = random_poly(f, 4, rng), d;
    do d = random_poly(f, 3, rng);
    while (d.is_zero());
    return RationalFn(n, d);
  };
  for (int trial = 0; trial < 150; ++trial) {
    RationalFn a = random_fn(), b = random_fn(), c = random_fn();
    CHECK(a + b == b + a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - b) + b == a);
    CHECK(a.den().is_monic());
    CHECK(gcd(a.num(), a.den()).is_one());
    if (!a.is_zero()) CHECK(a * a.inverse() == RationalFn::one(f));
  }
  CHECK_THROWS_AS(RationalFn::zero(f).inverse(), Error);
  CHECK_THROWS_AS(RationalFn(Poly::constant(f, 1), Poly(f)), Error);
}

TEST_CASE("local ring arithmetic") {
  auto f2 = Field::prime(2);
  auto f3 = Field::prime(3);
  std::vector<LocalRing> rings{LocalRing(Poly::parse(f3, "x+2"), 2), LocalRing(Poly::parse(f2, "x^2+x+1"), 3),
                               LocalRing(Poly::parse(f3, "x^2+1"), 1), LocalRing(Poly::parse(f2, "x^4+x+1"), 1)};
  for (const auto& L : rings) {
    const auto p = static_cast<std::int64_t>(L.base_field()->characteristic());
    CAPTURE(L.modulus().to_string());
    std::uint64_t units = 0;
    for (Elem a = 0; a < L.size(); ++a) {
      for (Elem b = 0; b < L.size(); b += 3) {
        auto want = oracle::rem(oracle::mul(ivec(L.lift(a)), ivec(L.lift(b)), p), ivec(L.modulus()), p);
        CHECK(ivec(L.lift(L.mul(a, b))) == want);
      }
      const bool unit = !(L.lift(a) % L.g()).is_zero();
      CHECK(L.is_unit(a) == unit);
      if (unit) {
        ++units;
        Elem brute = 0;
        for (Elem b = 1; b < L.size(); ++b)
          if (L.mul(a, b) == 1) brute = b;
        CHECK(L.inverse(a) == brute);
      } else {
        CHECK_THROWS_AS(L.inverse(a), Error);
      }
      CHECK(L.residue(a) == L.reduce(L.lift(a) % L.g()));
    }
    std::uint64_t q0 = L.residue_size();
    CHECK(units == L.size() - L.size() / q0);
  }
}
