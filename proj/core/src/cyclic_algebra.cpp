#include "ramanujan/cyclic_algebra.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace ramanujan {

std::uint64_t q_binomial(unsigned d, unsigned k, std::uint64_t q) {
  if (k > d) return 0;
  // q-Pascal rule: [n, j] = [n-1, j-1] + q^j [n-1, j]
  std::vector<std::uint64_t> row(k + 1, 0);
  row[0] = 1;
  for (unsigned n = 1; n <= d; ++n) {
    for (unsigned j = std::min(n, k); j >= 1; --j) {
      std::uint64_t qj = 1;
      for (unsigned i = 0; i < j; ++i) qj *= q;
      row[j] = row[j - 1] + qj * row[j];
    }
  }
  return row[k];
}

FieldPtr field_of_order(std::uint64_t q) {
  if (q < 2) throw Error(ErrorKind::InvalidArgument, "q must be a prime power, got " + std::to_string(q));
  const auto factors = prime_factors(q);
  if (factors.size() != 1) {
    throw Error(ErrorKind::InvalidArgument, "q must be a prime power, got " + std::to_string(q));
  }
  const std::uint64_t p = factors[0];
  unsigned m = 0;
  for (std::uint64_t v = q; v > 1; v /= p) ++m;
  return Field::galois(p, m);
}

// ---------------------------------------------------------------------------
// Norm form

NormForm norm_form(const FieldPtr& fq, const FieldPtr& fqd, Elem beta) {
  fqd->check(beta);
  if (fqd->trace(beta) == 0) {
    throw Error(ErrorKind::TraceZero, "beta = " + std::to_string(beta) + " has trace zero");
  }
  const unsigned d = fqd->degree();
  Poly prod = Poly::constant(fqd, 1);
  for (unsigned i = 0; i < d; ++i) prod *= Poly(fqd, {1, fqd->frobenius(beta, i)});
  NormForm nf;
  nf.one_plus_y = prod.with_field(fq);
  nf.t.assign(nf.one_plus_y.coeffs().begin() + 1, nf.one_plus_y.coeffs().end());
  nf.t.resize(d, 0);
  nf.y = nf.one_plus_y - Poly::constant(fq, 1);
  return nf;
}

// ---------------------------------------------------------------------------
// LocalizedMatrix

LocalizedMatrix LocalizedMatrix::identity(unsigned n, const Poly& unit) {
  LocalizedMatrix m;
  m.n = n;
  m.unit = unit;
  m.num.assign(static_cast<std::size_t>(n) * n, Poly(unit.field()));
  for (unsigned i = 0; i < n; ++i) m(i, i) = Poly::constant(unit.field(), 1);
  return m;
}

LocalizedMatrix LocalizedMatrix::from_field_matrix(const FieldPtr& fq, const FieldMatrix& f, const Poly& unit) {
  LocalizedMatrix m;
  m.n = static_cast<unsigned>(f.rows);
  m.unit = unit;
  m.num.reserve(f.a.size());
  for (Elem v : f.a) m.num.push_back(Poly::constant(fq, v));
  return m;
}

LocalizedMatrix operator*(const LocalizedMatrix& a, const LocalizedMatrix& b) {
  if (a.n != b.n) throw Error(ErrorKind::InvalidArgument, "matrix size mismatch");
  LocalizedMatrix r;
  r.n = a.n;
  r.unit = a.unit;
  r.den_pow = a.den_pow + b.den_pow;
  r.num.assign(a.num.size(), Poly(a.unit.field()));
  for (unsigned i = 0; i < a.n; ++i)
    for (unsigned k = 0; k < a.n; ++k) {
      const Poly& x = a(i, k);
      if (x.is_zero()) continue;
      for (unsigned j = 0; j < a.n; ++j) {
        if (!b(k, j).is_zero()) r(i, j) += x * b(k, j);
      }
    }
  return r;
}

LocalizedMatrix power(const LocalizedMatrix& a, unsigned e) {
  LocalizedMatrix r = LocalizedMatrix::identity(a.n, a.unit);
  for (unsigned i = 0; i < e; ++i) r = r * a;
  return r;
}

bool operator==(const LocalizedMatrix& a, const LocalizedMatrix& b) {
  if (a.n != b.n) return false;
  if (a.den_pow == b.den_pow) return a.num == b.num;
  const bool a_low = a.den_pow < b.den_pow;
  const LocalizedMatrix& lo = a_low ? a : b;
  const LocalizedMatrix& hi = a_low ? b : a;
  const Poly factor = pow(lo.unit, hi.den_pow - lo.den_pow);
  for (std::size_t i = 0; i < lo.num.size(); ++i) {
    if (!(lo.num[i] * factor == hi.num[i])) return false;
  }
  return true;
}

bool is_scalar(const LocalizedMatrix& m) {
  for (unsigned i = 0; i < m.n; ++i)
    for (unsigned j = 0; j < m.n; ++j) {
      if (i == j) {
        if (m(i, i).is_zero() || !(m(i, i) == m(0, 0))) return false;
      } else if (!m(i, j).is_zero()) {
        return false;
      }
    }
  return true;
}

std::vector<Poly> projective_key(const LocalizedMatrix& m) {
  Poly content(m.unit.field());
  for (const Poly& p : m.num) {
    content = gcd(content, p);
    if (content.is_one()) break;
  }
  std::vector<Poly> key = m.num;
  if (content.is_zero()) return key;
  if (!content.is_one())
    for (Poly& p : key) p = p / content;
  for (const Poly& p : key) {
    if (p.is_zero()) continue;
    const Elem inv = p.field()->inv(p.lead());
    if (inv != 1)
      for (Poly& e : key) e = e.scaled(inv);
    break;
  }
  return key;
}

bool proportional(const LocalizedMatrix& a, const LocalizedMatrix& b) {
  return projective_key(a) == projective_key(b);
}

Poly det_numerator(const LocalizedMatrix& m) {
  const unsigned n = m.n;
  const FieldPtr& f = m.unit.field();
  if (n == 0) return Poly::constant(f, 1);
  std::vector<Poly> a = m.num;
  auto at = [&](unsigned i, unsigned j) -> Poly& { return a[i * n + j]; };
  bool negate = false;
  Poly prev = Poly::constant(f, 1);
  for (unsigned k = 0; k + 1 < n; ++k) {
    if (at(k, k).is_zero()) {
      unsigned piv = k + 1;
      while (piv < n && at(piv, k).is_zero()) ++piv;
      if (piv == n) return Poly(f);
      for (unsigned j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
      negate = !negate;
    }
    for (unsigned i = k + 1; i < n; ++i) {
      for (unsigned j = k + 1; j < n; ++j) {
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      }
      at(i, k) = Poly(f);
    }
    prev = at(k, k);
  }
  Poly r = at(n - 1, n - 1);
  return negate ? -r : r;
}

RationalFn det(const LocalizedMatrix& m) {
  return RationalFn(det_numerator(m), pow(m.unit, m.n * m.den_pow));
}

// ---------------------------------------------------------------------------
// AlgebraElement

namespace {

bool lies_in(const Poly& p, std::uint64_t q) {
  return std::all_of(p.coeffs().begin(), p.coeffs().end(), [q](Elem c) { return c < q; });
}

bool is_central_scalar(const AlgebraElement& a, std::uint64_t q) {
  for (unsigned j = 1; j < a.d(); ++j)
    if (!a.coeffs()[j].is_zero()) return false;
  const RationalFn& c = a.coeffs()[0];
  return lies_in(c.num(), q) && lies_in(c.den(), q);
}

}  // namespace

AlgebraElement::AlgebraElement(const CyclicAlgebra& alg, std::vector<RationalFn> coeffs)
    : fqd_(alg.fqd()), c_(std::move(coeffs)) {
  if (c_.size() != alg.d()) throw Error(ErrorKind::InvalidArgument, "algebra element needs d coefficients");
}

AlgebraElement AlgebraElement::zero(const CyclicAlgebra& alg) {
  return AlgebraElement(alg, std::vector<RationalFn>(alg.d(), RationalFn::zero(alg.fqd())));
}

AlgebraElement AlgebraElement::scalar(const CyclicAlgebra& alg, const RationalFn& c) {
  AlgebraElement a = zero(alg);
  a.c_[0] = c;
  return a;
}

AlgebraElement AlgebraElement::monomial(const CyclicAlgebra& alg, Elem c, unsigned j) {
  if (j >= alg.d()) throw Error(ErrorKind::InvalidArgument, "monomial exponent out of range");
  AlgebraElement a = zero(alg);
  a.c_[j] = RationalFn(Poly::constant(alg.fqd(), c));
  return a;
}

bool AlgebraElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const RationalFn& c) { return c.is_zero(); });
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement r = a;
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = r.c_[i] + b.c_[i];
  return r;
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement r = a;
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = r.c_[i] - b.c_[i];
  return r;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  const auto d = static_cast<unsigned>(a.c_.size());
  if (b.c_.size() != d) throw Error(ErrorKind::InvalidArgument, "algebra elements of different degree");
  const RationalFn one_plus_y(Poly(a.fqd_, {1, 1}));
  AlgebraElement r = a;
  for (auto& c : r.c_) c = RationalFn::zero(a.fqd_);
  for (unsigned i = 0; i < d; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (unsigned j = 0; j < d; ++j) {
      if (b.c_[j].is_zero()) continue;
      RationalFn term = a.c_[i] * b.c_[j].frobenius(i);
      unsigned k = i + j;
      if (k >= d) {
        k -= d;
        term = term * one_plus_y;
      }
      r.c_[k] = r.c_[k] + term;
    }
  }
  return r;
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) { return a.c_ == b.c_; }

AlgebraElement AlgebraElement::inverse() const {
  const unsigned d = this->d();
  std::vector<unsigned> support;
  for (unsigned j = 0; j < d; ++j)
    if (!c_[j].is_zero()) support.push_back(j);
  if (support.empty()) throw Error(ErrorKind::NotInvertible, "zero element");
  const RationalFn one_plus_y(Poly(fqd_, {1, 1}));
  AlgebraElement r = *this;
  for (auto& c : r.c_) c = RationalFn::zero(fqd_);

  if (support.size() == 1) {
    const unsigned j = support[0];
    const RationalFn cinv = c_[j].inverse();
    if (j == 0) {
      r.c_[0] = cinv;
    } else {
      // (c z^j)^-1 = z^(d-j) c^-1 / (1+y) = phi^(d-j)(c^-1) z^(d-j) / (1+y)
      r.c_[d - j] = cinv.frobenius(static_cast<long>(d - j)) / one_plus_y;
    }
    return r;
  }
  if (support.size() == 2 && support[0] == 0) {
    // a = c0 (1 - w) with w = -c0^-1 c_k z^k; (1-w)^-1 = (1 + w + ... + w^(d-1)) / (1 - w^d)
    const RationalFn c0inv = c_[0].inverse();
    AlgebraElement w = r;
    w.c_[support[1]] = -(c0inv * c_[support[1]]);
    AlgebraElement sum = r;
    sum.c_[0] = RationalFn::one(fqd_);
    AlgebraElement wp = sum;
    for (unsigned i = 1; i < d; ++i) {
      wp = wp * w;
      sum = sum + wp;
    }
    wp = wp * w;
    const std::uint64_t q = fqd_->base_order();
    if (!is_central_scalar(wp, q)) {
      throw Error(ErrorKind::NotInvertible, "binomial whose d-th power is not central");
    }
    const RationalFn denom = RationalFn::one(fqd_) - wp.c_[0];
    if (denom.is_zero()) throw Error(ErrorKind::NotInvertible, "zero divisor");
    AlgebraElement c0inv_el = r;
    c0inv_el.c_[0] = c0inv;
    AlgebraElement inv = sum * c0inv_el;
    const RationalFn scale = denom.inverse();
    for (auto& c : inv.c_) c = c * scale;
    return inv;
  }
  throw Error(ErrorKind::NotInvertible, "no closed-form inverse for this element");
}

ConjMatrix operator*(const ConjMatrix& a, const ConjMatrix& b) {
  if (a.n != b.n) throw Error(ErrorKind::InvalidArgument, "matrix size mismatch");
  ConjMatrix r;
  r.n = a.n;
  const FieldPtr& f = a.a.front().field();
  r.a.assign(a.a.size(), RationalFn::zero(f));
  for (unsigned i = 0; i < a.n; ++i)
    for (unsigned k = 0; k < a.n; ++k) {
      if (a(i, k).is_zero()) continue;
      for (unsigned j = 0; j < a.n; ++j) {
        if (!b(k, j).is_zero()) r.a[i * r.n + j] = r.a[i * r.n + j] + a(i, k) * b(k, j);
      }
    }
  return r;
}

std::optional<std::pair<FieldMatrix, FieldMatrix>> split_inverse_y(const ConjMatrix& m) {
  FieldMatrix A(m.n, m.n);
  FieldMatrix B(m.n, m.n);
  for (unsigned i = 0; i < m.n; ++i)
    for (unsigned j = 0; j < m.n; ++j) {
      const RationalFn& e = m(i, j);
      const Poly& num = e.num();
      const Poly& den = e.den();
      if (den.is_one()) {
        if (num.degree() > 0) return std::nullopt;
        A(i, j) = num.coeff(0);
      } else if (den.degree() == 1 && den.coeff(0) == 0) {
        if (num.degree() > 1) return std::nullopt;
        A(i, j) = num.coeff(1);
        B(i, j) = num.coeff(0);
      } else {
        return std::nullopt;
      }
    }
  return std::make_pair(std::move(A), std::move(B));
}

// ---------------------------------------------------------------------------
// CyclicAlgebra

namespace {
constexpr std::uint64_t kCosetTableLimit = 1u << 22;
}

CyclicAlgebra::CyclicAlgebra(const AlgebraOptions& opts) : d_(opts.d), basis_choice_(opts.basis) {
  if (opts.d < 1) throw Error(ErrorKind::InvalidArgument, "d must be >= 1");
  fq_ = field_of_order(opts.q);
  fqd_ = opts.modulus.empty() ? Field::extension(fq_, opts.d, opts.ell)
                              : Field::extension(fq_, opts.modulus, opts.ell);
  if (fqd_->degree() != d_) {
    throw Error(ErrorKind::InvalidArgument, "modulus degree differs from d");
  }

  switch (opts.basis) {
    case BasisChoice::Normal: {
      Elem z0 = 0;
      if (opts.zeta0) {
        z0 = *opts.zeta0;
        fqd_->check(z0);
        if (!is_normal_element(*fqd_, z0)) {
          throw Error(ErrorKind::InvalidArgument, "zeta_0 does not generate a normal basis");
        }
      } else {
        z0 = normal_element(*fqd_);
      }
      basis_ = normal_basis(*fqd_, z0);
      break;
    }
    case BasisChoice::Power:
      basis_ = power_basis(*fqd_);
      break;
    case BasisChoice::Explicit:
      if (!is_basis(*fqd_, opts.explicit_basis)) {
        throw Error(ErrorKind::InvalidArgument, "explicit basis is not linearly independent");
      }
      basis_ = opts.explicit_basis;
      break;
  }
  FieldMatrix bm(d_, d_);
  for (unsigned j = 0; j < d_; ++j) {
    const auto c = fqd_->coords(basis_[j]);
    for (unsigned i = 0; i < d_; ++i) bm(i, j) = c[i];
  }
  basis_inv_ = inverse(*fq_, bm);

  if (opts.beta) {
    beta_ = *opts.beta;
  } else {
    beta_auto_ = true;
    beta_ = 1;
    while (beta_ < fqd_->order() && fqd_->trace(beta_) == 0) ++beta_;
  }
  norm_ = norm_form(fq_, fqd_, beta_);

  phi_ = FieldMatrix(d_, d_);
  for (unsigned j = 0; j < d_; ++j) {
    const auto c = basis_coords(fqd_->frobenius(basis_[j], 1));
    for (unsigned i = 0; i < d_; ++i) phi_(i, j) = c[i];
  }

  const std::uint64_t Q = fqd_->order();
  const std::uint64_t count = (Q - 1) / (fq_->order() - 1);
  const Elem g = fqd_->primitive_element();
  reps_.reserve(count);
  Elem cur = 1;
  for (std::uint64_t i = 0; i < count; ++i) {
    reps_.push_back(cur);
    cur = fqd_->mul(cur, g);
  }
  if (Q <= kCosetTableLimit) {
    coset_of_.assign(Q, 0);
    for (std::uint32_t i = 0; i < reps_.size(); ++i)
      for (Elem lam = 1; lam < fq_->order(); ++lam) coset_of_[fqd_->mul(reps_[i], lam)] = i;
  }
}

std::vector<Elem> CyclicAlgebra::basis_coords(Elem c) const {
  const auto pc = fqd_->coords(c);
  std::vector<Elem> out(d_, 0);
  for (unsigned i = 0; i < d_; ++i)
    for (unsigned k = 0; k < d_; ++k) out[i] = fq_->add(out[i], fq_->mul(basis_inv_(i, k), pc[k]));
  return out;
}

FieldMatrix CyclicAlgebra::rho(Elem c) const {
  fqd_->check(c);
  FieldMatrix m(d_, d_);
  for (unsigned j = 0; j < d_; ++j) {
    const auto col = basis_coords(fqd_->mul(c, basis_[j]));
    for (unsigned i = 0; i < d_; ++i) m(i, j) = col[i];
  }
  return m;
}

LocalizedMatrix CyclicAlgebra::z_matrix() const {
  const FieldMatrix bphi = matmul(*fq_, rho(beta_), phi_);
  LocalizedMatrix z = LocalizedMatrix::identity(d_, norm_.one_plus_y);
  for (unsigned i = 0; i < d_; ++i)
    for (unsigned j = 0; j < d_; ++j) z(i, j) = Poly(fq_, {phi_(i, j), bphi(i, j)});
  return z;
}

LocalizedMatrix CyclicAlgebra::z_inverse_matrix() const {
  LocalizedMatrix zi = power(z_matrix(), d_ - 1);
  zi.den_pow = 1;
  return zi;
}

LocalizedMatrix CyclicAlgebra::b_r_matrix(Elem r) const {
  const LocalizedMatrix zi = z_inverse_matrix();
  const LocalizedMatrix rz = LocalizedMatrix::from_field_matrix(fq_, rho(r), norm_.one_plus_y) * zi;
  LocalizedMatrix b = LocalizedMatrix::identity(d_, norm_.one_plus_y);
  b.den_pow = 1;
  for (unsigned i = 0; i < d_; ++i)
    for (unsigned j = 0; j < d_; ++j) {
      Poly v = i == j ? norm_.one_plus_y : Poly(fq_);
      b(i, j) = v - rz(i, j);
    }
  return b;
}

LocalizedMatrix CyclicAlgebra::b_matrix(Elem u) const {
  if (u == 0) throw Error(ErrorKind::ZeroU, "generator index u must be nonzero");
  fqd_->check(u);
  const auto& unit = norm_.one_plus_y;
  return LocalizedMatrix::from_field_matrix(fq_, rho(u), unit) * b_r_matrix(1) *
         LocalizedMatrix::from_field_matrix(fq_, rho(fqd_->inv(u)), unit);
}

std::size_t CyclicAlgebra::coset_index(Elem u) const {
  if (u == 0) throw Error(ErrorKind::ZeroU, "zero has no coset");
  fqd_->check(u);
  if (!coset_of_.empty()) return coset_of_[u];
  for (std::size_t i = 0; i < reps_.size(); ++i) {
    if (fqd_->div(u, reps_[i]) < fq_->order()) return i;
  }
  throw Error(ErrorKind::InvalidArgument, "coset not found");  // unreachable
}

std::vector<Elem> CyclicAlgebra::norm_one_elements() const {
  std::vector<Elem> out;
  for (Elem a = 1; a < fqd_->order(); ++a)
    if (fqd_->norm(a) == 1) out.push_back(a);
  return out;
}

Elem CyclicAlgebra::u_to_r(Elem u) const {
  if (u == 0) throw Error(ErrorKind::ZeroU, "u must be nonzero");
  return fqd_->div(u, fqd_->frobenius(u, -1));
}

Elem CyclicAlgebra::r_to_u(Elem r) const {
  fqd_->check(r);
  if (r == 0 || fqd_->norm(r) != 1) {
    throw Error(ErrorKind::NormNotOne, "r = " + std::to_string(r) + " does not have norm 1");
  }
  for (Elem u : reps_)
    if (u_to_r(u) == r) return u;
  throw Error(ErrorKind::NormNotOne, "no coset maps to r");  // unreachable by Hilbert 90
}

AlgebraElement CyclicAlgebra::z() const { return AlgebraElement::monomial(*this, 1, d_ > 1 ? 1 : 0); }

AlgebraElement CyclicAlgebra::z_inverse() const { return z().inverse(); }

AlgebraElement CyclicAlgebra::b_element(Elem u) const {
  const Elem r = u_to_r(u);
  // 1 - r z^-1 = 1 - (r / (1+y)) z^(d-1)
  AlgebraElement b = AlgebraElement::scalar(*this, RationalFn::one(fqd_));
  const RationalFn coef = RationalFn(Poly::constant(fqd_, fqd_->neg(r)), Poly(fqd_, {1, 1}));
  if (d_ == 1) return AlgebraElement::scalar(*this, RationalFn::one(fqd_) + coef);
  std::vector<RationalFn> c = b.coeffs();
  c[d_ - 1] = coef;
  return AlgebraElement(*this, std::move(c));
}

ConjMatrix CyclicAlgebra::conj_rep(const AlgebraElement& a) const {
  const AlgebraElement ainv = a.inverse();
  const unsigned n = d_ * d_;
  ConjMatrix m;
  m.n = n;
  m.a.assign(static_cast<std::size_t>(n) * n, RationalFn::zero(fq_));
  for (unsigned j = 0; j < d_; ++j)
    for (unsigned i = 0; i < d_; ++i) {
      const AlgebraElement img = a * AlgebraElement::monomial(*this, basis_[i], j) * ainv;
      const unsigned col = j * d_ + i;
      for (unsigned k = 0; k < d_; ++k) {
        const RationalFn& c = img.coeffs()[k];
        if (c.is_zero()) continue;
        Poly num = c.num();
        Poly den = c.den();
        if (!lies_in(den, fq_->order())) {
          Poly conj = Poly::constant(fqd_, 1);
          for (unsigned t = 1; t < d_; ++t) conj *= den.frobenius(t);
          num *= conj;
          den *= conj;
        }
        const Poly den_q = den.with_field(fq_);
        std::vector<std::vector<Elem>> parts(d_, std::vector<Elem>(num.coeffs().size(), 0));
        for (std::size_t e = 0; e < num.coeffs().size(); ++e) {
          const auto bc = basis_coords(num.coeffs()[e]);
          for (unsigned t = 0; t < d_; ++t) parts[t][e] = bc[t];
        }
        for (unsigned t = 0; t < d_; ++t) {
          m.a[(k * d_ + t) * n + col] = RationalFn(Poly(fq_, std::move(parts[t])), den_q);
        }
      }
    }
  return m;
}

// ---------------------------------------------------------------------------
// Pair completion, relations and headers

PairCompletion pair_completion(const CyclicAlgebra& alg, Elem r, Elem s) {
  if (alg.d() == 2) {
    throw Error(ErrorKind::DegenerateD2, "pair completion is degenerate for d = 2; use inverse_partner");
  }
  const Field& f = *alg.fqd();
  for (Elem v : {r, s}) {
    f.check(v);
    if (v == 0 || f.norm(v) != 1) {
      throw Error(ErrorKind::NormNotOne, "pair completion needs norm-one elements");
    }
  }
  if (r == s) throw Error(ErrorKind::InvalidArgument, "pair completion needs r != s");
  const Elem pr = f.frobenius(r, 1);
  const Elem ps = f.frobenius(s, 1);
  const Elem k = f.div(f.sub(s, r), f.sub(ps, pr));
  return {f.mul(k, ps), f.mul(k, pr)};
}

Elem inverse_partner(const CyclicAlgebra& alg, Elem r) {
  if (alg.d() != 2) throw Error(ErrorKind::InvalidArgument, "inverse_partner applies to d = 2");
  return alg.fqd()->neg(r);
}

namespace {

// Entry (i, j) of a * b.
Poly product_entry(const LocalizedMatrix& a, const LocalizedMatrix& b, unsigned i, unsigned j) {
  Poly s(a.unit.field());
  for (unsigned k = 0; k < a.n; ++k) {
    if (!a(i, k).is_zero() && !b(k, j).is_zero()) s += a(i, k) * b(k, j);
  }
  return s;
}

bool product_is_scalar(const LocalizedMatrix& a, const LocalizedMatrix& b) {
  const unsigned n = a.n;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      if (i != j && !product_entry(a, b, i, j).is_zero()) return false;
  const Poly d0 = product_entry(a, b, 0, 0);
  if (d0.is_zero()) return false;
  for (unsigned i = 1; i < n; ++i)
    if (!(product_entry(a, b, i, i) == d0)) return false;
  return true;
}

std::vector<Elem> flat_key(const std::vector<Poly>& polys) {
  std::vector<Elem> k;
  for (const Poly& p : polys) {
    k.push_back(p.coeffs().size());
    k.insert(k.end(), p.coeffs().begin(), p.coeffs().end());
  }
  return k;
}

}  // namespace

std::vector<Word> relations_P(const CyclicAlgebra& alg) {
  const unsigned d = alg.d();
  const auto n = static_cast<std::uint32_t>(alg.generator_count());
  std::vector<LocalizedMatrix> b;
  b.reserve(n);
  for (Elem u : alg.coset_reps()) b.push_back(alg.b_matrix(u));

  std::vector<Word> out;
  if (d == 1) {
    for (std::uint32_t i = 0; i < n; ++i)
      if (is_scalar(b[i])) out.push_back({i});
    return out;
  }
  Word w(d, 0);
  std::vector<LocalizedMatrix> prefix(d);  // prefix[k] = b[w0] ... b[w_{k}]
  // Odometer over the first d-1 positions; the last is scanned directly.
  std::function<void(unsigned)> rec = [&](unsigned pos) {
    if (pos == d - 1) {
      const LocalizedMatrix& pre = prefix[d - 2];
      for (std::uint32_t t = 0; t < n; ++t) {
        if (product_is_scalar(pre, b[t])) {
          w[d - 1] = t;
          out.push_back(w);
        }
      }
      return;
    }
    for (std::uint32_t t = 0; t < n; ++t) {
      w[pos] = t;
      prefix[pos] = pos == 0 ? b[t] : prefix[pos - 1] * b[t];
      rec(pos + 1);
    }
  };
  rec(0);
  return out;
}

std::vector<std::vector<HeaderElement>> header_sets(const CyclicAlgebra& alg, const std::vector<Word>& P) {
  const unsigned d = alg.d();
  std::vector<LocalizedMatrix> b;
  for (Elem u : alg.coset_reps()) b.push_back(alg.b_matrix(u));
  std::vector<std::vector<HeaderElement>> sets(d > 0 ? d - 1 : 0);
  std::vector<std::set<std::vector<Elem>>> seen(sets.size());
  for (const Word& w : P) {
    LocalizedMatrix prod = b[w[0]];
    for (unsigned k = 1; k < d; ++k) {
      if (k > 1) prod = prod * b[w[k - 1]];
      auto key = flat_key(projective_key(prod));
      if (seen[k - 1].insert(std::move(key)).second) {
        sets[k - 1].push_back({Word(w.begin(), w.begin() + k), prod});
      }
    }
  }
  return sets;
}

bool reld_check(const CyclicAlgebra& alg) {
  const unsigned d = alg.d();
  const std::uint64_t p = alg.fq()->characteristic();
  std::uint64_t v = d;
  while (v % p == 0) v /= p;
  if (v != 1) {
    throw Error(ErrorKind::NotCharPower, "d = " + std::to_string(d) + " is not a power of " +
                                             std::to_string(p));
  }
  const LocalizedMatrix bd = power(alg.b_matrix(1), d);
  LocalizedMatrix expected = LocalizedMatrix::identity(d, alg.norm().one_plus_y);
  for (unsigned i = 0; i < d; ++i) expected(i, i) = alg.norm().y;
  expected.den_pow = 1;
  return bd == expected;
}

RewriteReport rewrite_reachability(const CyclicAlgebra& alg, const std::vector<Word>& P) {
  RewriteReport rep;
  rep.total = P.size();
  if (P.empty()) return rep;
  const unsigned d = alg.d();
  const auto n = static_cast<std::uint32_t>(alg.generator_count());
  std::vector<LocalizedMatrix> b;
  for (Elem u : alg.coset_reps()) b.push_back(alg.b_matrix(u));

  // Pairs (i, j) grouped by the projective class of b_i b_j.
  std::map<std::vector<Elem>, std::vector<std::pair<std::uint32_t, std::uint32_t>>> classes;
  std::vector<std::vector<const std::vector<std::pair<std::uint32_t, std::uint32_t>>*>> class_of(
      n, std::vector<const std::vector<std::pair<std::uint32_t, std::uint32_t>>*>(n, nullptr));
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) classes[flat_key(projective_key(b[i] * b[j]))].push_back({i, j});
  for (const auto& [key, members] : classes)
    for (const auto& [i, j] : members) class_of[i][j] = &members;

  std::map<Word, unsigned> dist;
  std::deque<Word> queue;
  dist[P.front()] = 0;
  queue.push_back(P.front());
  while (!queue.empty()) {
    Word w = queue.front();
    queue.pop_front();
    const unsigned dw = dist[w];
    rep.depth = std::max(rep.depth, dw);
    auto visit = [&](Word next) {
      if (dist.emplace(next, dw + 1).second) queue.push_back(std::move(next));
    };
    Word rot(w.begin() + 1, w.end());
    rot.push_back(w.front());
    visit(std::move(rot));
    for (unsigned pos = 0; pos + 1 < d; ++pos) {
      for (const auto& [i, j] : *class_of[w[pos]][w[pos + 1]]) {
        Word next = w;
        next[pos] = i;
        next[pos + 1] = j;
        visit(std::move(next));
      }
    }
  }
  const std::set<Word> pset(P.begin(), P.end());
  for (const auto& [w, _] : dist)
    if (pset.count(w)) ++rep.reached;
  return rep;
}

std::string render_matrix_ascending(const LocalizedMatrix& m) {
  std::ostringstream os;
  for (unsigned i = 0; i < m.n; ++i) {
    if (i) os << "; ";
    for (unsigned j = 0; j < m.n; ++j) {
      if (j) os << ", ";
      os << m(i, j).to_string_ascending("x");
    }
  }
  return os.str();
}

}  // namespace ramanujan
