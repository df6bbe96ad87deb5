#include "ramanujan/galois.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <tuple>

namespace ramanujan {

namespace {

constexpr std::uint64_t kTableLimit = 1u << 16;

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t checked_pow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / 2 / b) {
      throw Error(ErrorKind::InvalidArgument, "field order does not fit in 63 bits");
    }
    r *= b;
  }
  return r;
}

}  // namespace

Elem add_packed(Elem a, Elem b, std::uint64_t p) {
  if (p == 2) return a ^ b;
  Elem r = 0;
  Elem place = 1;
  while (a != 0 || b != 0) {
    std::uint64_t s = a % p + b % p;
    if (s >= p) s -= p;
    r += s * place;
    a /= p;
    b /= p;
    place *= p;
  }
  return r;
}

Elem sub_packed(Elem a, Elem b, std::uint64_t p) {
  if (p == 2) return a ^ b;
  Elem r = 0;
  Elem place = 1;
  while (a != 0 || b != 0) {
    std::uint64_t s = a % p + p - b % p;
    if (s >= p) s -= p;
    r += s * place;
    a /= p;
    b /= p;
    place *= p;
  }
  return r;
}

void require_same_field(const Field& a, const Field& b, const char* what) {
  if (&a != &b && !a.same_as(b)) {
    throw Error(ErrorKind::SpecMismatch, std::string(what) + ": operands over " + a.describe() +
                                             " and " + b.describe());
  }
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// ---------------------------------------------------------------------------
// Field

FieldPtr Field::prime(std::uint64_t p) {
  if (!is_prime_u64(p) || p >= (1ull << 32)) {
    throw Error(ErrorKind::InvalidArgument, "characteristic must be a prime below 2^32, got " +
                                                std::to_string(p));
  }
  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->order_ = p;
  f->degree_ = 1;
  return f;
}

FieldPtr Field::extension(FieldPtr base, std::vector<Elem> modulus, unsigned ell) {
  if (!base) throw Error(ErrorKind::InvalidArgument, "extension needs a base field");
  while (!modulus.empty() && modulus.back() == 0) modulus.pop_back();
  if (modulus.size() < 2) throw Error(ErrorKind::InvalidArgument, "modulus must have degree >= 1");
  for (Elem c : modulus) base->check(c);
  const auto n = static_cast<unsigned>(modulus.size() - 1);
  if (std::gcd(ell, n) != 1) {
    throw Error(ErrorKind::InvalidArgument, "Frobenius exponent must be prime to the degree");
  }
  Poly m(base, modulus);
  if (!m.is_monic()) throw Error(ErrorKind::InvalidArgument, "modulus must be monic");
  if (!is_irreducible(m)) {
    throw Error(ErrorKind::InvalidArgument, "modulus " + m.to_string("t") + " is reducible");
  }
  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = base->characteristic();
  f->order_ = checked_pow(base->order(), n);
  f->degree_ = n;
  f->ell_ = ell % n == 0 ? 1 : ell;
  f->base_ = std::move(base);
  f->modulus_ = std::move(modulus);
  if (f->order_ <= kTableLimit) f->build_tables();
  return f;
}

FieldPtr Field::extension(FieldPtr base, unsigned degree, unsigned ell) {
  Poly m = find_irreducible(base, degree);
  return extension(std::move(base), m.coeffs(), ell);
}

FieldPtr Field::galois(std::uint64_t p, unsigned m) {
  auto fp = prime(p);
  if (m == 1) return fp;
  return extension(fp, m);
}

bool Field::same_as(const Field& o) const {
  if (this == &o) return true;
  if (p_ != o.p_ || order_ != o.order_ || degree_ != o.degree_ || ell_ != o.ell_) return false;
  if (modulus_ != o.modulus_) return false;
  if (!base_ || !o.base_) return !base_ && !o.base_;
  return base_->same_as(*o.base_);
}

Elem Field::from_int(std::int64_t v) const {
  auto p = static_cast<std::int64_t>(p_);
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return static_cast<Elem>(r);
}

void Field::check(Elem a) const {
  if (a >= order_) {
    throw Error(ErrorKind::SpecMismatch,
                "value " + std::to_string(a) + " is not an element of " + describe());
  }
}

Elem Field::add(Elem a, Elem b) const {
  if (is_prime()) {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  return add_packed(a, b, p_);
}

Elem Field::sub(Elem a, Elem b) const {
  if (is_prime()) return a >= b ? a - b : a + p_ - b;
  return sub_packed(a, b, p_);
}

Elem Field::neg(Elem a) const { return sub(0, a); }

Elem Field::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  if (is_prime()) return (a * b) % p_;
  if (!log_.empty()) {
    return exp_[static_cast<std::size_t>(log_[a]) + log_[b]];
  }
  return mul_generic(a, b);
}

Elem Field::mul_generic(Elem a, Elem b) const {
  const Field& bf = *base_;
  const std::uint64_t bo = bf.order();
  const unsigned n = degree_;
  std::array<Elem, 64> x{};
  std::array<Elem, 64> y{};
  std::array<Elem, 128> prod{};
  for (unsigned i = 0; i < n; ++i) {
    x[i] = a % bo;
    a /= bo;
    y[i] = b % bo;
    b /= bo;
  }
  for (unsigned i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (unsigned j = 0; j < n; ++j) {
      if (y[j] == 0) continue;
      prod[i + j] = bf.add(prod[i + j], bf.mul(x[i], y[j]));
    }
  }
  for (unsigned k = 2 * n - 2; k >= n; --k) {
    const Elem c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (unsigned j = 0; j < n; ++j) {
      prod[k - n + j] = bf.sub(prod[k - n + j], bf.mul(c, modulus_[j]));
    }
  }
  Elem r = 0;
  for (unsigned i = n; i-- > 0;) r = r * bo + prod[i];
  return r;
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw Error(ErrorKind::ZeroInverse, "inverse of zero in " + describe());
  if (!log_.empty()) {
    const std::uint64_t n = order_ - 1;
    return exp_[(n - log_[a]) % n];
  }
  if (is_prime()) {
    // extended Euclid on integers
    std::int64_t t = 0, nt = 1;
    auto r = static_cast<std::int64_t>(p_), nr = static_cast<std::int64_t>(a);
    while (nr != 0) {
      std::int64_t qt = r / nr;
      std::tie(t, nt) = std::make_pair(nt, t - qt * nt);
      std::tie(r, nr) = std::make_pair(nr, r - qt * nr);
    }
    return from_int(t);
  }
  return pow(a, order_ - 2);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem result = 1;
  Elem base = a;
  while (e != 0) {
    if (e & 1u) result = mul(result, base);
    e >>= 1;
    if (e != 0) base = mul(base, base);
  }
  return result;
}

std::vector<Elem> Field::coords(Elem a) const {
  const std::uint64_t bo = base_order();
  std::vector<Elem> c(degree_);
  for (unsigned i = 0; i < degree_; ++i) {
    c[i] = a % bo;
    a /= bo;
  }
  return c;
}

Elem Field::from_coords(std::span<const Elem> c) const {
  if (c.size() > degree_) throw Error(ErrorKind::SpecMismatch, "too many coordinates");
  const std::uint64_t bo = base_order();
  Elem r = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] >= bo) throw Error(ErrorKind::SpecMismatch, "coordinate outside base field");
    r = r * bo + c[i];
  }
  return r;
}

Elem Field::frobenius(Elem a, long i) const {
  if (is_prime()) return a;
  const long n = degree_;
  long k = (static_cast<long>(ell_) * (i % n)) % n;
  if (k < 0) k += n;
  Elem r = a;
  for (long j = 0; j < k; ++j) r = pow(r, base_->order());
  return r;
}

Elem Field::trace(Elem a) const {
  Elem s = 0;
  for (unsigned i = 0; i < degree_; ++i) s = add(s, frobenius(a, i));
  return s;
}

Elem Field::norm(Elem a) const {
  Elem s = 1;
  for (unsigned i = 0; i < degree_; ++i) s = mul(s, frobenius(a, i));
  return s;
}

std::uint64_t Field::multiplicative_order(Elem a) const {
  if (a == 0) throw Error(ErrorKind::ZeroInverse, "zero has no multiplicative order");
  std::uint64_t ord = order_ - 1;
  for (std::uint64_t f : prime_factors(order_ - 1)) {
    while (ord % f == 0 && pow(a, ord / f) == 1) ord /= f;
  }
  return ord;
}

Elem Field::primitive_element() const {
  for (Elem a = 1; a < order_; ++a) {
    if (multiplicative_order(a) == order_ - 1) return a;
  }
  throw Error(ErrorKind::InvalidArgument, "no primitive element");  // unreachable
}

void Field::build_tables() {
  // log_ must stay empty while searching so mul() takes the generic path.
  const std::uint64_t n = order_ - 1;
  Elem g = 0;
  const auto factors = prime_factors(n);
  for (Elem a = 1; a < order_ && g == 0; ++a) {
    bool primitive = true;
    for (std::uint64_t f : factors) {
      if (pow(a, n / f) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) g = a;
  }
  std::vector<Elem> ex(2 * n);
  std::vector<std::uint32_t> lg(order_, 0);
  Elem cur = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    ex[i] = cur;
    lg[cur] = static_cast<std::uint32_t>(i);
    cur = mul_generic(cur, g);
  }
  for (std::uint64_t i = n; i < 2 * n; ++i) ex[i] = ex[i - n];
  exp_ = std::move(ex);
  log_ = std::move(lg);
}

std::string Field::describe() const {
  std::ostringstream os;
  if (is_prime()) {
    os << "F_" << p_;
  } else {
    os << "F_" << order_ << "=(" << base_->describe() << ")[t]/("
       << Poly(base_, modulus_).to_string("t") << ")";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Matrices

FieldMatrix FieldMatrix::identity(std::size_t n) {
  FieldMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

FieldMatrix matmul(const Field& f, const FieldMatrix& x, const FieldMatrix& y) {
  if (x.cols != y.rows) throw Error(ErrorKind::InvalidArgument, "matmul shape mismatch");
  FieldMatrix r(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i) {
    for (std::size_t k = 0; k < x.cols; ++k) {
      const Elem a = x(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) r(i, j) = f.add(r(i, j), f.mul(a, y(k, j)));
    }
  }
  return r;
}

FieldMatrix transpose(const FieldMatrix& m) {
  FieldMatrix t(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
  return t;
}

namespace {

// Reduces m in place to row echelon form; returns the pivot columns.
std::vector<std::size_t> echelon(const Field& f, FieldMatrix& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < ncols && row < m.rows; ++c) {
    std::size_t piv = row;
    while (piv < m.rows && m(piv, c) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != row)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(row, j));
    const Elem inv = f.inv(m(row, c));
    for (std::size_t j = 0; j < m.cols; ++j) m(row, j) = f.mul(m(row, j), inv);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == row || m(i, c) == 0) continue;
      const Elem factor = m(i, c);
      for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(row, j)));
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

// Solves A x = b when consistent.
std::optional<std::vector<Elem>> solve(const Field& f, const FieldMatrix& a, std::span<const Elem> b) {
  FieldMatrix aug(a.rows, a.cols + 1);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) aug(i, j) = a(i, j);
    aug(i, a.cols) = b[i];
  }
  const auto pivots = echelon(f, aug, a.cols + 1);
  if (!pivots.empty() && pivots.back() == a.cols) return std::nullopt;
  std::vector<Elem> x(a.cols, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols);
  return x;
}

}  // namespace

std::size_t rank(const Field& f, FieldMatrix m) { return echelon(f, m, m.cols).size(); }

FieldMatrix inverse(const Field& f, const FieldMatrix& m) {
  if (m.rows != m.cols) throw Error(ErrorKind::SingularMatrix, "inverse of a non-square matrix");
  const std::size_t n = m.rows;
  FieldMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const auto pivots = echelon(f, aug, n);
  if (pivots.size() != n) throw Error(ErrorKind::SingularMatrix, "matrix is singular");
  FieldMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

// ---------------------------------------------------------------------------
// Galois helpers

bool is_irreducible(const Poly& fin) {
  if (fin.degree() < 1) return false;
  const Poly f = fin.monic();
  const int n = f.degree();
  if (n == 1) return true;
  const FieldPtr& k = f.field();
  const Poly x = Poly::x(k);
  Poly h = x;
  for (int i = 1; i <= n; ++i) {
    h = pow_mod(h, k->order(), f);
    if (2 * i <= n && !gcd(h - x, f).is_one()) return false;
  }
  return (h - x) % f == Poly(k);
}

Poly find_irreducible(const FieldPtr& base, unsigned n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "degree must be >= 1");
  if (n == 1) return Poly::x(base);
  const std::uint64_t q = base->order();
  const std::uint64_t count = checked_pow(q, n);
  for (std::uint64_t packed = 1; packed < count; ++packed) {
    std::vector<Elem> c(n + 1);
    std::uint64_t v = packed;
    for (unsigned i = 0; i < n; ++i) {
      c[i] = v % q;
      v /= q;
    }
    if (c[0] == 0) continue;
    c[n] = 1;
    Poly f(base, std::move(c));
    if (is_irreducible(f)) return f;
  }
  throw Error(ErrorKind::InvalidArgument, "no irreducible polynomial found");  // unreachable
}

Poly min_poly(const FieldPtr& ext, Elem a) {
  ext->check(a);
  const FieldPtr base = ext->is_prime() ? ext : ext->base();
  if (ext->is_prime()) return Poly(base, {ext->neg(a), 1});
  const unsigned n = ext->degree();
  std::vector<std::vector<Elem>> powers;
  Elem cur = 1;
  for (unsigned k = 0; k <= n; ++k) {
    std::vector<Elem> target = ext->coords(cur);
    if (k > 0) {
      FieldMatrix m(n, k);
      for (unsigned j = 0; j < k; ++j)
        for (unsigned i = 0; i < n; ++i) m(i, j) = powers[j][i];
      std::vector<Elem> rhs(n);
      for (unsigned i = 0; i < n; ++i) rhs[i] = base->neg(target[i]);
      if (auto sol = solve(*base, m, rhs)) {
        std::vector<Elem> c(*sol);
        c.push_back(1);
        return Poly(base, std::move(c));
      }
    }
    powers.push_back(std::move(target));
    cur = ext->mul(cur, a);
  }
  throw Error(ErrorKind::InvalidArgument, "minimal polynomial search failed");  // unreachable
}

bool is_field_generator(const Field& ext, Elem a) {
  ext.check(a);
  const unsigned e = ext.degree();
  if (ext.is_prime() || e == 1) return true;
  for (std::uint64_t l : prime_factors(e)) {
    const auto sub = static_cast<unsigned>(e / l);
    Elem r = a;
    for (unsigned i = 0; i < sub; ++i) r = ext.pow(r, ext.base()->order());
    if (r == a) return false;
  }
  return true;
}

FieldMatrix conjugate_matrix(const Field& ext, Elem zeta) {
  const unsigned n = ext.degree();
  FieldMatrix m(n, n);
  for (unsigned i = 0; i < n; ++i) {
    const auto c = ext.coords(ext.frobenius(zeta, i));
    for (unsigned r = 0; r < n; ++r) m(r, i) = c[r];
  }
  return m;
}

bool is_normal_element(const Field& ext, Elem zeta) {
  const Field& base = ext.is_prime() ? ext : *ext.base();
  return rank(base, conjugate_matrix(ext, zeta)) == ext.degree();
}

Elem normal_element(const Field& ext) {
  for (Elem a = 1; a < ext.order(); ++a) {
    if (is_normal_element(ext, a)) return a;
  }
  throw Error(ErrorKind::InvalidArgument, "no normal element");  // unreachable
}

std::vector<Elem> normal_basis(const Field& ext, Elem zeta0) {
  std::vector<Elem> b(ext.degree());
  for (unsigned i = 0; i < ext.degree(); ++i) b[i] = ext.frobenius(zeta0, i);
  return b;
}

std::vector<Elem> power_basis(const Field& ext) {
  std::vector<Elem> b(ext.degree());
  Elem v = 1;
  for (unsigned i = 0; i < ext.degree(); ++i) {
    b[i] = v;
    v *= ext.base_order();
  }
  return b;
}

bool is_basis(const Field& ext, std::span<const Elem> basis) {
  const unsigned n = ext.degree();
  if (basis.size() != n) return false;
  FieldMatrix m(n, n);
  for (unsigned j = 0; j < n; ++j) {
    ext.check(basis[j]);
    const auto c = ext.coords(basis[j]);
    for (unsigned i = 0; i < n; ++i) m(i, j) = c[i];
  }
  const Field& base = ext.is_prime() ? ext : *ext.base();
  return rank(base, m) == n;
}

std::vector<Elem> to_coeff_vector(const Field& f, Elem a) { return f.coords(a); }

Elem from_coeff_vector(const Field& f, std::span<const Elem> coeffs) { return f.from_coords(coeffs); }

}  // namespace ramanujan
