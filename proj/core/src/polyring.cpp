#include "ramanujan/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <sstream>

#include "ramanujan/galois.hpp"

namespace ramanujan {

namespace {

// True when `sub` is `top` or one of the fields below it in its tower.
bool in_tower(const Field& sub, const Field& top) {
  const Field* f = &top;
  while (f != nullptr) {
    if (f->same_as(sub)) return true;
    f = f->base().get();
  }
  return false;
}

const Field& field_of(const Poly& p) {
  if (!p.field()) throw Error(ErrorKind::InvalidArgument, "polynomial has no coefficient field");
  return *p.field();
}

void same_ring(const Poly& a, const Poly& b, const char* what) {
  require_same_field(field_of(a), field_of(b), what);
}

}  // namespace

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(FieldPtr field) : field_(std::move(field)) {}

Poly::Poly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  for (Elem c : c_) field_of(*this).check(c);
  trim();
}

Poly Poly::constant(FieldPtr field, Elem c) { return Poly(std::move(field), {c}); }

Poly Poly::monomial(FieldPtr field, Elem c, unsigned degree) {
  std::vector<Elem> v(degree + 1, 0);
  v[degree] = c;
  return Poly(std::move(field), std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(field_->inv(lead()));
}

Poly Poly::scaled(Elem c) const {
  Poly r(field_);
  if (c == 0) return r;
  r.c_.resize(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = field_->mul(c_[i], c);
  r.trim();
  return r;
}

Poly Poly::shifted(unsigned k) const {
  if (is_zero()) return *this;
  Poly r(field_);
  r.c_.assign(k, 0);
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

Poly Poly::derivative() const {
  Poly r(field_);
  if (c_.size() <= 1) return r;
  r.c_.resize(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) {
    Elem m = 0;
    for (std::size_t k = 0; k < i % field_->characteristic(); ++k) m = field_->add(m, c_[i]);
    r.c_[i - 1] = m;
  }
  r.trim();
  return r;
}

Poly Poly::with_field(FieldPtr target) const {
  if (!target) throw Error(ErrorKind::InvalidArgument, "with_field needs a target field");
  if (in_tower(field_of(*this), *target)) {
    Poly r(std::move(target));
    r.c_ = c_;
    return r;
  }
  if (in_tower(*target, field_of(*this))) {
    for (Elem c : c_) {
      if (!target->contains(c)) {
        throw Error(ErrorKind::SpecMismatch,
                    "coefficient " + std::to_string(c) + " does not lie in " + target->describe());
      }
    }
    Poly r(std::move(target));
    r.c_ = c_;
    return r;
  }
  throw Error(ErrorKind::SpecMismatch, "fields " + field_->describe() + " and " +
                                           target->describe() + " are not in one tower");
}

Poly Poly::frobenius(long i) const {
  Poly r(field_);
  r.c_.resize(c_.size());
  for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] = field_->frobenius(c_[k], i);
  return r;
}

Poly Poly::operator-() const {
  Poly r(field_);
  r.c_.resize(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = field_->neg(c_[i]);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  same_ring(*this, o, "polynomial addition");
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_->add(c_[i], o.c_[i]);
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  same_ring(*this, o, "polynomial subtraction");
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_->sub(c_[i], o.c_[i]);
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  same_ring(a, b, "polynomial multiplication");
  Poly r(a.field_);
  if (a.is_zero() || b.is_zero()) return r;
  const Field& f = *a.field_;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      r.c_[i + j] = f.add(r.c_[i + j], f.mul(a.c_[i], b.c_[j]));
    }
  }
  r.trim();
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.c_ != b.c_) return false;
  if (a.field_ == b.field_) return true;
  if (!a.field_ || !b.field_) return false;
  return a.field_->same_as(*b.field_);
}

std::string Poly::to_string(std::string_view var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const Elem c = c_[i];
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    if (c != 1 || i == 0) {
      out += std::to_string(c);
      if (i > 0) out += '*';
    }
    if (i > 0) {
      out += var;
      if (i > 1) out += '^' + std::to_string(i);
    }
  }
  return out;
}

std::string Poly::to_string_ascending(std::string_view var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const Elem c = c_[i];
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    if (c != 1 || i == 0) {
      out += std::to_string(c);
      if (i > 0) out += '*';
    }
    if (i > 0) {
      out += var;
      if (i > 1) out += '^' + std::to_string(i);
    }
  }
  return out;
}

Poly Poly::parse(FieldPtr field, std::string_view text) {
  if (!field) throw Error(ErrorKind::InvalidArgument, "parse needs a field");
  auto fail = [&](const std::string& why) -> Error {
    return Error(ErrorKind::ParseError, "cannot parse polynomial '" + std::string(text) + "': " + why);
  };
  std::string s;
  bool gap = false;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      gap = true;
      continue;
    }
    if (gap && !s.empty() && std::isdigit(static_cast<unsigned char>(s.back())) &&
        std::isdigit(static_cast<unsigned char>(ch)))
      throw fail("space inside a number");
    gap = false;
    s += ch;
  }
  auto read_uint = [&](std::size_t& pos) -> std::uint64_t {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), v);
    if (ec != std::errc()) throw fail("expected a number");
    pos = static_cast<std::size_t>(ptr - s.data());
    return v;
  };
  if (s.empty()) throw fail("empty input");

  std::vector<Elem> coeffs;
  auto add_term = [&](Elem c, std::size_t deg) {
    if (!field->contains(c)) throw fail("coefficient out of range");
    if (coeffs.size() <= deg) coeffs.resize(deg + 1, 0);
    coeffs[deg] = field->add(coeffs[deg], c);
  };

  if (s.front() == '[') {
    if (s.back() != ']') throw fail("missing ']'");
    std::size_t pos = 1;
    std::size_t deg = 0;
    if (s.size() == 2) return Poly(field);
    while (pos < s.size() - 1) {
      add_term(read_uint(pos), deg++);
      if (pos < s.size() - 1) {
        if (s[pos] != ',') throw fail("expected ','");
        ++pos;
      }
    }
    return Poly(field, std::move(coeffs));
  }

  std::size_t pos = 0;
  char var = 0;
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    } else if (pos != 0) {
      throw fail("expected '+' or '-'");
    }
    if (pos >= s.size()) throw fail("dangling sign");
    Elem c = 1;
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
      const std::uint64_t v = read_uint(pos);
      if (!field->contains(v)) throw fail("coefficient out of range");
      c = v;
      have_coeff = true;
      if (pos < s.size() && s[pos] == '*') ++pos;
    }
    std::size_t deg = 0;
    if (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) {
      if (var != 0 && s[pos] != var) throw fail("mixed variable names");
      var = s[pos++];
      deg = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        deg = read_uint(pos);
        if (deg > 1u << 20) throw fail("degree too large");
      }
    } else if (!have_coeff) {
      throw fail("expected a term");
    }
    add_term(negative ? field->neg(c) : c, deg);
  }
  return Poly(field, std::move(coeffs));
}

// ---------------------------------------------------------------------------
// Division and gcd

PolyDivMod divmod(const Poly& a, const Poly& b) {
  same_ring(a, b, "polynomial division");
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZeroPoly, "division by the zero polynomial");
  const Field& f = *a.field();
  std::vector<Elem> r = a.coeffs();
  const auto& d = b.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Poly(a.field()), a};
  std::vector<Elem> q(static_cast<std::size_t>(a.degree() - db + 1), 0);
  const Elem inv_lead = f.inv(b.lead());
  for (int k = a.degree(); k >= db; --k) {
    const Elem c = r[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    const Elem t = f.mul(c, inv_lead);
    q[static_cast<std::size_t>(k - db)] = t;
    for (int j = 0; j <= db; ++j) {
      auto& slot = r[static_cast<std::size_t>(k - db + j)];
      slot = f.sub(slot, f.mul(t, d[static_cast<std::size_t>(j)]));
    }
  }
  return {Poly(a.field(), std::move(q)), Poly(a.field(), std::move(r))};
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a;
  Poly y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

ExtGcd ext_gcd(const Poly& a, const Poly& b) {
  same_ring(a, b, "extended gcd");
  const FieldPtr& k = a.field();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(k, 1), s1(k);
  Poly t0(k), t1 = Poly::constant(k, 1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Elem inv = k->inv(r0.lead());
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

Poly compose(const Poly& f, const Poly& h) {
  same_ring(f, h, "composition");
  Poly r(f.field());
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    r = r * h + Poly::constant(f.field(), f.coeffs()[i]);
  }
  return r;
}

Poly pow(const Poly& f, unsigned e) {
  field_of(f);
  Poly r = Poly::constant(f.field(), 1);
  Poly b = f;
  while (e != 0) {
    if (e & 1u) r *= b;
    e >>= 1;
    if (e != 0) b *= b;
  }
  return r;
}

Poly pow_mod(const Poly& f, std::uint64_t e, const Poly& modulus) {
  Poly r = Poly::constant(f.field(), 1) % modulus;
  Poly b = f % modulus;
  while (e != 0) {
    if (e & 1u) r = (r * b) % modulus;
    e >>= 1;
    if (e != 0) b = (b * b) % modulus;
  }
  return r;
}

Elem evaluate(const Poly& f, const Field& where, Elem at) {
  if (!in_tower(field_of(f), where)) {
    throw Error(ErrorKind::SpecMismatch, "cannot evaluate a polynomial over " +
                                             f.field()->describe() + " in " + where.describe());
  }
  where.check(at);
  Elem r = 0;
  const auto& c = f.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) r = where.add(where.mul(r, at), c[i]);
  return r;
}

// ---------------------------------------------------------------------------
// RationalFn

RationalFn::RationalFn(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.field(), 1)) {}

RationalFn::RationalFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void RationalFn::normalize() {
  same_ring(num_, den_, "rational function");
  if (den_.is_zero()) throw Error(ErrorKind::DivisionByZeroPoly, "zero denominator");
  if (num_.is_zero()) {
    den_ = Poly::constant(num_.field(), 1);
    return;
  }
  const Poly g = gcd(num_, den_);
  if (!g.is_one()) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
  if (!den_.is_monic()) {
    const Elem inv = num_.field()->inv(den_.lead());
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RationalFn RationalFn::inverse() const {
  if (num_.is_zero()) throw Error(ErrorKind::ZeroInverse, "inverse of the zero rational function");
  return RationalFn(den_, num_);
}

RationalFn RationalFn::frobenius(long i) const {
  return RationalFn(num_.frobenius(i), den_.frobenius(i));
}

RationalFn RationalFn::with_field(FieldPtr target) const {
  return RationalFn(num_.with_field(target), den_.with_field(target));
}

RationalFn RationalFn::operator-() const {
  RationalFn r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
  if (a.den_ == b.den_) return RationalFn(a.num_ + b.num_, a.den_);
  return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFn operator-(const RationalFn& a, const RationalFn& b) { return a + (-b); }

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
  return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFn operator/(const RationalFn& a, const RationalFn& b) { return a * b.inverse(); }

bool operator==(const RationalFn& a, const RationalFn& b) {
  return a.num_ == b.num_ && a.den_ == b.den_;
}

std::string RationalFn::to_string(std::string_view var) const {
  if (den_.is_one()) return num_.to_string(var);
  return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

// ---------------------------------------------------------------------------
// LocalRing

namespace {
constexpr std::uint64_t kMulTableLimit = 1024;
constexpr std::uint64_t kInvTableLimit = 1u << 20;
}  // namespace

LocalRing::LocalRing(Poly g, unsigned s) : g_(std::move(g)), s_(s) {
  if (s_ == 0) throw Error(ErrorKind::InvalidArgument, "local ring exponent s must be >= 1");
  if (!g_.is_monic() || !is_irreducible(g_)) {
    throw Error(ErrorKind::InvalidArgument, "g = " + g_.to_string() + " is not monic irreducible");
  }
  modulus_ = ramanujan::pow(g_, s_);
  len_ = static_cast<unsigned>(modulus_.degree());
  const std::uint64_t q = base_field()->order();
  size_ = 1;
  for (unsigned i = 0; i < len_; ++i) {
    if (size_ > std::numeric_limits<std::uint64_t>::max() / 2 / q) {
      throw Error(ErrorKind::InvalidArgument, "local ring too large");
    }
    size_ *= q;
    if (i + 1 == e()) residue_size_ = size_;
  }
  if (size_ <= kMulTableLimit) {
    mul_table_.assign(size_ * size_, 0);
    for (Elem a = 0; a < size_; ++a)
      for (Elem b = a; b < size_; ++b) {
        const Elem p = mul_generic(a, b);
        mul_table_[a * size_ + b] = p;
        mul_table_[b * size_ + a] = p;
      }
  }
  if (size_ <= kInvTableLimit) {
    std::vector<Elem> inv(size_, 0);
    for (Elem a = 1; a < size_; ++a) {
      if (inv[a] != 0 || !is_unit(a)) continue;
      const Elem b = inverse(a);
      inv[a] = b;
      inv[b] = a;
    }
    inv_table_ = std::move(inv);
  }
}

void LocalRing::check(Elem a) const {
  if (a >= size_) {
    throw Error(ErrorKind::SpecMismatch, "value " + std::to_string(a) + " is not in the local ring");
  }
}

Elem LocalRing::reduce(const Poly& f) const {
  const Poly r = f.field() == base_field() ? f % modulus_ : f.with_field(base_field()) % modulus_;
  const std::uint64_t q = base_field()->order();
  Elem v = 0;
  const auto& c = r.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) v = v * q + c[i];
  return v;
}

Poly LocalRing::lift(Elem a) const {
  check(a);
  const std::uint64_t q = base_field()->order();
  std::vector<Elem> c(len_);
  for (unsigned i = 0; i < len_; ++i) {
    c[i] = a % q;
    a /= q;
  }
  return Poly(base_field(), std::move(c));
}

Elem LocalRing::mul_generic(Elem a, Elem b) const { return reduce(lift(a) * lift(b)); }

Elem LocalRing::mul(Elem a, Elem b) const {
  if (!mul_table_.empty()) return mul_table_[a * size_ + b];
  if (a == 0 || b == 0) return 0;
  if (a == 1) return b;
  if (b == 1) return a;
  return mul_generic(a, b);
}

Elem LocalRing::pow(Elem a, std::uint64_t e) const {
  Elem r = 1;
  Elem b = a;
  while (e != 0) {
    if (e & 1u) r = mul(r, b);
    e >>= 1;
    if (e != 0) b = mul(b, b);
  }
  return r;
}

Elem LocalRing::residue(Elem a) const {
  const Poly r = lift(a) % g_;
  const std::uint64_t q = base_field()->order();
  Elem v = 0;
  const auto& c = r.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) v = v * q + c[i];
  return v;
}

bool LocalRing::is_unit(Elem a) const {
  check(a);
  if (s_ == 1) return a != 0;
  if (!inv_table_.empty()) return inv_table_[a] != 0;
  return residue(a) != 0;
}

Elem LocalRing::inverse(Elem a) const {
  check(a);
  if (!inv_table_.empty() && inv_table_[a] != 0) return inv_table_[a];
  if (!is_unit(a)) {
    throw Error(ErrorKind::NonUnit, "element " + std::to_string(a) + " lies in the maximal ideal");
  }
  const ExtGcd eg = ext_gcd(lift(a), modulus_);
  return reduce(eg.u);
}

}  // namespace ramanujan
