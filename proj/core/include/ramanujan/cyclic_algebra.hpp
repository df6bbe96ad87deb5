#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ramanujan/galois.hpp"
#include "ramanujan/polyring.hpp"

namespace ramanujan {

/// Number of k-dimensional subspaces of F_q^d.
std::uint64_t q_binomial(unsigned d, unsigned k, std::uint64_t q);

/// F_q for a prime power q, as a single extension of F_p. Throws
/// InvalidArgument when q is not a prime power.
FieldPtr field_of_order(std::uint64_t q);

enum class BasisChoice { Normal, Power, Explicit };

struct AlgebraOptions {
  std::uint64_t q = 2;
  unsigned d = 2;
  unsigned ell = 1;
  /// Modulus of F_{q^d} over F_q, lowest degree first; lexicographically
  /// first irreducible when empty.
  std::vector<Elem> modulus;
  BasisChoice basis = BasisChoice::Normal;
  /// First element of the normal basis; searched when absent.
  std::optional<Elem> zeta0;
  /// Used with BasisChoice::Explicit.
  std::vector<Elem> explicit_basis;
  /// Lexicographically first element of nonzero trace when absent.
  std::optional<Elem> beta;
};

/// 1 + y(x) = Norm(1 + beta x), with y(x) = t_1 x + ... + t_d x^d.
struct NormForm {
  std::vector<Elem> t;  // t[0] = t_1
  Poly y;
  Poly one_plus_y;
};

/// Throws TraceZero when trace(beta) = 0.
NormForm norm_form(const FieldPtr& fq, const FieldPtr& fqd, Elem beta);

/// A d x d matrix over F_q[x] standing for num / (1 + y(x))^den_pow.
struct LocalizedMatrix {
  unsigned n = 0;
  std::vector<Poly> num;  // row-major
  unsigned den_pow = 0;
  Poly unit;              // 1 + y(x)

  const Poly& operator()(unsigned r, unsigned c) const { return num[r * n + c]; }
  Poly& operator()(unsigned r, unsigned c) { return num[r * n + c]; }

  static LocalizedMatrix identity(unsigned n, const Poly& unit);
  static LocalizedMatrix from_field_matrix(const FieldPtr& fq, const FieldMatrix& m, const Poly& unit);
};

LocalizedMatrix operator*(const LocalizedMatrix& a, const LocalizedMatrix& b);
LocalizedMatrix power(const LocalizedMatrix& a, unsigned e);
/// Equality of the represented matrices over F_q(x).
bool operator==(const LocalizedMatrix& a, const LocalizedMatrix& b);
/// True iff the matrix is a scalar multiple of the identity over F_q(x).
bool is_scalar(const LocalizedMatrix& m);
/// Representative of the class modulo F_q(x)-scalars: the numerator divided
/// by the gcd of its entries, scaled so the first nonzero entry is monic.
std::vector<Poly> projective_key(const LocalizedMatrix& m);
bool proportional(const LocalizedMatrix& a, const LocalizedMatrix& b);
/// Determinant over F_q(x).
RationalFn det(const LocalizedMatrix& m);
/// Numerator determinant by fraction-free elimination.
Poly det_numerator(const LocalizedMatrix& m);

class CyclicAlgebra;

/// Sum of c_j z^j, j < d, with c_j in F_{q^d}(y). Multiplication follows
/// z c = phi(c) z and z^d = 1 + y.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  AlgebraElement(const CyclicAlgebra& alg, std::vector<RationalFn> coeffs);

  static AlgebraElement zero(const CyclicAlgebra& alg);
  static AlgebraElement scalar(const CyclicAlgebra& alg, const RationalFn& c);
  /// c z^j for j in [0, d).
  static AlgebraElement monomial(const CyclicAlgebra& alg, Elem c, unsigned j);

  const std::vector<RationalFn>& coeffs() const { return c_; }
  unsigned d() const { return static_cast<unsigned>(c_.size()); }
  bool is_zero() const;

  /// Closed-form inverses for monomials and for binomials c_0 + c_j z^j whose
  /// d-th power reduction is central; throws NotInvertible otherwise.
  AlgebraElement inverse() const;

  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);

 private:
  FieldPtr fqd_;
  std::vector<RationalFn> c_;
};

/// Square matrix over F_q(y).
struct ConjMatrix {
  unsigned n = 0;
  std::vector<RationalFn> a;  // row-major

  const RationalFn& operator()(unsigned r, unsigned c) const { return a[r * n + c]; }
  friend bool operator==(const ConjMatrix&, const ConjMatrix&) = default;
};

ConjMatrix operator*(const ConjMatrix& a, const ConjMatrix& b);

/// Splits every entry as a + b/y with a, b in F_q; nullopt if some entry has
/// another shape.
std::optional<std::pair<FieldMatrix, FieldMatrix>> split_inverse_y(const ConjMatrix& m);

struct PairCompletion {
  Elem r_prime;
  Elem s_prime;
};

/// The cyclic algebra over F_q(y) with its splitting over F_q(x), for a fixed
/// basis of F_{q^d} over F_q and a fixed beta.
class CyclicAlgebra {
 public:
  explicit CyclicAlgebra(const AlgebraOptions& opts);

  std::uint64_t q() const { return fq_->order(); }
  unsigned d() const { return d_; }
  unsigned ell() const { return fqd_->frobenius_exp(); }
  const FieldPtr& fq() const { return fq_; }
  const FieldPtr& fqd() const { return fqd_; }
  const std::vector<Elem>& basis() const { return basis_; }
  BasisChoice basis_choice() const { return basis_choice_; }
  Elem beta() const { return beta_; }
  bool beta_was_auto() const { return beta_auto_; }
  const NormForm& norm() const { return norm_; }

  /// Matrix of multiplication by c in the fixed basis (column j holds c*zeta_j).
  FieldMatrix rho(Elem c) const;
  /// Coordinates of an element of F_{q^d} in the fixed basis.
  std::vector<Elem> basis_coords(Elem c) const;
  const FieldMatrix& phi_matrix() const { return phi_; }

  /// (1 + rho(beta) x) * phi_matrix, den_pow 0.
  LocalizedMatrix z_matrix() const;
  /// z^(d-1) / (1 + y).
  LocalizedMatrix z_inverse_matrix() const;
  /// rho(u) (1 - z^-1) rho(u)^-1; throws ZeroU.
  LocalizedMatrix b_matrix(Elem u) const;
  /// 1 - rho(r) z^-1.
  LocalizedMatrix b_r_matrix(Elem r) const;

  /// u_i = g^i, i < (q^d - 1)/(q - 1), for g the first primitive element of
  /// F_{q^d}; these represent F_{q^d}^x / F_q^x.
  const std::vector<Elem>& coset_reps() const { return reps_; }
  std::size_t generator_count() const { return reps_.size(); }
  /// Index of the coset of u in coset_reps().
  std::size_t coset_index(Elem u) const;
  /// All norm-one elements, in packed order.
  std::vector<Elem> norm_one_elements() const;

  /// The r with b_u = 1 - r z^-1, namely u / phi^-1(u).
  Elem u_to_r(Elem u) const;
  /// Throws NormNotOne.
  Elem r_to_u(Elem r) const;

  AlgebraElement z() const;
  AlgebraElement z_inverse() const;
  AlgebraElement b_element(Elem u) const;
  AlgebraElement field_element(Elem c) const { return AlgebraElement::monomial(*this, c, 0); }

  /// Matrix of a -> x a x^-1 on the ordered basis zeta_i z^j (index j*d + i).
  ConjMatrix conj_rep(const AlgebraElement& a) const;

 private:
  FieldPtr fq_;
  FieldPtr fqd_;
  unsigned d_ = 0;
  BasisChoice basis_choice_ = BasisChoice::Normal;
  std::vector<Elem> basis_;
  FieldMatrix basis_inv_;  // power coordinates -> basis coordinates
  Elem beta_ = 0;
  bool beta_auto_ = false;
  NormForm norm_;
  FieldMatrix phi_;
  std::vector<Elem> reps_;
  std::vector<std::uint32_t> coset_of_;  // by packed element; index into reps_
};

/// r' = ((s - r)/(phi(s) - phi(r))) phi(s), s' = ((s - r)/(phi(s) - phi(r))) phi(r),
/// which satisfy b_(r) b_(r') = b_(s) b_(s'). Throws DegenerateD2 for d = 2
/// and InvalidArgument when r = s.
PairCompletion pair_completion(const CyclicAlgebra& alg, Elem r, Elem s);
/// For d = 2: b_(r)^-1 = b_(-r) in the projective group.
Elem inverse_partner(const CyclicAlgebra& alg, Elem r);

/// A word in the generators, as indices into coset_reps().
using Word = std::vector<std::uint32_t>;

/// All d-tuples with b_{u_1} ... b_{u_d} scalar over F_q(x), in lexicographic
/// order.
std::vector<Word> relations_P(const CyclicAlgebra& alg);

struct HeaderElement {
  Word word;  // first header producing this class
  LocalizedMatrix matrix;
};

/// S_1 .. S_{d-1}: products of length-k prefixes of relations, modulo scalars,
/// in order of first appearance.
std::vector<std::vector<HeaderElement>> header_sets(const CyclicAlgebra& alg, const std::vector<Word>& P);

/// True iff b_1^d is the scalar y/(1+y). Throws NotCharPower unless d is a
/// power of the characteristic.
bool reld_check(const CyclicAlgebra& alg);

struct RewriteReport {
  std::size_t reached = 0;
  std::size_t total = 0;
  unsigned depth = 0;  // BFS radius needed
};

/// Breadth-first search over P from its first tuple, using cyclic rotation and
/// replacement of an adjacent pair by another pair with the same product.
RewriteReport rewrite_reachability(const CyclicAlgebra& alg, const std::vector<Word>& P);

/// Polynomial rendering with ascending powers, e.g. "x+x^3".
std::string render_matrix_ascending(const LocalizedMatrix& m);

}  // namespace ramanujan
