#pragma once

#include <memory>
#include <optional>

#include "ramanujan/cyclic_algebra.hpp"
#include "ramanujan/projgroup.hpp"

namespace ramanujan {

/// The ideal choice: alpha in F_{q^e} with gamma = y(alpha) generating
/// F_{q^e}, their minimal polynomials p (of gamma) and g (of alpha), the ring
/// L = F_q[x]/(g^s) and the index r of PSL_d(L) in the image group.
struct QuotientParams {
  unsigned e = 1;
  unsigned s = 1;
  FieldPtr fqe;
  Elem alpha = 0;
  Elem gamma = 0;
  Poly p;
  Poly g;
  std::shared_ptr<const LocalRing> ring;
  unsigned r = 1;
  std::uint64_t scanned = 0;  // candidates examined
};

/// Scans alpha in packed order and accepts the first one with y(alpha) a
/// generator of F_{q^e}, y(alpha) not in {0, -1}, and (when given) index r
/// equal to target_r. For s > 1 alpha must also be a simple root of
/// y - gamma. Throws NoSuitableAlpha, or UnsupportedParams when s > 1
/// and the characteristic divides d.
QuotientParams select_alpha(const CyclicAlgebra& alg, unsigned e, unsigned s,
                            std::optional<unsigned> target_r = std::nullopt,
                            std::vector<Elem> fqe_modulus = {});

/// The algebra together with its quotient choice.
struct Construction {
  CyclicAlgebra algebra;
  QuotientParams quotient;
  std::uint64_t betas_tried = 1;
  bool beta_auto = false;  // beta came from the scan
};

/// Builds the algebra and selects alpha. With an explicit beta this is
/// select_alpha on that algebra; otherwise betas of nonzero trace are tried in
/// packed order and the first one admitting a suitable alpha is kept.
Construction construct(const AlgebraOptions& opts, unsigned e, unsigned s,
                       std::optional<unsigned> target_r = std::nullopt, std::vector<Elem> fqe_modulus = {});

/// Order of a = gamma/(1+gamma) in L_0^x / (L_0^x)^d, via the order of
/// a^((Q-1)/c), c = gcd(d, Q-1). `gamma_class` is the image of y in L.
unsigned index_r(const LocalRing& ring, unsigned d, Elem gamma_class);

/// Same value by listing the d-th powers of L_0^x.
unsigned index_r_exhaustive(const LocalRing& ring, unsigned d, Elem gamma_class);

/// Substitutes x by its class in L, divides by (1+y)^den_pow and
/// canonicalizes. Throws NonUnitDenominator when 1+y is not a unit of L.
ProjMatrix reduce_to_L(const LocalizedMatrix& b, const LocalRing& ring);

/// The header sets reduced into PGL_d(L), indexed by color k - 1.
std::vector<std::vector<ProjMatrix>> reduce_headers(const std::vector<std::vector<HeaderElement>>& sets,
                                                    const LocalRing& ring);

/// Residue field L_0 = F_q[x]/(g) as a Field with the same packing.
FieldPtr residue_field(const LocalRing& ring);

}  // namespace ramanujan
