#include "ramanujan/quotient.hpp"

#include <numeric>
#include <set>

namespace ramanujan {

namespace {

void require_supported(std::uint64_t p, unsigned d, unsigned s) {
  if (s > 1 && d % p == 0) {
    throw Error(ErrorKind::UnsupportedParams,
                "s > 1 needs d prime to q (d = " + std::to_string(d) + ", p = " + std::to_string(p) + ")");
  }
}

// Order of gamma/(1+gamma) in F^x / (F^x)^d.
unsigned index_in_field(const Field& f, unsigned d, Elem gamma) {
  const Elem one_plus = f.add(gamma, 1);
  if (gamma == 0 || one_plus == 0) {
    throw Error(ErrorKind::InvalidArgument, "gamma must avoid 0 and -1");
  }
  const Elem a = f.div(gamma, one_plus);
  const std::uint64_t Q = f.order();
  const std::uint64_t c = std::gcd(static_cast<std::uint64_t>(d), Q - 1);
  return static_cast<unsigned>(f.multiplicative_order(f.pow(a, (Q - 1) / c)));
}

}  // namespace

FieldPtr residue_field(const LocalRing& ring) {
  return Field::extension(ring.base_field(), ring.g().coeffs());
}

unsigned index_r(const LocalRing& ring, unsigned d, Elem gamma_class) {
  require_supported(ring.base_field()->characteristic(), d, ring.s());
  const FieldPtr l0 = residue_field(ring);
  return index_in_field(*l0, d, ring.residue(gamma_class));
}

unsigned index_r_exhaustive(const LocalRing& ring, unsigned d, Elem gamma_class) {
  require_supported(ring.base_field()->characteristic(), d, ring.s());
  const FieldPtr l0 = residue_field(ring);
  const Field& f = *l0;
  const Elem gamma = ring.residue(gamma_class);
  const Elem one_plus = f.add(gamma, 1);
  if (gamma == 0 || one_plus == 0) throw Error(ErrorKind::InvalidArgument, "gamma must avoid 0 and -1");
  const Elem a = f.div(gamma, one_plus);
  std::set<Elem> powers;
  for (Elem x = 1; x < f.order(); ++x) powers.insert(f.pow(x, d));
  Elem cur = a;
  for (unsigned k = 1;; ++k) {
    if (powers.count(cur)) return k;
    cur = f.mul(cur, a);
  }
}

QuotientParams select_alpha(const CyclicAlgebra& alg, unsigned e, unsigned s, std::optional<unsigned> target_r,
                            std::vector<Elem> fqe_modulus) {
  if (e < 1) throw Error(ErrorKind::InvalidArgument, "e must be >= 1");
  if (s < 1) throw Error(ErrorKind::InvalidArgument, "s must be >= 1");
  require_supported(alg.fq()->characteristic(), alg.d(), s);
  QuotientParams qp;
  qp.e = e;
  qp.s = s;
  qp.fqe = fqe_modulus.empty() ? Field::extension(alg.fq(), e) : Field::extension(alg.fq(), std::move(fqe_modulus));
  if (qp.fqe->degree() != e) throw Error(ErrorKind::InvalidArgument, "F_{q^e} modulus has the wrong degree");
  const Field& f = *qp.fqe;
  const Poly& y = alg.norm().y;
  const Poly dy = y.derivative();
  for (Elem alpha = 0; alpha < f.order(); ++alpha) {
    ++qp.scanned;
    const Elem gamma = evaluate(y, f, alpha);
    if (gamma == 0 || f.add(gamma, 1) == 0) continue;
    if (!is_field_generator(f, gamma)) continue;
    // g^2 | y - gamma would collapse F_q[y]/(p^s) onto the residue field.
    if (s > 1 && evaluate(dy, f, alpha) == 0) continue;
    const unsigned r = index_in_field(f, alg.d(), gamma);
    if (target_r && r != *target_r) continue;
    qp.alpha = alpha;
    qp.gamma = gamma;
    qp.r = r;
    qp.p = min_poly(qp.fqe, gamma);
    qp.g = min_poly(qp.fqe, alpha);
    qp.ring = std::make_shared<const LocalRing>(qp.g, s);
    return qp;
  }
  throw Error(ErrorKind::NoSuitableAlpha, "no suitable alpha among " + std::to_string(qp.scanned) +
                                             " candidates in F_" + std::to_string(f.order()) +
                                             (target_r ? " with r = " + std::to_string(*target_r) : std::string()));
}

Construction construct(const AlgebraOptions& opts, unsigned e, unsigned s, std::optional<unsigned> target_r,
                       std::vector<Elem> fqe_modulus) {
  if (opts.beta) {
    CyclicAlgebra alg(opts);
    QuotientParams qp = select_alpha(alg, e, s, target_r, std::move(fqe_modulus));
    return {std::move(alg), std::move(qp), 1, false};
  }
  const CyclicAlgebra first(opts);
  const FieldPtr& fqd = first.fqd();
  std::uint64_t tried = 0;
  for (Elem beta = 1; beta < fqd->order(); ++beta) {
    if (fqd->trace(beta) == 0) continue;
    ++tried;
    AlgebraOptions o = opts;
    o.beta = beta;
    CyclicAlgebra alg(o);
    try {
      QuotientParams qp = select_alpha(alg, e, s, target_r, fqe_modulus);
      return {std::move(alg), std::move(qp), tried, true};
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::NoSuitableAlpha) throw;
    }
  }
  throw Error(ErrorKind::NoSuitableAlpha, "no beta of nonzero trace admits a suitable alpha (" +
                                             std::to_string(tried) + " betas tried)");
}

ProjMatrix reduce_to_L(const LocalizedMatrix& b, const LocalRing& ring) {
  std::vector<Elem> m;
  m.reserve(b.num.size());
  for (const Poly& p : b.num) m.push_back(ring.reduce(p));
  if (b.den_pow > 0) {
    const Elem unit = ring.reduce(b.unit);
    if (!ring.is_unit(unit)) {
      throw Error(ErrorKind::NonUnitDenominator, "1+y(x) is not a unit modulo g^s");
    }
    const Elem scale = ring.pow(ring.inverse(unit), b.den_pow);
    for (Elem& v : m) v = ring.mul(v, scale);
  }
  return canonicalize(ring, b.n, std::move(m));
}

std::vector<std::vector<ProjMatrix>> reduce_headers(const std::vector<std::vector<HeaderElement>>& sets,
                                                    const LocalRing& ring) {
  std::vector<std::vector<ProjMatrix>> out(sets.size());
  for (std::size_t k = 0; k < sets.size(); ++k)
    for (const auto& h : sets[k]) out[k].push_back(reduce_to_L(h.matrix, ring));
  return out;
}

}  // namespace ramanujan
