#include "ramanujan/spectra.hpp"

#include <lapacke.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "ramanujan/cyclic_algebra.hpp"
#include "ramanujan/error.hpp"

namespace ramanujan {

using MatC = Eigen::MatrixXcd;
using MatR = Eigen::MatrixXd;

std::uint64_t HeckeOperator::row_sum(std::size_t i) const {
  std::uint64_t s = 0;
  for (std::uint32_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) s += val[p];
  return s;
}

std::uint64_t HeckeOperator::trace() const {
  std::uint64_t t = 0;
  for (std::size_t i = 0; i < n; ++i) t += at(i, i);
  return t;
}

std::uint32_t HeckeOperator::at(std::size_t i, std::size_t j) const {
  const auto b = col.begin() + row_ptr[i];
  const auto e = col.begin() + row_ptr[i + 1];
  const auto it = std::lower_bound(b, e, static_cast<std::uint32_t>(j));
  return it != e && *it == j ? val[static_cast<std::size_t>(it - col.begin())] : 0;
}

namespace {

// Builds CSR from (row, col) pairs, summing duplicates.
HeckeOperator from_pairs(unsigned k, std::size_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs,
                         const std::vector<std::uint32_t>* weights = nullptr) {
  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pairs[a] < pairs[b]; });
  HeckeOperator h;
  h.k = k;
  h.n = n;
  h.row_ptr.assign(n + 1, 0);
  const std::pair<std::uint32_t, std::uint32_t>* last = nullptr;
  for (std::size_t idx : order) {
    const std::uint32_t w = weights ? (*weights)[idx] : 1;
    if (last && *last == pairs[idx]) {
      h.val.back() += w;
      continue;
    }
    last = &pairs[idx];
    h.col.push_back(pairs[idx].second);
    h.val.push_back(w);
    ++h.row_ptr[pairs[idx].first + 1];
  }
  for (std::size_t i = 1; i <= n; ++i) h.row_ptr[i] += h.row_ptr[i - 1];
  return h;
}

HeckeOperator multiply(const HeckeOperator& a, const HeckeOperator& b) {
  const std::size_t n = a.n;
  HeckeOperator c;
  c.n = n;
  c.row_ptr.assign(n + 1, 0);
  std::vector<std::uint64_t> acc(n, 0);
  std::vector<std::uint32_t> touched;
  for (std::size_t i = 0; i < n; ++i) {
    touched.clear();
    for (std::uint32_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
      const std::uint32_t m = a.col[p];
      for (std::uint32_t q = b.row_ptr[m]; q < b.row_ptr[m + 1]; ++q) {
        const std::uint32_t j = b.col[q];
        if (acc[j] == 0) touched.push_back(j);
        acc[j] += static_cast<std::uint64_t>(a.val[p]) * b.val[q];
      }
    }
    std::sort(touched.begin(), touched.end());
    for (std::uint32_t j : touched) {
      c.col.push_back(j);
      c.val.push_back(static_cast<std::uint32_t>(acc[j]));
      acc[j] = 0;
    }
    c.row_ptr[i + 1] = static_cast<std::uint32_t>(c.col.size());
  }
  return c;
}

MatC apply_block(const HeckeOperator& a, const MatC& w, bool transposed) {
  MatC y(w.rows(), w.cols());
  for (Eigen::Index j = 0; j < w.cols(); ++j) {
    if (transposed) {
      a.apply_transpose(w.col(j).data(), y.col(j).data());
    } else {
      a.apply(w.col(j).data(), y.col(j).data());
    }
  }
  return y;
}

struct Refiner {
  const HeckeOperator* a;
  bool imaginary;  // i(A - A^T) instead of A + A^T
};

MatC apply_refiner(const Refiner& ref, const MatC& w) {
  const MatC x = apply_block(*ref.a, w, false);
  const MatC y = apply_block(*ref.a, w, true);
  if (ref.imaginary) return std::complex<double>(0, 1) * (x - y);
  return x + y;
}

// Splits sorted eigenvalues into runs whose consecutive gaps are <= gap.
std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters(const Eigen::VectorXd& w, double gap) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= w.size(); ++i) {
    if (i == w.size() || w[i] - w[i - 1] > gap) {
      out.push_back({start, i - start});
      start = i;
    }
  }
  return out;
}

void refine(const std::vector<Refiner>& refs, std::size_t level, MatC w, double gap, std::vector<MatC>& out) {
  if (level == refs.size() || w.cols() == 1) {
    out.push_back(std::move(w));
    return;
  }
  MatC h = w.adjoint() * apply_refiner(refs[level], w);
  h = (h + h.adjoint()).eval() * 0.5;
  Eigen::SelfAdjointEigenSolver<MatC> es(h);
  const Eigen::VectorXd& ev = es.eigenvalues();
  for (auto [b, len] : clusters(ev, gap)) refine(refs, level + 1, w * es.eigenvectors().middleCols(b, len), gap, out);
}

void check_operators(const std::vector<HeckeOperator>& ops) {
  const std::size_t m = ops.size();
  for (std::size_t k = 0; k < m; ++k) {
    if (ops[k].n != ops[0].n) throw Error(ErrorKind::InvalidArgument, "operators of different sizes");
    if (!equal(transpose(ops[k]), ops[m - 1 - k])) {
      throw Error(ErrorKind::NonCommutingOperators,
                  "A_" + std::to_string(m - k) + " is not the transpose of A_" + std::to_string(k + 1));
    }
  }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      if (!commute(ops[a], ops[b])) {
        throw Error(ErrorKind::NonCommutingOperators,
                    "A_" + std::to_string(a + 1) + " A_" + std::to_string(b + 1) + " != A_" + std::to_string(b + 1) +
                        " A_" + std::to_string(a + 1));
      }
}

std::vector<std::uint64_t> constant_degrees(const std::vector<HeckeOperator>& ops) {
  std::vector<std::uint64_t> deg;
  for (const auto& a : ops) {
    const std::uint64_t d0 = a.n ? a.row_sum(0) : 0;
    for (std::size_t i = 1; i < a.n; ++i)
      if (a.row_sum(i) != d0) return {};
    deg.push_back(d0);
  }
  return deg;
}

double tuple_scale(const std::vector<HeckeOperator>& ops) {
  double s = 1;
  for (const auto& a : ops)
    for (std::size_t i = 0; i < a.n; ++i) s = std::max(s, static_cast<double>(a.row_sum(i)));
  return s;
}

bool tuples_close(const Tuple& a, const Tuple& b, double tol) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (std::abs(a[k] - b[k]) > tol) return false;
  return true;
}

std::vector<long long> rounded_key(const Tuple& t, double tol) {
  std::vector<long long> key;
  for (auto z : t) {
    key.push_back(std::llround(z.real() / tol));
    key.push_back(std::llround(z.imag() / tol));
  }
  return key;
}

MatR a_plus_at(const HeckeOperator& a) {
  const auto n = static_cast<Eigen::Index>(a.n);
  MatR h = MatR::Zero(n, n);
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::uint32_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
      h(static_cast<Eigen::Index>(i), a.col[p]) += a.val[p];
      h(a.col[p], static_cast<Eigen::Index>(i)) += a.val[p];
    }
  return h;
}

// dsyevd, then a residual check on the returned pairs and an orthogonality
// probe. False when the result is not trustworthy.
bool lapack_eigensolve(MatR h, MatR& vectors, Eigen::VectorXd& values, double scale) {
  const Eigen::Index n = h.rows();
  const MatR original = h;
  values.resize(n);
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', static_cast<lapack_int>(n), h.data(),
                                         static_cast<lapack_int>(n), values.data());
  if (info != 0) return false;
  const double limit = 1e-8 * scale * std::sqrt(static_cast<double>(n) + 1);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = unif(rng);
  x.normalize();
  const Eigen::VectorXd y = h * x;
  if ((original * y - h * values.cwiseProduct(x)).norm() > limit) return false;
  if ((h.transpose() * y - x).norm() > limit) return false;
  vectors = std::move(h);
  return true;
}

void dense_spectrum(const std::vector<HeckeOperator>& ops, const SpectrumOptions& opts, SpectrumReport& rep) {
  const std::size_t n = rep.n;
  const unsigned d = rep.d;
  if (n > opts.dense_cap) {
    throw Error(ErrorKind::DenseCapExceeded,
                std::to_string(n) + " vertices exceed the dense cap of " + std::to_string(opts.dense_cap));
  }
  const double scale = tuple_scale(ops);
  const double gap = opts.cluster_tol * scale;

  MatR h;
  Eigen::VectorXd w;
  if (!opts.use_lapack || !lapack_eigensolve(a_plus_at(ops[0]), h, w, scale)) {
    // Some OpenBLAS builds return wrong eigenvectors on newer x86 cores.
    Eigen::SelfAdjointEigenSolver<MatR> es(a_plus_at(ops[0]));
    h = es.eigenvectors();
    w = es.eigenvalues();
    rep.eigensolver = "eigen";
  } else {
    rep.eigensolver = "lapack-dsyevd";
  }

  std::vector<Refiner> refs;
  if (d > 2) refs.push_back({&ops[0], true});
  for (unsigned k = 2; k <= d / 2; ++k) {
    refs.push_back({&ops[k - 1], false});
    refs.push_back({&ops[k - 1], true});
  }

  std::vector<MatC> spaces;
  for (auto [b, len] : clusters(w, gap)) refine(refs, 0, h.middleCols(b, len).cast<std::complex<double>>(), gap, spaces);
  h.resize(0, 0);

  std::vector<SpectralTuple> found;
  for (const MatC& s : spaces) {
    SpectralTuple t;
    t.multiplicity = static_cast<std::size_t>(s.cols());
    for (const auto& a : ops) {
      const MatC as = apply_block(a, s, false);
      t.lambda.push_back((s.adjoint() * as).trace() / static_cast<double>(s.cols()));
    }
    found.push_back(std::move(t));
  }
  std::sort(found.begin(), found.end(), [&](const SpectralTuple& x, const SpectralTuple& y) {
    return rounded_key(x.lambda, opts.tol) < rounded_key(y.lambda, opts.tol);
  });
  for (auto& t : found) {
    if (!rep.tuples.empty() && tuples_close(rep.tuples.back().lambda, t.lambda, 10 * gap)) {
      auto& prev = rep.tuples.back();
      const double wp = static_cast<double>(prev.multiplicity);
      const double wt = static_cast<double>(t.multiplicity);
      for (std::size_t k = 0; k < prev.lambda.size(); ++k)
        prev.lambda[k] = (wp * prev.lambda[k] + wt * t.lambda[k]) / (wp + wt);
      prev.multiplicity += t.multiplicity;
    } else {
      rep.tuples.push_back(std::move(t));
    }
  }
}

void deflate(std::vector<double>& x, const std::vector<std::uint32_t>& colors, unsigned r) {
  std::vector<double> sum(r, 0.0);
  std::vector<std::size_t> count(r, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const unsigned c = colors.empty() ? 0 : colors[i];
    sum[c] += x[i];
    ++count[c];
  }
  for (unsigned c = 0; c < r; ++c)
    if (count[c]) sum[c] /= static_cast<double>(count[c]);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] -= sum[colors.empty() ? 0 : colors[i]];
}

double norm2(const std::vector<double>& x) {
  double s = 0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

void sparse_spectrum(const std::vector<HeckeOperator>& ops, const SpectrumOptions& opts, SpectrumReport& rep) {
  const std::size_t n = rep.n;
  const unsigned d = rep.d;
  const unsigned r = opts.colors.empty() ? 1 : opts.r;
  if (!opts.colors.empty() && opts.colors.size() != n) {
    throw Error(ErrorKind::InvalidArgument, "color map size does not match the operators");
  }
  rep.deflated_radius.assign(d - 1, 0.0);
  rep.iterations.assign(d - 1, 0);
  rep.converged.assign(d - 1, false);
  for (unsigned k = 1; k <= d / 2; ++k) {
    const HeckeOperator& a = ops[k - 1];
    std::mt19937_64 rng(opts.seed + k);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> x(n), y(n), z(n);
    for (double& v : x) v = unif(rng);
    deflate(x, opts.colors, r);
    double nx = norm2(x);
    double mu = 0;
    bool conv = false;
    std::size_t it = 0;
    if (nx > 0) {
      for (double& v : x) v /= nx;
      double prev = -1;
      for (it = 1; it <= opts.max_iterations; ++it) {
        a.apply(x.data(), y.data());
        a.apply_transpose(y.data(), z.data());
        deflate(z, opts.colors, r);
        mu = std::inner_product(x.begin(), x.end(), z.begin(), 0.0);
        const double nz = norm2(z);
        if (nz == 0) {
          conv = true;
          break;
        }
        for (std::size_t i = 0; i < n; ++i) x[i] = z[i] / nz;
        if (prev >= 0 && std::abs(mu - prev) <= opts.power_rel_tol * mu) {
          conv = true;
          break;
        }
        prev = mu;
      }
    } else {
      conv = true;
    }
    const double radius = std::sqrt(std::max(mu, 0.0));
    for (unsigned kk : {k, d - k}) {
      rep.deflated_radius[kk - 1] = radius;
      rep.iterations[kk - 1] = std::min(it, opts.max_iterations);
      rep.converged[kk - 1] = conv;
    }
  }
}

std::vector<std::int64_t> cyclotomic(unsigned m) {
  // t^m - 1 divided by Phi_e for every proper divisor e of m
  std::vector<std::int64_t> num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (unsigned e = 1; e < m; ++e) {
    if (m % e) continue;
    const auto den = cyclotomic(e);
    std::vector<std::int64_t> quot(num.size() - den.size() + 1, 0);
    for (std::size_t i = quot.size(); i-- > 0;) {
      const std::int64_t c = num[i + den.size() - 1];
      quot[i] = c;
      for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
    num = std::move(quot);
  }
  return num;
}

bool vanishes_mod(std::vector<std::int64_t> f, const std::vector<std::int64_t>& phi) {
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = f.size(); i-- > deg;) {
    const std::int64_t c = f[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) f[i - deg + j] -= c * phi[j];
  }
  for (std::size_t i = 0; i < std::min(deg, f.size()); ++i)
    if (f[i] != 0) return false;
  return true;
}

}  // namespace

std::vector<HeckeOperator> assemble_hecke(const GroupClosure& closure, unsigned d) {
  if (d < 2) throw Error(ErrorKind::InvalidArgument, "d must be at least 2");
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> pairs(d - 1);
  for (const auto& e : closure.edges) {
    if (e.color == 0 || e.color >= d) throw Error(ErrorKind::InvalidArgument, "edge color out of range");
    pairs[e.color - 1].push_back({e.src, e.dst});
  }
  std::vector<HeckeOperator> ops;
  for (unsigned k = 1; k < d; ++k) ops.push_back(from_pairs(k, closure.size(), std::move(pairs[k - 1])));
  return ops;
}

HeckeOperator transpose(const HeckeOperator& a) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(a.nnz());
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::uint32_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p)
      pairs.push_back({a.col[p], static_cast<std::uint32_t>(i)});
  std::vector<std::uint32_t> w;
  w.reserve(a.nnz());
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::uint32_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) w.push_back(a.val[p]);
  return from_pairs(a.k, a.n, std::move(pairs), &w);
}

bool equal(const HeckeOperator& a, const HeckeOperator& b) {
  return a.n == b.n && a.row_ptr == b.row_ptr && a.col == b.col && a.val == b.val;
}

bool commute(const HeckeOperator& a, const HeckeOperator& b) {
  if (a.n != b.n) throw Error(ErrorKind::InvalidArgument, "operators of different sizes");
  return equal(multiply(a, b), multiply(b, a));
}

std::vector<Tuple> trivial_tuples(unsigned r, std::uint64_t q, unsigned d) {
  if (r == 0) throw Error(ErrorKind::InvalidArgument, "r must be positive");
  std::vector<Tuple> out;
  for (unsigned j = 0; j < r; ++j) {
    Tuple t;
    for (unsigned k = 1; k < d; ++k) {
      const double angle = 2 * std::numbers::pi * static_cast<double>((j * k) % r) / r;
      t.push_back(static_cast<double>(q_binomial(d, k, q)) * std::polar(1.0, angle));
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<bool> trivial_eigenpairs_exact(const std::vector<HeckeOperator>& ops,
                                           const std::vector<std::uint32_t>& colors, unsigned r, std::uint64_t q,
                                           unsigned d) {
  if (r == 0) throw Error(ErrorKind::InvalidArgument, "r must be positive");
  if (ops.size() + 1 != d) throw Error(ErrorKind::InvalidArgument, "expected d - 1 operators");
  std::vector<bool> ok(r, true);
  for (unsigned j = 0; j < r; ++j) {
    const unsigned m = r / std::gcd(j, r);
    const auto phi = cyclotomic(m);
    for (const auto& a : ops) {
      const auto nk = static_cast<std::int64_t>(q_binomial(d, a.k, q));
      if (a.n != colors.size()) throw Error(ErrorKind::InvalidArgument, "color map size mismatch");
      for (std::size_t x = 0; x < a.n && ok[j]; ++x) {
        // (A_k v)(x) - n_k zeta^k v(x) as an integer polynomial in zeta of order m
        std::vector<std::int64_t> diff(m, 0);
        for (std::uint32_t p = a.row_ptr[x]; p < a.row_ptr[x + 1]; ++p)
          diff[(static_cast<std::uint64_t>(j) * colors[a.col[p]]) % m] += a.val[p];
        diff[(static_cast<std::uint64_t>(j) * (colors[x] + a.k)) % m] -= nk;
        if (!vanishes_mod(std::move(diff), phi)) ok[j] = false;
      }
    }
  }
  return ok;
}

std::string_view to_string(SpectrumMode m) { return m == SpectrumMode::Dense ? "dense" : "sparse"; }

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Ramanujan:
      return "RAMANUJAN";
    case Verdict::NotRamanujan:
      return "NOT_RAMANUJAN";
    case Verdict::Partial:
      return "PARTIAL";
    case Verdict::Undecided:
      return "UNDECIDED";
  }
  return "UNDECIDED";
}

SpectrumReport simultaneous_spectrum(const std::vector<HeckeOperator>& ops, SpectrumMode mode,
                                     const SpectrumOptions& opts) {
  if (ops.empty()) throw Error(ErrorKind::InvalidArgument, "no operators");
  check_operators(ops);
  SpectrumReport rep;
  rep.mode = mode;
  rep.n = ops[0].n;
  rep.d = static_cast<unsigned>(ops.size() + 1);
  rep.degrees = constant_degrees(ops);
  rep.tol = opts.tol;
  rep.radius_tol = opts.radius_tol;
  if (mode == SpectrumMode::Dense) {
    dense_spectrum(ops, opts, rep);
  } else {
    sparse_spectrum(ops, opts, rep);
  }
  return rep;
}

std::vector<std::complex<double>> polynomial_roots(const std::vector<std::complex<double>>& coeffs) {
  if (coeffs.size() < 2) return {};
  if (std::abs(coeffs.back() - 1.0) > 0) throw Error(ErrorKind::InvalidArgument, "polynomial must be monic");
  const auto deg = static_cast<Eigen::Index>(coeffs.size() - 1);
  MatC c = MatC::Zero(deg, deg);
  for (Eigen::Index i = 1; i < deg; ++i) c(i, i - 1) = 1;
  for (Eigen::Index i = 0; i < deg; ++i) c(i, deg - 1) = -coeffs[static_cast<std::size_t>(i)];
  Eigen::ComplexEigenSolver<MatC> es(c, false);
  std::vector<std::complex<double>> roots(es.eigenvalues().data(), es.eigenvalues().data() + deg);
  return roots;
}

bool sd_membership(const Tuple& lambda, std::uint64_t q, unsigned d, double tol) {
  if (d < 2 || lambda.size() + 1 != d) throw Error(ErrorKind::InvalidArgument, "tuple must have d - 1 entries");
  std::vector<std::complex<double>> coeffs(d + 1, 0.0);
  coeffs[d] = 1.0;
  for (unsigned k = 1; k <= d; ++k) {
    const std::complex<double> ck =
        k < d ? lambda[k - 1] / std::pow(static_cast<double>(q), k * (d - k) / 2.0) : std::complex<double>(1.0);
    coeffs[d - k] = (k % 2 ? -1.0 : 1.0) * ck;
  }
  const auto roots = polynomial_roots(coeffs);

  std::vector<std::size_t> parent(roots.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i] - roots[j]) < 1e-3) parent[find(i)] = find(j);

  for (std::size_t c = 0; c < roots.size(); ++c) {
    if (find(c) != c) continue;
    std::complex<double> centroid = 0;
    std::size_t m = 0;
    for (std::size_t i = 0; i < roots.size(); ++i)
      if (find(i) == c) {
        centroid += roots[i];
        ++m;
      }
    centroid /= static_cast<double>(m);
    if (std::abs(std::abs(centroid) - 1.0) > tol) return false;
    const double member_tol = std::pow(tol, 1.0 / static_cast<double>(m));
    for (std::size_t i = 0; i < roots.size(); ++i)
      if (find(i) == c && std::abs(std::abs(roots[i]) - 1.0) > member_tol) return false;
  }
  return true;
}

double sd_radius_bound(std::uint64_t q, unsigned d, unsigned k) {
  double binom = 1;
  for (unsigned i = 1; i <= k; ++i) binom = binom * (d - k + i) / i;
  return std::pow(static_cast<double>(q), k * (d - k) / 2.0) * binom;
}

void ramanujan_verdict(SpectrumReport& report, unsigned r, std::uint64_t q, unsigned d) {
  if (d != report.d) throw Error(ErrorKind::InvalidArgument, "d does not match the report");
  report.trivial = trivial_tuples(r, q, d);
  report.radius_bound.clear();
  for (unsigned k = 1; k < d; ++k) report.radius_bound.push_back(sd_radius_bound(q, d, k));

  if (report.mode == SpectrumMode::Sparse) {
    bool all_conv = true;
    bool exceeded = false;
    for (unsigned k = 0; k + 1 < d; ++k) {
      all_conv = all_conv && report.converged[k];
      // Rayleigh estimates never exceed the true radius.
      if (report.deflated_radius[k] > report.radius_bound[k] + report.radius_tol) exceeded = true;
    }
    report.verdict = exceeded ? Verdict::NotRamanujan : (all_conv ? Verdict::Partial : Verdict::Undecided);
    return;
  }

  double scale = 1;
  for (const auto& t : report.trivial)
    for (auto z : t) scale = std::max(scale, std::abs(z));
  const double match_tol = report.tol * scale;

  std::vector<SpectralTuple> out;
  std::vector<std::size_t> claimed(report.tuples.size(), 0);
  for (const auto& t : report.trivial)
    for (std::size_t i = 0; i < report.tuples.size(); ++i)
      if (claimed[i] < report.tuples[i].multiplicity && tuples_close(report.tuples[i].lambda, t, match_tol)) {
        ++claimed[i];
        break;
      }
  report.coincidence_flagged = false;
  for (std::size_t i = 0; i < report.tuples.size(); ++i) {
    SpectralTuple base = report.tuples[i];
    base.in_sd = sd_membership(base.lambda, q, d, report.tol);
    if (claimed[i] > 0) {
      SpectralTuple triv = base;
      triv.trivial = true;
      triv.coincides_with_trivial = false;
      triv.multiplicity = claimed[i];
      out.push_back(triv);
      if (base.multiplicity > claimed[i]) {
        base.multiplicity -= claimed[i];
        base.trivial = false;
        base.coincides_with_trivial = true;
        report.coincidence_flagged = true;
        out.push_back(base);
      }
    } else {
      base.trivial = false;
      base.coincides_with_trivial = false;
      out.push_back(base);
    }
  }
  report.tuples = std::move(out);
  bool ok = true;
  for (const auto& t : report.tuples)
    if (!t.trivial && !t.in_sd) ok = false;
  report.verdict = ok ? Verdict::Ramanujan : Verdict::NotRamanujan;
}

}  // namespace ramanujan
