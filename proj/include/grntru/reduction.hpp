#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "grntru/lattice.hpp"
#include "grntru/matrix.hpp"

namespace grntru {

enum class Algorithm { lll, bkz };

inline std::string to_string(Algorithm a) { return a == Algorithm::lll ? "lll" : "bkz"; }

inline Algorithm parse_algorithm(const std::string& s) {
  if (s == "lll" || s == "LLL") return Algorithm::lll;
  if (s == "bkz" || s == "BKZ") return Algorithm::bkz;
  throw ConfigError("unknown reduction algorithm '" + s + "'");
}

struct ReductionConfig {
  Algorithm algorithm = Algorithm::lll;
  double delta = 0.99;
  double eta = 0.501;
  int beta = 10;
  int max_tours = 8;
  /// Skip the floating-point pass and run the integral algorithm only.
  bool exact_only = false;

  void validate(std::size_t dim) const {
    if (!(delta > 0.25 && delta <= 1.0)) throw ConfigError("delta must lie in (1/4, 1]");
    if (!(eta >= 0.5 && eta < std::sqrt(delta))) throw ConfigError("eta must lie in [1/2, sqrt(delta))");
    if (algorithm == Algorithm::bkz) {
      if (beta < 2 || static_cast<std::size_t>(beta) > dim) throw ConfigError("beta must lie in [2, dim]");
      if (max_tours < 1) throw ConfigError("max_tours must be positive");
    }
  }
};

/// Output of a reduction. `basis` is in reduction order (the order the
/// Lovasz condition refers to); `order` lists its rows by ascending norm with
/// ties broken lexicographically.
struct ReducedBasis {
  IntMatrix basis;
  IntMatrix transform;  // basis = transform * input
  std::vector<std::size_t> order;
  int tours = 0;

  std::size_t size() const noexcept { return basis.rows(); }
  /// i-th shortest row.
  IntVector sorted_row(std::size_t i) const { return basis.row_vector(order.at(i)); }
  Int sorted_norm2(std::size_t i) const { return norm2(basis.row(order.at(i))); }
  IntMatrix sorted_rows() const {
    IntMatrix m(basis.rows(), basis.cols());
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t j = 0; j < basis.cols(); ++j) m(i, j) = basis(order[i], j);
    return m;
  }
};

inline std::vector<std::size_t> norm_order(const IntMatrix& b) {
  std::vector<std::size_t> idx(b.rows());
  std::vector<Int> n2(b.rows());
  for (std::size_t i = 0; i < b.rows(); ++i) {
    idx[i] = i;
    n2[i] = norm2(b.row(i));
  }
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    if (n2[x] != n2[y]) return n2[x] < n2[y];
    auto rx = b.row(x), ry = b.row(y);
    return std::lexicographical_compare(rx.begin(), rx.end(), ry.begin(), ry.end());
  });
  return idx;
}

/// Decimal parameter as an exact rational (nine significant decimals).
inline mpq_class to_rational(double x) {
  mpq_class r(static_cast<long>(std::llround(x * 1e9)), 1000000000L);
  r.canonicalize();
  return r;
}

namespace detail {

inline void row_axpy(IntMatrix& m, std::size_t dst, std::size_t src, Int factor) {
  if (factor == 0) return;
  auto d = m.row(dst);
  auto s = m.row(src);
  for (std::size_t j = 0; j < d.size(); ++j) d[j] = checked_sub(d[j], checked_mul(factor, s[j]));
}

inline Int to_int(const mpz_class& z) {
  if (!mpz_fits_slong_p(z.get_mpz_t())) throw OverflowError("multiplier does not fit in 64 bits");
  return z.get_si();
}

/// Integral Gram-Schmidt data: d[i] is the Gram determinant of the first i
/// rows (d[0] = 1) and lambda(k, j) = d[j+1] * mu(k, j).
struct IntegralGso {
  std::size_t n = 0;
  std::vector<mpz_class> d;
  std::vector<mpz_class> lam;
  mpz_class& lambda(std::size_t k, std::size_t j) { return lam[k * n + j]; }
  const mpz_class& lambda(std::size_t k, std::size_t j) const { return lam[k * n + j]; }

  explicit IntegralGso(std::size_t rows) : n(rows), d(rows + 1), lam(rows * rows) { d[0] = 1; }

  /// Fills row k from scratch, rows below k already done. Returns false if
  /// row k is dependent on the rows above it.
  bool compute_row(const IntMatrix& b, std::size_t k) {
    mpz_class u;
    for (std::size_t j = 0; j <= k; ++j) {
      u = static_cast<long>(dot(b.row(k), b.row(j)));
      for (std::size_t i = 0; i < j; ++i) {
        u = d[i + 1] * u - lambda(k, i) * lambda(j, i);
        mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), d[i].get_mpz_t());
      }
      if (j < k) lambda(k, j) = u;
      else d[k + 1] = u;
    }
    return d[k + 1] != 0;
  }
};

} // namespace detail

/// Integral LLL (all Gram-Schmidt quantities exact). Output satisfies
/// |mu| <= 1/2 and the Lovasz condition at the given rational delta.
inline void exact_lll(IntMatrix& b, IntMatrix* U, const mpq_class& delta) {
  const std::size_t n = b.rows();
  if (n == 0) return;
  detail::IntegralGso gso(n);
  const mpz_class dnum = delta.get_num(), dden = delta.get_den();
  if (!gso.compute_row(b, 0)) throw RankError("basis rows are linearly dependent");
  std::size_t kmax = 0;
  mpz_class qz, lhs, rhs, B, t;

  auto redi = [&](std::size_t k, std::size_t l) {
    mpz_class& lam = gso.lambda(k, l);
    const mpz_class& dl = gso.d[l + 1];
    if (2 * abs(lam) <= dl) return;
    // nearest integer to lam / dl
    qz = 2 * lam + dl;
    mpz_fdiv_q(qz.get_mpz_t(), qz.get_mpz_t(), mpz_class(2 * dl).get_mpz_t());
    const Int q = detail::to_int(qz);
    detail::row_axpy(b, k, l, q);
    if (U) detail::row_axpy(*U, k, l, q);
    lam -= qz * dl;
    for (std::size_t i = 0; i < l; ++i) gso.lambda(k, i) -= qz * gso.lambda(l, i);
  };

  auto swapi = [&](std::size_t k) {
    b.swap_rows(k, k - 1);
    if (U) U->swap_rows(k, k - 1);
    for (std::size_t j = 0; j + 1 < k; ++j) std::swap(gso.lambda(k, j), gso.lambda(k - 1, j));
    const mpz_class lam = gso.lambda(k, k - 1);
    B = gso.d[k - 1] * gso.d[k + 1] + lam * lam;
    mpz_divexact(B.get_mpz_t(), B.get_mpz_t(), gso.d[k].get_mpz_t());
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      t = gso.lambda(i, k);
      mpz_class& lik = gso.lambda(i, k);
      mpz_class& likm = gso.lambda(i, k - 1);
      lik = gso.d[k + 1] * likm - lam * t;
      mpz_divexact(lik.get_mpz_t(), lik.get_mpz_t(), gso.d[k].get_mpz_t());
      likm = B * t + lam * lik;
      mpz_divexact(likm.get_mpz_t(), likm.get_mpz_t(), gso.d[k + 1].get_mpz_t());
    }
    gso.d[k] = B;
  };

  std::size_t k = 1;
  while (k < n) {
    if (k > kmax) {
      kmax = k;
      if (!gso.compute_row(b, k)) throw RankError("basis rows are linearly dependent");
    }
    redi(k, k - 1);
    const mpz_class& lam = gso.lambda(k, k - 1);
    lhs = dden * (gso.d[k + 1] * gso.d[k - 1] + lam * lam);
    rhs = dnum * gso.d[k] * gso.d[k];
    if (lhs < rhs) {
      swapi(k);
      if (k > 1) --k;
    } else {
      for (std::size_t l = k - 1; l-- > 0;) redi(k, l);
      ++k;
    }
  }
}

namespace detail {

/// Signals that the floating-point pass lost track; the integer basis is still
/// a valid basis of the same lattice.
struct PrecisionLoss {};

/// Floating-point Gram-Schmidt recomputed from the exact integer Gram matrix.
struct FloatGso {
  std::size_t n = 0;
  std::vector<double> mu, r;
  explicit FloatGso(std::size_t rows) : n(rows), mu(rows * rows), r(rows * rows) {}
  double& MU(std::size_t i, std::size_t j) { return mu[i * n + j]; }
  double& R(std::size_t i, std::size_t j) { return r[i * n + j]; }

  void compute_row(const std::vector<Int>& gram, std::size_t k) {
    for (std::size_t j = 0; j <= k; ++j) {
      double s = static_cast<double>(gram[k * n + j]);
      for (std::size_t l = 0; l < j; ++l) s -= MU(j, l) * R(k, l);
      R(k, j) = s;
      if (j < k) MU(k, j) = s / R(j, j);
    }
    if (!(R(k, k) > 0)) throw PrecisionLoss{};
  }
};

inline void refresh_gram(const IntMatrix& b, std::vector<Int>& gram, std::size_t k) {
  const std::size_t n = b.rows();
  for (std::size_t j = 0; j < n; ++j) {
    const Int g = dot(b.row(k), b.row(j));
    gram[k * n + j] = g;
    gram[j * n + k] = g;
  }
}

inline void swap_gram(std::vector<Int>& gram, std::size_t n, std::size_t a, std::size_t c) {
  for (std::size_t j = 0; j < n; ++j) std::swap(gram[a * n + j], gram[c * n + j]);
  for (std::size_t j = 0; j < n; ++j) std::swap(gram[j * n + a], gram[j * n + c]);
}

/// Schnorr-Euchner style LLL in double precision with lazy size reduction
/// against the exact Gram matrix.
inline void float_lll(IntMatrix& b, IntMatrix* U, double delta, double eta) {
  const std::size_t n = b.rows();
  if (n < 2) return;
  std::vector<Int> gram(n * n);
  for (std::size_t i = 0; i < n; ++i) refresh_gram(b, gram, i);
  FloatGso gso(n);
  gso.compute_row(gram, 0);
  const std::size_t max_iterations = 2000000 + 200 * n * n * n;
  std::size_t iterations = 0;
  std::size_t k = 1;
  while (k < n) {
    if (++iterations > max_iterations) throw PrecisionLoss{};
    for (int pass = 0;; ++pass) {
      if (pass > 64) throw PrecisionLoss{};
      gso.compute_row(gram, k);
      double worst = 0;
      for (std::size_t j = 0; j < k; ++j) worst = std::max(worst, std::fabs(gso.MU(k, j)));
      if (worst <= eta) break;
      for (std::size_t j = k; j-- > 0;) {
        const double x = std::nearbyint(gso.MU(k, j));
        if (x == 0) continue;
        if (std::fabs(x) > 9.0e15) throw PrecisionLoss{};
        const Int xi = static_cast<Int>(x);
        row_axpy(b, k, j, xi);
        if (U) row_axpy(*U, k, j, xi);
        for (std::size_t l = 0; l < j; ++l) gso.MU(k, l) -= x * gso.MU(j, l);
        gso.MU(k, j) -= x;
      }
      refresh_gram(b, gram, k);
    }
    const double mu = gso.MU(k, k - 1);
    const double rprev = gso.R(k - 1, k - 1);
    if (delta * rprev > gso.R(k, k) + mu * mu * rprev) {
      b.swap_rows(k, k - 1);
      if (U) U->swap_rows(k, k - 1);
      swap_gram(gram, n, k, k - 1);
      if (k == 1) gso.compute_row(gram, 0);
      else --k;
    } else {
      ++k;
    }
  }
}

} // namespace detail

inline void validate_basis_shape(const IntMatrix& b) {
  if (b.rows() == 0) throw RankError("empty basis");
  if (b.rows() > b.cols()) throw RankError("more rows than columns: rows are linearly dependent");
}

/// LLL reduction. A double-precision pass does the bulk of the work; the
/// integral algorithm then runs on its output, so the result is certified
/// exactly (|mu| <= 1/2 <= eta, Lovasz at delta).
inline ReducedBasis lll_reduce(const IntMatrix& input, const ReductionConfig& cfg = {}) {
  cfg.validate(input.rows());
  validate_basis_shape(input);
  ReducedBasis out{input, IntMatrix::identity(input.rows()), {}, 0};
  if (!cfg.exact_only) {
    try {
      detail::float_lll(out.basis, &out.transform, cfg.delta, cfg.eta);
    } catch (const detail::PrecisionLoss&) {
      // fall through to the exact pass from the current (still valid) basis
    }
  }
  exact_lll(out.basis, &out.transform, to_rational(cfg.delta));
  out.order = norm_order(out.basis);
  return out;
}

inline ReducedBasis lll_reduce(const IntegerLattice& lat, const ReductionConfig& cfg = {}) {
  return lll_reduce(lat.basis, cfg);
}

struct LllCheck {
  bool size_reduced = true;
  bool lovasz = true;
  double max_abs_mu = 0;
  bool ok() const { return size_reduced && lovasz; }
};

/// Exact post-hoc check of the LLL conditions with rational Gram-Schmidt data.
inline LllCheck check_lll(const IntMatrix& b, double delta, double eta) {
  const std::size_t n = b.rows();
  detail::IntegralGso gso(n);
  for (std::size_t k = 0; k < n; ++k)
    if (!gso.compute_row(b, k)) throw RankError("basis rows are linearly dependent");
  const mpq_class d = to_rational(delta), e = to_rational(eta);
  LllCheck res;
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      const mpq_class mu(gso.lambda(k, j), gso.d[j + 1]);
      const mpq_class amu = abs(mu);
      res.max_abs_mu = std::max(res.max_abs_mu, amu.get_d());
      if (amu > e) res.size_reduced = false;
    }
    const mpz_class& lam = gso.lambda(k, k - 1);
    // delta * B_{k-1} <= B_k + mu^2 B_{k-1}, scaled by d_k d_{k-1}
    if (d * mpq_class(gso.d[k] * gso.d[k]) > mpq_class(gso.d[k + 1] * gso.d[k - 1] + lam * lam)) res.lovasz = false;
  }
  return res;
}

/// det(B B^T), exact.
inline mpz_class gram_determinant(const IntMatrix& b) {
  detail::IntegralGso gso(b.rows());
  for (std::size_t k = 0; k < b.rows(); ++k)
    if (!gso.compute_row(b, k)) return 0;
  return gso.d[b.rows()];
}

} // namespace grntru
