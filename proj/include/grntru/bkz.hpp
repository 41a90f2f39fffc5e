#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "grntru/enumeration.hpp"
#include "grntru/reduction.hpp"

namespace grntru {

namespace detail {

/// Replaces rows of [begin, end) by an equivalent set whose row at `begin`
/// is sum x[i] * b[begin + i]. Only unimodular row operations are used.
/// Returns false (basis untouched) when x is not primitive.
inline bool insert_combination(IntMatrix& b, IntMatrix& U, std::size_t begin, std::vector<long> x) {
  for (;;) {
    std::size_t piv = x.size();
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      ++nonzero;
      if (piv == x.size() || std::labs(x[i]) < std::labs(x[piv])) piv = i;
    }
    if (piv == x.size()) return false;
    if (nonzero == 1) {
      if (std::labs(x[piv]) != 1) return false;
      if (x[piv] < 0) {
        for (auto& v : b.row(begin + piv)) v = -v;
        for (auto& v : U.row(begin + piv)) v = -v;
      }
      for (std::size_t i = begin + piv; i > begin; --i) {
        b.swap_rows(i, i - 1);
        U.swap_rows(i, i - 1);
      }
      return true;
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (j == piv || x[j] == 0) continue;
      const long q = x[j] / x[piv];
      x[j] -= q * x[piv];
      // b_piv += q b_j keeps the combination unchanged
      row_axpy(b, begin + piv, begin + j, -q);
      row_axpy(U, begin + piv, begin + j, -q);
    }
  }
}

} // namespace detail

/// Plain BKZ: LLL, then tours of block-wise SVP insertion until a tour makes
/// no change or max_tours is reached. Finishes with the exact LLL pass, so
/// the LLL post-conditions hold on the result.
inline ReducedBasis bkz_reduce(const IntMatrix& input, const ReductionConfig& cfg) {
  cfg.validate(input.rows());
  validate_basis_shape(input);
  ReducedBasis out = lll_reduce(input, cfg);
  const std::size_t n = out.basis.rows();
  const std::size_t beta = static_cast<std::size_t>(cfg.beta);
  for (int tour = 0; tour < cfg.max_tours; ++tour) {
    bool changed = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const std::size_t end = std::min(k + beta, n);
      const GsoData g = float_gso(out.basis);
      const double target = cfg.delta * g.r[k];
      double bound = target * (1 - 1e-9);
      std::optional<std::vector<long>> best;
      enumerate_block(g, k, end, bound, [&](const std::vector<long>& x, double l) {
        // ignore the trivial solution b_k itself
        bool trivial = x[0] == 1;
        for (std::size_t i = 1; i < x.size() && trivial; ++i) trivial = x[i] == 0;
        if (trivial) return bound;
        best = x;
        bound = l * (1 - 1e-9);
        return bound;
      });
      if (!best) continue;
      if (!detail::insert_combination(out.basis, out.transform, k, *best)) continue;
      changed = true;
      try {
        detail::float_lll(out.basis, &out.transform, cfg.delta, cfg.eta);
      } catch (const detail::PrecisionLoss&) {
        exact_lll(out.basis, &out.transform, to_rational(cfg.delta));
      }
    }
    out.tours = tour + 1;
    if (!changed) break;
  }
  exact_lll(out.basis, &out.transform, to_rational(cfg.delta));
  out.order = norm_order(out.basis);
  return out;
}

inline ReducedBasis bkz_reduce(const IntegerLattice& lat, const ReductionConfig& cfg) {
  return bkz_reduce(lat.basis, cfg);
}

/// Dispatches on cfg.algorithm.
inline ReducedBasis reduce(const IntMatrix& basis, const ReductionConfig& cfg) {
  return cfg.algorithm == Algorithm::bkz ? bkz_reduce(basis, cfg) : lll_reduce(basis, cfg);
}

inline ReducedBasis reduce(const IntegerLattice& lat, const ReductionConfig& cfg) { return reduce(lat.basis, cfg); }

} // namespace grntru
