#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "grntru/reduction.hpp"

namespace grntru {

/// Double-precision Gram-Schmidt data of a basis, from the exact Gram matrix.
struct GsoData {
  std::size_t n = 0;
  std::vector<double> mu;  // n x n, lower triangle
  std::vector<double> r;   // squared norms of the Gram-Schmidt vectors
  double m(std::size_t i, std::size_t j) const { return mu[i * n + j]; }
};

inline GsoData float_gso(const IntMatrix& b) {
  const std::size_t n = b.rows();
  GsoData g{n, std::vector<double>(n * n, 0.0), std::vector<double>(n, 0.0)};
  std::vector<double> rr(n * n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j <= k; ++j) {
      double s = static_cast<double>(dot(b.row(k), b.row(j)));
      for (std::size_t l = 0; l < j; ++l) s -= g.mu[j * n + l] * rr[k * n + l];
      rr[k * n + j] = s;
      if (j < k) g.mu[k * n + j] = s / rr[j * n + j];
    }
    g.r[k] = rr[k * n + k];
    if (!(g.r[k] > 0)) throw RankError("basis rows are linearly dependent");
  }
  return g;
}

/// Depth-first Schnorr-Euchner enumeration of the projected block
/// [begin, end): visits every nonzero coefficient vector x (x[i] for
/// i in [begin, end)) whose projected squared norm is at most `bound`, with
/// the sign fixed so the last nonzero coefficient is positive. The callback
/// receives the coefficients and the projected squared norm and returns the
/// (possibly tightened) new bound.
inline void enumerate_block(const GsoData& g, std::size_t begin, std::size_t end, double bound,
                            const std::function<double(const std::vector<long>&, double)>& visit) {
  if (begin >= end) return;
  const std::size_t len = end - begin;
  std::vector<long> x(len, 0);
  std::vector<double> partial(len + 1, 0.0);
  std::vector<double> center(len, 0.0);
  std::vector<long> step(len, 0);  // zig-zag offsets already tried
  std::vector<int> dir(len, 1);
  std::vector<long> x0(len, 0);

  auto set_center = [&](std::size_t i) {
    double c = 0;
    for (std::size_t j = i + 1; j < len; ++j) c -= static_cast<double>(x[j]) * g.m(begin + j, begin + i);
    center[i] = c;
    x0[i] = std::lround(c);
    dir[i] = (c >= static_cast<double>(x0[i])) ? 1 : -1;
    step[i] = 0;
  };
  auto higher_zero = [&](std::size_t i) {
    for (std::size_t j = i + 1; j < len; ++j)
      if (x[j] != 0) return false;
    return true;
  };
  // candidate number s in zig-zag order around x0: 0, +d, -d, +2d, -2d, ...
  auto candidate = [&](std::size_t i, long s) {
    if (s == 0) return x0[i];
    const long mag = (s + 1) / 2;
    return (s % 2 == 1) ? x0[i] + dir[i] * mag : x0[i] - dir[i] * mag;
  };

  std::size_t i = len - 1;
  set_center(i);
  for (;;) {
    bool descended = false;
    while (true) {
      const long s = step[i]++;
      const long xi = candidate(i, s);
      const bool sym = higher_zero(i);
      if (sym && xi < 0) {
        // all higher coefficients zero: center is 0, candidates alternate
        // sign, so skip the negative side without ending the level
        const double d = static_cast<double>(xi) - center[i];
        if (partial[i + 1] + d * d * g.r[begin + i] > bound) break;
        continue;
      }
      const double d = static_cast<double>(xi) - center[i];
      const double l = partial[i + 1] + d * d * g.r[begin + i];
      if (l > bound) break;
      x[i] = xi;
      partial[i] = l;
      if (i == 0) {
        if (!(sym && xi == 0)) bound = visit(x, l);
        continue;
      }
      --i;
      set_center(i);
      descended = true;
      break;
    }
    if (descended) continue;
    x[i] = 0;
    if (++i == len) return;
  }
}

struct SvpResult {
  IntVector vector;
  IntVector coefficients;  // with respect to the given basis rows
  Int norm2 = 0;
};

/// Shortest nonzero vector of the lattice spanned by the rows of `b` with
/// norm at most `radius`. Among several shortest vectors, each normalised so
/// its first nonzero entry is positive, the lexicographically greatest one is
/// returned (the identity basis yields e_1).
inline SvpResult svp_enumerate(const IntMatrix& b, double radius) {
  validate_basis_shape(b);
  if (!(radius > 0)) throw NotFound("radius must be positive");
  const GsoData g = float_gso(b);
  const std::size_t n = b.rows();
  const double slack = 1e-9;
  double bound = radius * radius * (1 + slack) + slack;
  std::optional<SvpResult> best;

  enumerate_block(g, 0, n, bound, [&](const std::vector<long>& x, double) {
    IntVector v(b.cols(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      auto row = b.row(i);
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = checked_add(v[j], checked_mul(x[i], row[j]));
    }
    const Int n2 = norm2(v);
    if (static_cast<double>(n2) > radius * radius * (1 + slack) + slack) return bound;
    IntVector norm_v = sign_normalized(v);
    const bool flip = norm_v != v;
    IntVector coeff(x.begin(), x.end());
    if (flip)
      for (auto& c : coeff) c = -c;
    if (!best || n2 < best->norm2 || (n2 == best->norm2 && norm_v > best->vector)) {
      best = SvpResult{std::move(norm_v), std::move(coeff), n2};
      bound = static_cast<double>(n2) * (1 + slack) + slack;
    }
    return bound;
  });
  if (!best) throw NotFound("no nonzero lattice vector within the radius");
  return *best;
}

inline SvpResult svp_enumerate(const ReducedBasis& rb, double radius) { return svp_enumerate(rb.basis, radius); }

/// Shortest vector with the radius taken from the shortest basis row.
inline SvpResult svp_enumerate(const IntMatrix& b) {
  Int best = norm2(b.row(0));
  for (std::size_t i = 1; i < b.rows(); ++i) best = std::min(best, norm2(b.row(i)));
  return svp_enumerate(b, std::sqrt(static_cast<double>(best)));
}

} // namespace grntru
