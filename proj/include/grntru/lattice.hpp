#pragma once

#include <gmpxx.h>

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "grntru/group_ring.hpp"
#include "grntru/ntru.hpp"

namespace grntru {

/// Row basis of a full-rank integer lattice. Lattices built here all have the
/// q-ary shape [[I, H], [0, qI]].
struct IntegerLattice {
  IntMatrix basis;
  Int q = 0;

  std::size_t dim() const noexcept { return basis.rows(); }
  /// Right upper block H of a q-ary basis.
  IntMatrix right_block() const {
    const std::size_t h = dim() / 2;
    return basis.block(0, h, h, h);
  }
};

/// (f-part, g-part) of a vector in a q-ary lattice.
struct LatticeVectorPair {
  IntVector f;
  IntVector g;

  IntVector joined() const {
    IntVector v(f);
    v.insert(v.end(), g.begin(), g.end());
    return v;
  }
  static LatticeVectorPair split(std::span<const Int> v) {
    if (v.size() % 2) throw DimensionError("vector of odd length cannot be split into (f, g)");
    const std::size_t h = v.size() / 2;
    return {IntVector(v.begin(), v.begin() + static_cast<long>(h)), IntVector(v.begin() + static_cast<long>(h), v.end())};
  }
};

inline IntVector concat(std::span<const Int> a, std::span<const Int> b) {
  IntVector v(a.begin(), a.end());
  v.insert(v.end(), b.begin(), b.end());
  return v;
}

inline IntVector slice(std::span<const Int> v, std::size_t from, std::size_t len) {
  return IntVector(v.begin() + static_cast<long>(from), v.begin() + static_cast<long>(from + len));
}

/// [[I_n, H], [0, q I_n]].
inline IntegerLattice qary_lattice(const IntMatrix& right_block, Int q) {
  if (!right_block.square()) throw DimensionError("q-ary right block must be square");
  const std::size_t n = right_block.rows();
  IntMatrix b(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    b(i, i) = 1;
    b(n + i, n + i) = q;
  }
  b.set_block(0, n, right_block);
  return {std::move(b), q};
}

/// NTRU lattice L_h spanned by [[I, tau(h)], [0, qI]], h reduced into [0, q).
inline IntegerLattice build_ntru_lattice(const GroupRingElement& h, const NtruParams& prm) {
  return qary_lattice(to_matrix(reduce_mod(h, prm.q), prm.group), prm.q);
}

struct KeyHalves {
  IntVector h0;
  IntVector h1;
};

/// Coefficients on 1, x, ..., x^{N-1} and on y, yx, ..., yx^{N-1}.
inline KeyHalves split_public_key(const GroupRingElement& h, const GroupSpec& g) {
  if (!g.is_dihedral()) throw UnsupportedGroup("split_public_key needs a dihedral group, got " + g.name());
  detail::require_group(h, g, "split_public_key");
  const auto N = static_cast<std::size_t>(g.parameter());
  return {slice(h.coeffs(), 0, N), slice(h.coeffs(), N, N)};
}

/// Row i is v rotated right by i: entry (i, j) = v[(j - i) mod N].
inline IntMatrix circulant(std::span<const Int> v) {
  const std::size_t n = v.size();
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v[(j + n - i) % n];
  return m;
}

/// Row i is v rotated left by i: entry (i, j) = v[(i + j) mod N].
inline IntMatrix reverse_circulant(std::span<const Int> v) {
  const std::size_t n = v.size();
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v[(i + j) % n];
  return m;
}

struct Sublattices {
  IntegerLattice sum;   // right block H0 + H1
  IntegerLattice diff;  // right block H0 - H1
};

/// The two 2N-dimensional lattices L_{h0+h1} and L_{h0-h1}. Right blocks are
/// kept unreduced, so entries may exceed q or be negative.
inline Sublattices build_sublattices(std::span<const Int> h0, std::span<const Int> h1, Int q) {
  if (h0.size() != h1.size()) throw DimensionError("h0 and h1 must have equal length");
  const IntMatrix H0 = circulant(h0), H1 = reverse_circulant(h1);
  return {qary_lattice(H0 + H1, q), qary_lattice(H0 - H1, q)};
}

inline Sublattices build_sublattices(const KeyHalves& halves, Int q) { return build_sublattices(halves.h0, halves.h1, q); }

struct BlockDiagonalization {
  IntMatrix conjugator;  // [[I, I], [I, -I]]
  IntMatrix diagonal;    // diag(H0 + H1, H0 - H1)
  IntMatrix sum_block;
  IntMatrix diff_block;
};

/// For H = [[H0, H1], [H1, H0]] returns S = [[I, I], [I, -I]] and
/// D = diag(H0 + H1, H0 - H1), so that S H = D S and S H S = 2 D over Z.
inline BlockDiagonalization block_diagonalize(const IntMatrix& H) {
  if (!H.square() || H.rows() % 2) throw StructureError("matrix is not square of even order");
  const std::size_t n = H.rows() / 2;
  const IntMatrix H0 = H.block(0, 0, n, n), H1 = H.block(0, n, n, n);
  if (H.block(n, 0, n, n) != H1 || H.block(n, n, n, n) != H0)
    throw StructureError("matrix is not of the form [[A, B], [B, A]]");
  BlockDiagonalization out;
  out.conjugator = IntMatrix(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    out.conjugator(i, i) = 1;
    out.conjugator(i, n + i) = 1;
    out.conjugator(n + i, i) = 1;
    out.conjugator(n + i, n + i) = -1;
  }
  out.sum_block = H0 + H1;
  out.diff_block = H0 - H1;
  out.diagonal = IntMatrix(2 * n, 2 * n);
  out.diagonal.set_block(0, 0, out.sum_block);
  out.diagonal.set_block(n, n, out.diff_block);
  return out;
}

/// True iff g == f H (mod q).
inline bool membership_check(const LatticeVectorPair& v, const IntMatrix& right_block, Int q) {
  if (v.f.size() != right_block.rows() || v.g.size() != right_block.cols())
    throw DimensionError("vector does not match the lattice dimension");
  const IntVector fh = v.f * right_block;
  for (std::size_t j = 0; j < fh.size(); ++j)
    if (mod_floor(checked_sub(fh[j], v.g[j]), q) != 0) return false;
  return true;
}

/// True iff g == f * h (mod q) in ZG, i.e. (f, g) lies in L_h.
inline bool membership_check(const LatticeVectorPair& v, const GroupRingElement& h, Int q, const GroupSpec& group) {
  if (v.f.size() != group.order() || v.g.size() != group.order())
    throw DimensionError("vector does not match the group order");
  const GroupRingElement fh = gr_mul(GroupRingElement(v.f), h, group, q);
  for (std::size_t j = 0; j < fh.size(); ++j)
    if (mod_floor(checked_sub(fh[j], v.g[j]), q) != 0) return false;
  return true;
}

/// Membership in a q-ary lattice given by its basis.
inline bool membership_check(const IntegerLattice& lat, std::span<const Int> v) {
  if (v.size() != lat.dim()) throw DimensionError("vector does not match the lattice dimension");
  return membership_check(LatticeVectorPair::split(v), lat.right_block(), lat.q);
}

/// All (f0^(r), f1^(-r), g0^(r), g1^(-r)) and (f1^(r), f0^(-r), g1^(r), g0^(-r))
/// for -N < r < N, duplicates removed, in first-seen order.
inline std::vector<IntVector> enumerate_rotation_orbit(std::span<const Int> f, std::span<const Int> g) {
  if (f.size() != g.size() || f.size() % 2) throw DimensionError("f and g must be equal-length 2N-vectors");
  const std::size_t N = f.size() / 2;
  const IntVector f0 = slice(f, 0, N), f1 = slice(f, N, N), g0 = slice(g, 0, N), g1 = slice(g, N, N);
  std::vector<IntVector> orbit;
  auto push = [&orbit](IntVector v) {
    for (const auto& w : orbit)
      if (w == v) return;
    orbit.push_back(std::move(v));
  };
  const long n = static_cast<long>(N);
  for (long r = -n + 1; r <= n - 1; ++r) {
    push(concat(concat(rotate(f0, r), rotate(f1, -r)), concat(rotate(g0, r), rotate(g1, -r))));
    push(concat(concat(rotate(f1, r), rotate(f0, -r)), concat(rotate(g1, r), rotate(g0, -r))));
  }
  return orbit;
}

/// (f0' + f1', f0' - f1', g0' + g1', g0' - g1') without a membership check.
inline IntVector pull_back_unchecked(const LatticeVectorPair& v0, const LatticeVectorPair& v1) {
  const std::size_t N = v0.f.size();
  if (v0.g.size() != N || v1.f.size() != N || v1.g.size() != N) throw DimensionError("pull_back operands differ in length");
  IntVector out(4 * N);
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = checked_add(v0.f[i], v1.f[i]);
    out[N + i] = checked_sub(v0.f[i], v1.f[i]);
    out[2 * N + i] = checked_add(v0.g[i], v1.g[i]);
    out[3 * N + i] = checked_sub(v0.g[i], v1.g[i]);
  }
  return out;
}

/// Pull-back of v0 in L_{h0+h1} and v1 in L_{h0-h1} to a vector of L_h.
inline IntVector pull_back(const LatticeVectorPair& v0, const LatticeVectorPair& v1, const Sublattices& subs) {
  if (!membership_check(v0, subs.sum.right_block(), subs.sum.q))
    throw NotInLattice("first operand is not in L_{h0+h1}");
  if (!membership_check(v1, subs.diff.right_block(), subs.diff.q))
    throw NotInLattice("second operand is not in L_{h0-h1}");
  return pull_back_unchecked(v0, v1);
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline mpz_class determinant(const IntMatrix& m) {
  if (!m.square()) throw DimensionError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<mpz_class> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = static_cast<long>(m(i, j));
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && a[piv * n + k] == 0) ++piv;
      if (piv == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i * n + j] = a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j];
        mpz_divexact(a[i * n + j].get_mpz_t(), a[i * n + j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k * n + k];
  }
  return n == 0 ? mpz_class(1) : sign * a[n * n - 1];
}

inline double log_abs(const mpz_class& x) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::numbers::ln2;
}

/// Predicted shortest length sqrt(dim / (2 pi e)) * det^(1/dim).
inline double gaussian_heuristic(std::size_t dim, double det_root) {
  if (dim == 0) throw ParameterError("gaussian_heuristic needs dim >= 1");
  return std::sqrt(static_cast<double>(dim) / (2.0 * std::numbers::pi * std::numbers::e)) * det_root;
}

/// Gaussian heuristic of a concrete basis, from its exact determinant.
inline double gaussian_heuristic(const IntegerLattice& lat) {
  const mpz_class det = determinant(lat.basis);
  if (det == 0) throw RankError("basis is singular");
  return gaussian_heuristic(lat.dim(), std::exp(log_abs(det) / static_cast<double>(lat.dim())));
}

/// sqrt(2qN / (pi e)): L_h over D_N, dimension 4N, determinant q^{2N}.
inline double ntru_lattice_gh_closed_form(int N, Int q) {
  return std::sqrt(2.0 * static_cast<double>(q) * N / (std::numbers::pi * std::numbers::e));
}

/// sqrt(qN / (pi e)): L_{h0 +- h1}, dimension 2N, determinant q^N.
inline double sublattice_gh_closed_form(int N, Int q) {
  return std::sqrt(static_cast<double>(q) * N / (std::numbers::pi * std::numbers::e));
}

/// Plain-text basis: one row per line, entries separated by spaces.
inline void write_matrix(std::ostream& os, const IntMatrix& m) { os << m; }

inline IntMatrix read_matrix(std::istream& is) {
  std::vector<IntVector> rows;
  std::string line;
  while (std::getline(is, line)) {
    for (char& c : line)
      if (c == '[' || c == ']' || c == ',') c = ' ';
    std::istringstream ls(line);
    IntVector row;
    Int x;
    while (ls >> x) row.push_back(x);
    if (!ls.eof()) throw IoError("non-integer entry in matrix text: " + line);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return IntMatrix::from_rows(rows);
}

} // namespace grntru
