#pragma once

// Published toy example (N = 7, p = 3, q = 128, d = 4) and independent
// oracles shared by the test programs.

#include <algorithm>
#include <vector>

#include "grntru.hpp"

namespace toy {

using grntru::GroupRingElement;
using grntru::Int;
using grntru::IntVector;

inline const GroupRingElement f{0, 1, -1, 0, -1, 1, 1, 1, 0, -1, 0, 1, 0, -1};
inline const GroupRingElement g{0, 1, -1, 1, 0, -1, -1, 0, 1, 0, 0, 1, -1, 0};
inline const GroupRingElement h{115, 42, 117, 108, 73, 3, 53, 29, 108, 34, 72, 5, 36, 101};
inline const GroupRingElement m{0, 0, -1, -1, -1, 0, 1, -1, -1, 0, 1, -1, 0, 0};
inline const GroupRingElement r{0, 1, -1, 1, 0, -1, -1, 0, 1, 0, 0, 1, -1, 0};
inline const GroupRingElement c{123, 64, 97, 31, 92, 46, 63, 119, 23, 111, 39, 80, 33, 99};

// keys printed in the walkthrough
inline const IntVector naive_f{-1, 1, 0, 1, -1, -1, 0, 1, -1, 0, 1, 0, -1, 0};
inline const IntVector naive_g{-1, 1, -1, 0, 1, 1, 0, 0, 0, -1, 0, 0, -1, 1};
inline const IntVector k1_f{2, -1, 0, -1, 0, -1, 1, 0, -1, 2, 1, 0, -3, 3};
inline const IntVector k1_g{0, 2, 1, 0, -1, 2, -2, 0, -2, 1, 0, 1, -2, 0};
inline const IntVector k2_f{1, 0, 1, -1, 0, -1, 1, 0, -1, 0, 1, 0, -1, 1};
inline const IntVector k2_g{-1, 0, 1, -1, 1, 0, -1, 1, 0, 0, 1, -1, 0, 0};
inline const IntVector k1_a_lifted{-18, 4, 0, -19, 12, 0, 5, 8, -6, -12, 23, -16, 0, 11};

// pull-back inputs from the walkthrough
inline const IntVector pb_f0{1, -1, 1, 0, 0, -2, 2};
inline const IntVector pb_g0{0, 0, 1, 0, 0, 0, -1};
inline const IntVector pb_f1{1, 1, 1, -2, 0, 0, 0};
inline const IntVector pb_g1{-2, 0, 1, -2, 2, 0, -1};

inline grntru::NtruParams params() { return grntru::derive_params(7); }

inline IntVector join(const IntVector& a, const IntVector& b) {
  IntVector v(a);
  v.insert(v.end(), b.begin(), b.end());
  return v;
}

} // namespace toy

namespace oracle {

using grntru::Int;
using grntru::IntMatrix;
using grntru::IntVector;

inline IntVector random_vector(std::size_t n, Int lo, Int hi, grntru::Rng& rng) {
  IntVector v(n);
  for (auto& x : v) x = lo + static_cast<Int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
  return v;
}

/// D_N acting on Z_N: x^i is v -> v + i and y x^i is v -> -(v + i).
/// The element is recovered from the images of 0 and 1.
struct DihedralPerm {
  int N;
  int index_of(int img0, int img1) const {
    const int diff = ((img1 - img0) % N + N) % N;
    if (diff == 1) return img0;              // x^i with i = img0
    return N + ((N - img0) % N);             // y x^i: image of 0 is -i
  }
  int apply(int e, int v) const {
    if (e < N) return ((v + e) % N + N) % N;
    return ((-(v + (e - N))) % N + N) % N;
  }
  int compose(int a, int b) const { return index_of(apply(a, apply(b, 0)), apply(a, apply(b, 1))); }
};

/// Product in Z[D_N] straight from the permutation model of the group.
inline IntVector dihedral_product(const IntVector& a, const IntVector& b, int N) {
  DihedralPerm P{N};
  IntVector out(2 * N, 0);
  for (int i = 0; i < 2 * N; ++i)
    for (int j = 0; j < 2 * N; ++j) out[P.compose(i, j)] += a[i] * b[j];
  return out;
}

/// Rank over F_p by straightforward elimination on a copy.
inline std::size_t rank_mod(IntMatrix m, Int p) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t piv = rank;
    while (piv < m.rows() && grntru::mod_floor(m(piv, col), p) == 0) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(piv, rank);
    const Int inv = grntru::inverse_mod(grntru::mod_floor(m(rank, col), p), p);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == rank) continue;
      const Int factor = grntru::mod_floor(m(i, col) * inv, p);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = grntru::mod_floor(m(i, j) - factor * m(rank, j), p);
    }
    ++rank;
  }
  return rank;
}

/// Minimum nonzero squared norm over all coefficient vectors in [-box, box]^n.
inline Int brute_force_min_norm2(const IntMatrix& b, Int box) {
  const std::size_t n = b.rows();
  std::vector<Int> x(n, -box);
  Int best = -1;
  for (;;) {
    bool nonzero = false;
    IntVector v(b.cols(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      nonzero = true;
      for (std::size_t j = 0; j < b.cols(); ++j) v[j] += x[i] * b(i, j);
    }
    if (nonzero) {
      const Int n2 = grntru::norm2(v);
      if (best < 0 || n2 < best) best = n2;
    }
    std::size_t k = 0;
    while (k < n && x[k] == box) x[k++] = -box;
    if (k == n) break;
    ++x[k];
  }
  return best;
}

/// Random basis of a q-ary lattice [[I, A], [0, qI]] with A uniform mod q.
inline IntMatrix random_qary(std::size_t half, Int q, grntru::Rng& rng) {
  IntMatrix A(half, half);
  for (std::size_t i = 0; i < half; ++i)
    for (std::size_t j = 0; j < half; ++j) A(i, j) = static_cast<Int>(rng.below(static_cast<std::uint64_t>(q)));
  return grntru::qary_lattice(A, q).basis;
}

/// Every row of `a` is an integer combination of the rows of `b`: solves
/// x b = row exactly with rationals and checks integrality.
inline bool rows_in_span(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = b.rows();
  // b is square and nonsingular here; invert over Q.
  std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) M[i][j] = static_cast<long>(b(i, j));
    M[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && M[piv][col] == 0) ++piv;
    if (piv == n) return false;
    std::swap(M[piv], M[col]);
    const mpq_class inv = 1 / M[col][col];
    for (auto& e : M[col]) e *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || M[i][col] == 0) continue;
      const mpq_class fct = M[i][col];
      for (std::size_t j = 0; j < 2 * n; ++j) M[i][j] -= fct * M[col][j];
    }
  }
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t j = 0; j < n; ++j) {
      mpq_class s = 0;
      for (std::size_t i = 0; i < n; ++i) s += mpq_class(static_cast<long>(a(r, i))) * M[i][n + j];
      if (s.get_den() != 1) return false;
    }
  return true;
}

} // namespace oracle
