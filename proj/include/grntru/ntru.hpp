#pragma once

#include <cmath>
#include <numeric>
#include <string>

#include "grntru/group_ring.hpp"
#include "grntru/rng.hpp"

namespace grntru {

struct NtruParams {
  int N = 0;  // parameter of the group: half the order for D_N, the order for C_n
  Int p = 3;
  Int q = 0;
  int d = 0;
  GroupSpec group = GroupSpec::dihedral(1);

  std::size_t n() const { return group.order(); }
  /// Norm of any (f, g) with f in P(d+1, d) and g in P(d, d).
  double key_norm() const { return std::sqrt(static_cast<double>(4 * d + 1)); }
};

inline NtruParams make_params(const GroupSpec& group, Int p, Int q, int d) {
  return NtruParams{group.parameter(), p, q, d, group};
}

/// Throws ParameterError naming the first violated constraint.
inline void validate_params(const NtruParams& prm) {
  const Int n = static_cast<Int>(prm.n());
  if (!is_prime(prm.p)) throw ParameterError("p = " + std::to_string(prm.p) + " is not prime");
  if (prm.d < 1) throw ParameterError("d must be positive");
  if (prm.q <= prm.p) throw ParameterError("q must exceed p");
  if (std::gcd(prm.p, prm.q) != 1) throw ParameterError("gcd(p, q) != 1");
  if (2 * prm.d + 1 > n)
    throw ParameterError("2d+1 = " + std::to_string(2 * prm.d + 1) + " exceeds group order " + std::to_string(n));
  const Int bound = (6 * static_cast<Int>(prm.d) + 1) * prm.p;
  if (prm.q <= bound)
    throw ParameterError("q = " + std::to_string(prm.q) + " <= (6d+1)p = " + std::to_string(bound));
}

/// Experiment parameters over any group: p = 3, d = floor(order/3),
/// q the least power of two with q > (6d+1)p.
inline NtruParams derive_params(const GroupSpec& group) {
  if (group.parameter() < 3) throw ParameterError("group parameter must be at least 3");
  const int d = static_cast<int>(group.order() / 3);
  const Int p = 3;
  Int q = 2;
  while (q <= (6 * static_cast<Int>(d) + 1) * p) q *= 2;
  return make_params(group, p, q, d);
}

/// Parameters for D_N: d = floor(2N/3).
inline NtruParams derive_params(int N) {
  return derive_params(GroupSpec::dihedral(N));
}

/// Uniform element of P(t1, t2): exactly t1 ones, t2 minus-ones, rest zero.
inline GroupRingElement sample_ternary(std::size_t t1, std::size_t t2, std::size_t n, Rng& rng) {
  if (t1 + t2 > n) throw ParameterError("t1 + t2 exceeds the vector length");
  IntVector v(n, 0);
  for (std::size_t i = 0; i < t1; ++i) v[i] = 1;
  for (std::size_t i = t1; i < t1 + t2; ++i) v[i] = -1;
  for (std::size_t i = n; i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
  return GroupRingElement(std::move(v));
}

/// Uniform over {-1, 0, 1}^n, the centered lifts of Z_3 G.
inline GroupRingElement sample_message(std::size_t n, Rng& rng, Int p = 3) {
  IntVector v(n);
  for (auto& x : v) x = centered(static_cast<Int>(rng.below(static_cast<std::uint64_t>(p))), p);
  return GroupRingElement(std::move(v));
}

struct KeyPair {
  GroupRingElement f;
  GroupRingElement g;
  GroupRingElement f_p;
  GroupRingElement f_q;
  GroupRingElement h;
};

struct Ciphertext {
  GroupRingElement c;
  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

/// Builds the key pair for given private (f, g). Throws NotInvertible if f is
/// not a unit mod p or mod q.
inline KeyPair keypair_from(const GroupRingElement& f, const GroupRingElement& g, const NtruParams& prm) {
  detail::require_group(f, prm.group, "keypair_from");
  detail::require_group(g, prm.group, "keypair_from");
  KeyPair k{f, g, invert_mod(f, prm.p, prm.group), invert_mod(f, prm.q, prm.group), {}};
  k.h = gr_mul(k.f_q, reduce_mod(g, prm.q), prm.group, prm.q);
  return k;
}

inline KeyPair keygen(const NtruParams& prm, Rng& rng, int max_attempts = 1000) {
  validate_params(prm);
  const std::size_t n = prm.n();
  const auto d = static_cast<std::size_t>(prm.d);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    GroupRingElement f = sample_ternary(d + 1, d, n, rng);
    if (!is_invertible_mod(f, prm.p, prm.group) || !is_invertible_mod(f, prm.q, prm.group)) continue;
    GroupRingElement g = sample_ternary(d, d, n, rng);
    return keypair_from(f, g, prm);
  }
  throw KeygenExhausted("no invertible f after " + std::to_string(max_attempts) + " attempts");
}

/// c = p h*r + m (mod q).
inline Ciphertext encrypt(const GroupRingElement& h, const GroupRingElement& m, const GroupRingElement& r,
                          const NtruParams& prm) {
  detail::require_group(m, prm.group, "encrypt");
  detail::require_group(r, prm.group, "encrypt");
  for (Int x : m)
    if (centered(x, prm.p) != x)
      throw MessageRangeError("message coefficient " + std::to_string(x) + " is not a centered residue mod p");
  GroupRingElement hr = gr_mul(h, r, prm.group, prm.q);
  return {reduce_mod(gr_add(gr_scalar_mul(prm.p, hr), m), prm.q)};
}

/// Decrypts with any (f, f_p) pair, f_p the inverse of f mod p.
inline GroupRingElement decrypt_with(const GroupRingElement& f, const GroupRingElement& f_p, const Ciphertext& ct,
                                     const NtruParams& prm) {
  GroupRingElement a = centered_lift(gr_mul(f, ct.c, prm.group, prm.q), prm.q);
  return centered_lift(gr_mul(f_p, a, prm.group, prm.p), prm.p);
}

inline GroupRingElement decrypt(const KeyPair& sk, const Ciphertext& ct, const NtruParams& prm) {
  return decrypt_with(sk.f, sk.f_p, ct, prm);
}

} // namespace grntru
