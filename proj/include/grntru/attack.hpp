#pragma once

#include <chrono>
#include <cmath>
#include <optional>
#include <string>

#include "grntru/bkz.hpp"
#include "grntru/lattice.hpp"
#include "grntru/ntru.hpp"

namespace grntru {

enum class AttackKind { naive, pullback };

inline std::string to_string(AttackKind k) { return k == AttackKind::naive ? "naive" : "pullback"; }

inline AttackKind parse_attack_kind(const std::string& s) {
  if (s == "naive") return AttackKind::naive;
  if (s == "pullback" || s == "pull-back") return AttackKind::pullback;
  throw ConfigError("unknown attack '" + s + "'");
}

/// Keys are full lattice vectors (f', g') of length 2n, sign-normalized.
struct AttackOutcome {
  AttackKind kind = AttackKind::naive;
  double threshold = 0;
  std::optional<IntVector> k;   // naive attack
  std::optional<IntVector> k1;  // pull-back, short key
  std::optional<IntVector> k2;  // pull-back, ternary key
  std::size_t rows_scanned = 0;
  double time_s = 0;

  bool failure() const { return !k && !k1 && !k2; }
  static double norm(const std::optional<IntVector>& v) {
    return v ? std::sqrt(static_cast<double>(norm2(*v))) : 0.0;
  }
};

/// Success flags as counted in the experiments: k and k1 count when within
/// `multiplier` times the key norm, k2 counts whenever it is returned.
struct AttackSuccess {
  bool k = false;
  bool k1 = false;
  bool k2 = false;
};

inline AttackSuccess evaluate_success(const AttackOutcome& o, double key_norm, double multiplier = 4.0) {
  const double bound2 = multiplier * multiplier * key_norm * key_norm + 1e-9;
  AttackSuccess s;
  s.k = o.k && static_cast<double>(norm2(*o.k)) <= bound2;
  s.k1 = o.k1 && static_cast<double>(norm2(*o.k1)) <= bound2;
  s.k2 = o.k2.has_value();
  return s;
}

namespace detail {

inline bool within(Int n2, double threshold) {
  return static_cast<double>(n2) <= threshold * threshold + 1e-9;
}

inline GroupRingElement f_part(std::span<const Int> v, std::size_t n) {
  return GroupRingElement(IntVector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n)));
}

} // namespace detail

/// Reduce the full lattice L_h and return the shortest row within the
/// threshold whose f-part is a unit of Z_p G.
inline AttackOutcome naive_attack(const GroupRingElement& h, const NtruParams& prm, double threshold,
                                  const ReductionConfig& cfg = {}) {
  const auto start = std::chrono::steady_clock::now();
  AttackOutcome out;
  out.kind = AttackKind::naive;
  out.threshold = threshold;
  const IntegerLattice lat = build_ntru_lattice(h, prm);
  const ReducedBasis rb = reduce(lat, cfg);
  const std::size_t n = prm.n();
  for (std::size_t i = 0; i < rb.size(); ++i) {
    const auto v = rb.basis.row(rb.order[i]);
    if (!detail::within(norm2(v), threshold)) break;
    ++out.rows_scanned;
    if (is_invertible_mod_prime(detail::f_part(v, n), prm.p, prm.group)) {
      out.k = sign_normalized(IntVector(v.begin(), v.end()));
      break;
    }
  }
  out.time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

/// Reduce the two half-dimension sublattices and combine their short rows.
/// k1 is the first pull-back whose f-part is a unit mod p; k2 the first
/// pull-back in {-2,0,2}^{4N} whose half has that property.
inline AttackOutcome pullback_attack(const GroupRingElement& h, const NtruParams& prm, double threshold,
                                     const ReductionConfig& cfg = {}) {
  if (!prm.group.is_dihedral()) throw UnsupportedGroup("pull-back attack needs a dihedral group");
  const auto start = std::chrono::steady_clock::now();
  AttackOutcome out;
  out.kind = AttackKind::pullback;
  out.threshold = threshold;
  const Sublattices subs = build_sublattices(split_public_key(h, prm.group), prm.q);
  const ReducedBasis plus = reduce(subs.sum, cfg);
  const ReducedBasis minus = reduce(subs.diff, cfg);
  const std::size_t n = prm.n();

  bool done = false;
  for (std::size_t i = 0; i < plus.size() && !done; ++i) {
    const auto v = plus.basis.row(plus.order[i]);
    if (!detail::within(norm2(v), threshold)) break;
    const auto v0 = LatticeVectorPair::split(v);
    for (std::size_t j = 0; j < minus.size(); ++j) {
      const auto w = minus.basis.row(minus.order[j]);
      if (!detail::within(norm2(w), threshold)) break;
      ++out.rows_scanned;
      const IntVector k = pull_back_unchecked(v0, LatticeVectorPair::split(w));
      if (!out.k1 && is_invertible_mod_prime(detail::f_part(k, n), prm.p, prm.group)) out.k1 = sign_normalized(k);
      if (!out.k2) {
        bool even = true;
        for (Int x : k) even = even && (x == 0 || x == 2 || x == -2);
        if (even) {
          IntVector half(k.size());
          for (std::size_t t = 0; t < k.size(); ++t) half[t] = k[t] / 2;
          if (is_invertible_mod_prime(detail::f_part(half, n), prm.p, prm.group)) out.k2 = sign_normalized(half);
        }
      }
      if (out.k1 && out.k2) {
        done = true;
        break;
      }
    }
  }
  out.time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

inline AttackOutcome run_attack(AttackKind kind, const GroupRingElement& h, const NtruParams& prm, double threshold,
                                const ReductionConfig& cfg = {}) {
  return kind == AttackKind::naive ? naive_attack(h, prm, threshold, cfg) : pullback_attack(h, prm, threshold, cfg);
}

/// Decrypts `ct` with the candidate key (f-part of `key`).
inline GroupRingElement decrypt_with_key(std::span<const Int> key, const Ciphertext& ct, const NtruParams& prm) {
  const GroupRingElement f = detail::f_part(key, prm.n());
  return decrypt_with(f, invert_mod_prime(f, prm.p, prm.group), ct, prm);
}

/// True iff decryption with (fk, fk^-1 mod p) recovers m for `trials`
/// random messages and blinding elements.
inline bool is_decryption_key(const GroupRingElement& fk, const GroupRingElement& gk, const GroupRingElement& h,
                              const NtruParams& prm, int trials, Rng& rng) {
  detail::require_group(gk, prm.group, "is_decryption_key");
  const GroupRingElement fp = invert_mod_prime(fk, prm.p, prm.group);
  const auto d = static_cast<std::size_t>(prm.d);
  for (int t = 0; t < trials; ++t) {
    const GroupRingElement m = sample_message(prm.n(), rng, prm.p);
    const GroupRingElement r = sample_ternary(d, d, prm.n(), rng);
    if (decrypt_with(fk, fp, encrypt(h, m, r, prm), prm) != m) return false;
  }
  return true;
}

inline bool is_decryption_key(std::span<const Int> key, const GroupRingElement& h, const NtruParams& prm, int trials,
                              Rng& rng) {
  const auto pair = LatticeVectorPair::split(key);
  return is_decryption_key(GroupRingElement(pair.f), GroupRingElement(pair.g), h, prm, trials, rng);
}

} // namespace grntru
