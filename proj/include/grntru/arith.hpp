#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "grntru/errors.hpp"

namespace grntru {

using Int = std::int64_t;
using IntVector = std::vector<Int>;

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

inline Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

inline Int narrow(__int128 v) {
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
    throw OverflowError("value does not fit in 64 bits");
  return static_cast<Int>(v);
}

/// Least non-negative residue of a modulo m (m > 0).
inline Int mod_floor(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

/// Representative of a mod m in (-m/2, m/2].
inline Int centered(Int a, Int m) {
  Int r = mod_floor(a, m);
  return 2 * r > m ? r - m : r;
}

inline bool is_power_of_two(Int q) { return q > 0 && (q & (q - 1)) == 0; }

inline bool is_prime(Int p) {
  if (p < 2) return false;
  for (Int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline Int inverse_mod(Int a, Int m) {
  Int t = 0, new_t = 1, r = m, new_r = mod_floor(a, m);
  while (new_r != 0) {
    Int quot = r / new_r;
    t = std::exchange(new_t, t - quot * new_t);
    r = std::exchange(new_r, r - quot * new_r);
  }
  if (r != 1) throw NotInvertible(std::to_string(a) + " has no inverse modulo " + std::to_string(m));
  return mod_floor(t, m);
}

inline Int dot(std::span<const Int> a, std::span<const Int> b) {
  if (a.size() != b.size()) throw DimensionError("dot product of vectors with different lengths");
  __int128 acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += static_cast<__int128>(a[i]) * b[i];
  return narrow(acc);
}

inline Int norm2(std::span<const Int> a) { return dot(a, a); }

inline bool is_zero(std::span<const Int> a) {
  for (Int x : a)
    if (x != 0) return false;
  return true;
}

/// Flips the sign so that the first nonzero entry is positive.
inline IntVector sign_normalized(IntVector v) {
  for (Int x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (Int& y : v) y = -y;
    break;
  }
  return v;
}

} // namespace grntru
