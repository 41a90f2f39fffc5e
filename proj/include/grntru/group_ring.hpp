#pragma once

#include <optional>
#include <span>
#include <vector>

#include "grntru/arith.hpp"
#include "grntru/group.hpp"
#include "grntru/matrix.hpp"

namespace grntru {

/// Element of the group ring ZG: one integer coefficient per group element,
/// indexed in the GroupSpec's element order.
class GroupRingElement {
public:
  GroupRingElement() = default;
  explicit GroupRingElement(IntVector coeffs) : coeffs_(std::move(coeffs)) {}
  GroupRingElement(std::initializer_list<Int> coeffs) : coeffs_(coeffs) {}

  static GroupRingElement zero(const GroupSpec& g) { return GroupRingElement(IntVector(g.order(), 0)); }
  static GroupRingElement one(const GroupSpec& g) {
    IntVector c(g.order(), 0);
    c[0] = 1;
    return GroupRingElement(std::move(c));
  }

  std::size_t size() const noexcept { return coeffs_.size(); }
  const IntVector& coeffs() const noexcept { return coeffs_; }
  Int operator[](std::size_t i) const { return coeffs_[i]; }
  auto begin() const noexcept { return coeffs_.begin(); }
  auto end() const noexcept { return coeffs_.end(); }

  bool is_zero() const noexcept { return grntru::is_zero(coeffs_); }

  friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;

private:
  IntVector coeffs_;
};

namespace detail {
inline void require_same_length(std::size_t a, std::size_t b, const char* op) {
  if (a != b) throw DimensionError(std::string(op) + ": operand lengths differ (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
}
inline void require_group(const GroupRingElement& a, const GroupSpec& g, const char* op) {
  if (a.size() != g.order())
    throw DimensionError(std::string(op) + ": element of length " + std::to_string(a.size()) + " is not over " + g.name());
}
} // namespace detail

inline GroupRingElement gr_add(const GroupRingElement& a, const GroupRingElement& b) {
  detail::require_same_length(a.size(), b.size(), "gr_add");
  IntVector c(a.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = checked_add(a[i], b[i]);
  return GroupRingElement(std::move(c));
}

inline GroupRingElement gr_sub(const GroupRingElement& a, const GroupRingElement& b) {
  detail::require_same_length(a.size(), b.size(), "gr_sub");
  IntVector c(a.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = checked_sub(a[i], b[i]);
  return GroupRingElement(std::move(c));
}

inline GroupRingElement gr_scalar_mul(Int d, const GroupRingElement& a) {
  IntVector c(a.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = checked_mul(d, a[i]);
  return GroupRingElement(std::move(c));
}

/// Coefficient-wise reduction into [0, m).
inline GroupRingElement reduce_mod(const GroupRingElement& a, Int m) {
  IntVector c(a.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod_floor(a[i], m);
  return GroupRingElement(std::move(c));
}

/// Unique representative congruent to a mod m with coefficients in (-m/2, m/2].
inline GroupRingElement centered_lift(const GroupRingElement& a, Int m) {
  if (m <= 0) throw ParameterError("centered_lift needs a positive modulus");
  IntVector c(a.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = centered(a[i], m);
  return GroupRingElement(std::move(c));
}

/// Convolution product: gamma_i = sum over g_h g_k = g_i of alpha_h beta_k.
/// With a modulus the result is reduced into [0, modulus).
inline GroupRingElement gr_mul(const GroupRingElement& a, const GroupRingElement& b, const GroupSpec& g,
                               std::optional<Int> modulus = std::nullopt) {
  detail::require_group(a, g, "gr_mul");
  detail::require_group(b, g, "gr_mul");
  const std::size_t n = g.order();
  std::vector<__int128> acc(n, 0);
  for (std::size_t h = 0; h < n; ++h) {
    if (a[h] == 0) continue;
    for (std::size_t k = 0; k < n; ++k) {
      if (b[k] == 0) continue;
      acc[g.mul(h, k)] += static_cast<__int128>(a[h]) * b[k];
    }
  }
  IntVector c(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (modulus) {
      __int128 r = acc[i] % *modulus;
      if (r < 0) r += *modulus;
      c[i] = static_cast<Int>(r);
    } else {
      c[i] = narrow(acc[i]);
    }
  }
  return GroupRingElement(std::move(c));
}

/// RG-matrix of a: entry (i, j) is the coefficient of g_i^{-1} g_j. The first
/// row is a itself and a*b maps to the matrix product.
inline IntMatrix to_matrix(const GroupRingElement& a, const GroupSpec& g) {
  detail::require_group(a, g, "to_matrix");
  const std::size_t n = g.order();
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a[g.inv_mul(i, j)];
  return m;
}

/// Left rotation by r (right rotation by |r| when r < 0): entry i of the
/// result is a[(i + r) mod n].
inline IntVector rotate(std::span<const Int> a, long r) {
  const long n = static_cast<long>(a.size());
  IntVector out(a.size());
  if (n == 0) return out;
  const long s = ((r % n) + n) % n;
  for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>((i + s) % n)];
  return out;
}

inline IntVector rotate(const IntVector& a, long r) { return rotate(std::span<const Int>(a), r); }

/// Inverse of a modulo a prime p, read off the first row of tau(a)^{-1}.
inline GroupRingElement invert_mod_prime(const GroupRingElement& a, Int p, const GroupSpec& g) {
  if (!is_prime(p)) throw UnsupportedModulus(std::to_string(p) + " is not prime");
  IntMatrix inv = inverse_mod_prime(to_matrix(a, g), p);
  return GroupRingElement(inv.row_vector(0));
}

inline bool is_invertible_mod_prime(const GroupRingElement& a, Int p, const GroupSpec& g) {
  detail::require_group(a, g, "is_invertible_mod_prime");
  return rank_mod_prime(to_matrix(a, g), p) == g.order();
}

/// Inverse of a modulo q = 2^k: invert mod 2, then Newton-lift
/// b <- b * (2 - a * b) until the modulus reaches q.
inline GroupRingElement invert_mod_power_of_two(const GroupRingElement& a, Int q, const GroupSpec& g) {
  if (!is_power_of_two(q) || q < 2) throw UnsupportedModulus(std::to_string(q) + " is not a power of two");
  GroupRingElement b = invert_mod_prime(a, 2, g);
  const GroupRingElement two = gr_scalar_mul(2, GroupRingElement::one(g));
  const GroupRingElement a_q = reduce_mod(a, q);
  for (Int m = 2; m < q;) {
    m = m >= q / m ? q : m * m;
    GroupRingElement ab = gr_mul(a_q, b, g, m);
    b = gr_mul(b, reduce_mod(gr_sub(two, ab), m), g, m);
  }
  return reduce_mod(b, q);
}

/// Dispatches on the modulus: primes and powers of two are supported.
inline GroupRingElement invert_mod(const GroupRingElement& a, Int m, const GroupSpec& g) {
  if (is_prime(m)) return invert_mod_prime(a, m, g);
  if (is_power_of_two(m)) return invert_mod_power_of_two(a, m, g);
  throw UnsupportedModulus("inversion modulo " + std::to_string(m) + " is not supported");
}

inline bool is_invertible_mod(const GroupRingElement& a, Int m, const GroupSpec& g) {
  if (is_prime(m)) return is_invertible_mod_prime(a, m, g);
  // A unit mod 2^k is exactly a unit mod 2.
  if (is_power_of_two(m)) return is_invertible_mod_prime(a, 2, g);
  throw UnsupportedModulus("invertibility modulo " + std::to_string(m) + " is not supported");
}

} // namespace grntru
