#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "grntru/errors.hpp"

namespace grntru {

enum class GroupKind { dihedral, cyclic };

/// A finite group with a fixed element order and a precomputed
/// multiplication table.
///
/// Dihedral D_N (order 2N) lists its elements as
/// 1, x, ..., x^{N-1}, y, yx, ..., yx^{N-1}; index i < N is x^i and
/// index N + i is y x^i. Cyclic C_n lists x^0, ..., x^{n-1}.
///
/// Copies share the tables, so passing a GroupSpec by value is cheap.
class GroupSpec {
public:
  static GroupSpec dihedral(int N) {
    if (N < 1) throw ParameterError("dihedral group needs N >= 1");
    return GroupSpec(GroupKind::dihedral, N);
  }
  static GroupSpec cyclic(int n) {
    if (n < 1) throw ParameterError("cyclic group needs n >= 1");
    return GroupSpec(GroupKind::cyclic, n);
  }

  GroupKind kind() const noexcept { return kind_; }
  bool is_dihedral() const noexcept { return kind_ == GroupKind::dihedral; }
  /// N for D_N, n for C_n.
  int parameter() const noexcept { return param_; }
  std::size_t order() const noexcept { return tables_->order; }

  /// Index of g_a * g_b.
  std::size_t mul(std::size_t a, std::size_t b) const { return tables_->mul[a * order() + b]; }
  /// Index of g_a^{-1} * g_b (the Hurley matrix of the group).
  std::size_t inv_mul(std::size_t a, std::size_t b) const { return tables_->inv_mul[a * order() + b]; }
  std::size_t inverse(std::size_t a) const { return tables_->inverse[a]; }

  std::string name() const {
    return (is_dihedral() ? "D" : "C") + std::to_string(param_);
  }

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
    return a.kind_ == b.kind_ && a.param_ == b.param_;
  }

private:
  struct Tables {
    std::size_t order = 0;
    std::vector<std::uint32_t> mul;
    std::vector<std::uint32_t> inv_mul;
    std::vector<std::uint32_t> inverse;
  };

  GroupSpec(GroupKind kind, int param) : kind_(kind), param_(param), tables_(build(kind, param)) {}

  static std::shared_ptr<const Tables> build(GroupKind kind, int param) {
    auto t = std::make_shared<Tables>();
    const std::size_t n = static_cast<std::size_t>(param);
    t->order = kind == GroupKind::dihedral ? 2 * n : n;
    const std::size_t ord = t->order;
    t->mul.resize(ord * ord);
    auto md = [n](long e) { return static_cast<std::size_t>(((e % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n)); };
    for (std::size_t a = 0; a < ord; ++a) {
      for (std::size_t b = 0; b < ord; ++b) {
        std::size_t r;
        if (kind == GroupKind::cyclic) {
          r = (a + b) % n;
        } else {
          const bool ya = a >= n, yb = b >= n;
          const long i = static_cast<long>(ya ? a - n : a), j = static_cast<long>(yb ? b - n : b);
          if (!ya && !yb) r = md(i + j);            // x^i x^j = x^{i+j}
          else if (!ya && yb) r = n + md(j - i);    // x^i yx^j = yx^{j-i}
          else if (ya && !yb) r = n + md(i + j);    // yx^i x^j = yx^{i+j}
          else r = md(j - i);                       // yx^i yx^j = x^{j-i}
        }
        t->mul[a * ord + b] = static_cast<std::uint32_t>(r);
      }
    }
    t->inverse.resize(ord);
    for (std::size_t a = 0; a < ord; ++a)
      for (std::size_t b = 0; b < ord; ++b)
        if (t->mul[a * ord + b] == 0) t->inverse[a] = static_cast<std::uint32_t>(b);
    t->inv_mul.resize(ord * ord);
    for (std::size_t a = 0; a < ord; ++a)
      for (std::size_t b = 0; b < ord; ++b) t->inv_mul[a * ord + b] = t->mul[t->inverse[a] * ord + b];
    return t;
  }

  GroupKind kind_;
  int param_;
  std::shared_ptr<const Tables> tables_;
};

} // namespace grntru
