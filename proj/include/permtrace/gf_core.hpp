#pragma once

// Field tower F_p <= F_q <= F_{q^n}, realized as a single extension F_{p^m}
// (m = k*n) with F_q embedded as the fixed points of x -> x^q.
//
// Elements are identified by an integer index: the little-endian base-p digit
// vector of the coefficient representation modulo the defining polynomial.
// Index 0 is zero, index 1 is one, and indices below p are the prime field.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "permtrace/error.hpp"

namespace permtrace {

struct Elt {
  std::uint32_t index = 0;

  constexpr bool is_zero() const noexcept { return index == 0; }
  friend constexpr auto operator<=>(Elt, Elt) = default;
};

inline constexpr std::uint64_t kDefaultFieldCap = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kLogTableLimit = std::uint64_t{1} << 16;

/// Reads PERMTRACE_CAP from the environment, falling back to kDefaultFieldCap.
std::uint64_t configured_field_cap();

bool is_prime(std::uint64_t p);

class FieldCtx {
 public:
  /// Builds F_{p^{k n}} with the lexicographically least monic irreducible
  /// modulus (coefficients compared from the constant term upwards).
  static FieldCtx build(std::uint32_t p, std::uint32_t k, std::uint32_t n,
                        std::uint64_t cap = configured_field_cap());

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t k() const noexcept { return k_; }
  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t m() const noexcept { return k_ * n_; }
  std::uint32_t q() const noexcept { return q_; }
  std::uint32_t size() const noexcept { return size_; }

  /// Coefficients c_0..c_m of the monic modulus, c_m = 1.
  std::span<const std::uint32_t> modulus() const noexcept { return modulus_; }
  /// Sorted indices of the canonical copy of F_q.
  std::span<const Elt> subfield_elems() const noexcept { return subfield_; }
  /// x -> x^q for every element.
  std::span<const Elt> frob_k_table() const noexcept { return frob_q_; }
  bool has_log_tables() const noexcept { return !log_.empty(); }

  Elt zero() const noexcept { return Elt{0}; }
  Elt one() const noexcept { return Elt{1}; }
  Elt elem(std::uint32_t index) const;
  /// Image of the integer v under Z -> F_p.
  Elt from_int(std::int64_t v) const noexcept;
  std::vector<std::uint32_t> digits(Elt x) const;
  Elt from_digits(std::span<const std::uint32_t> digits) const;

  Elt add(Elt a, Elt b) const noexcept;
  Elt sub(Elt a, Elt b) const noexcept;
  Elt neg(Elt a) const noexcept;
  Elt mul(Elt a, Elt b) const noexcept;
  /// Schoolbook polynomial product modulo the modulus; never uses log tables.
  Elt mul_reference(Elt a, Elt b) const noexcept;
  Elt inv(Elt a) const;
  Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
  Elt pow(Elt a, std::uint64_t e) const noexcept;

  Elt frob_q(Elt x) const noexcept { return frob_q_[x.index]; }
  /// x -> x^{p^t}.
  Elt frob_p_power(Elt x, std::uint32_t t) const noexcept;
  Elt rel_trace(Elt x) const noexcept { return trace_[x.index]; }
  bool in_subfield(Elt x) const noexcept { return frob_q_[x.index] == x; }

  /// Least-index non-square of F_q. Throws EvenCharacteristic for p = 2.
  Elt find_nonresidue() const;
  /// Least-index alpha with alpha^2 = find_nonresidue(); requires n = 2.
  Elt quadratic_alpha() const;
  /// Greedy F_q-basis of F_{q^n} over increasing element index.
  std::vector<Elt> subfield_basis() const;
  /// True iff s is a square of F_q (0 included). s must lie in F_q.
  bool is_subfield_square(Elt s) const;

 private:
  FieldCtx() = default;

  void build_log_tables();
  void build_linear_tables();

  std::uint32_t p_ = 0, k_ = 0, n_ = 0, q_ = 0, size_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> pow_p_;  // p^0 .. p^m
  std::vector<Elt> subfield_;
  std::vector<Elt> frob_q_;
  std::vector<Elt> trace_;
  std::vector<std::uint32_t> log_;  // log_[0] unused
  std::vector<Elt> exp_;            // length 2(size-1)
};

/// (p, k) with q = p^k, or nullopt when q is not a prime power.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q);

/// Factorization of n into distinct primes.
std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n);

/// Span of `vectors` over F_q as a membership bitmap of length ctx.size().
std::vector<std::uint8_t> subfield_span(const FieldCtx& ctx, std::span<const Elt> vectors);

/// F_q-linear independence via span cardinality.
bool subfield_independent(const FieldCtx& ctx, std::span<const Elt> vectors);

}  // namespace permtrace
