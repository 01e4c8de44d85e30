#pragma once

// Bivariate polynomials over F_q (living inside an F_{q^2} context) and
// Hermite's criterion for orthogonal pairs (f1, f2).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "permtrace/gf_core.hpp"
#include "permtrace/polyfun.hpp"

namespace permtrace {

/// Dense q x q coefficient grid; at(i, j) is the coefficient of x1^i x2^j.
/// Entries are F_q elements expressed as big-field indices.
class BiPoly {
 public:
  BiPoly() = default;
  explicit BiPoly(std::uint32_t q) : q_(q), coeffs_(std::size_t{q} * q, Elt{0}) {}

  static BiPoly constant(std::uint32_t q, Elt c);
  static BiPoly monomial(std::uint32_t q, std::uint32_t i, std::uint32_t j, Elt c = Elt{1});

  std::uint32_t q() const noexcept { return q_; }
  Elt at(std::uint32_t i, std::uint32_t j) const noexcept { return coeffs_[std::size_t{i} * q_ + j]; }
  Elt& at(std::uint32_t i, std::uint32_t j) noexcept { return coeffs_[std::size_t{i} * q_ + j]; }
  const std::vector<Elt>& coeffs() const noexcept { return coeffs_; }

  friend bool operator==(const BiPoly&, const BiPoly&) = default;

 private:
  std::uint32_t q_ = 0;
  std::vector<Elt> coeffs_;
};

/// Exponent reduction modulo x^q - x: e -> e for e < q, else ((e-1) mod (q-1)) + 1.
std::uint32_t reduce_bivariate_exponent(std::uint32_t e, std::uint32_t q);

Elt bipoly_eval(const FieldCtx& ctx, const BiPoly& f, Elt x1, Elt x2);
BiPoly bipoly_add(const FieldCtx& ctx, const BiPoly& a, const BiPoly& b);
BiPoly bipoly_scale(const FieldCtx& ctx, const BiPoly& a, Elt s);
BiPoly bipoly_mul_reduce(const FieldCtx& ctx, const BiPoly& a, const BiPoly& b);
BiPoly bipoly_pow(const FieldCtx& ctx, const BiPoly& a, std::uint32_t t);

/// Rows separated by ';', entries by ','; row i holds the x1^i coefficients.
BiPoly parse_grid(const FieldCtx& ctx, std::string_view text);
std::string format_grid(const BiPoly& f);

/// Coordinates of ft in the basis {1, alpha}, alpha^2 = the least non-residue:
/// ft[x1 + x2 alpha] = f1(x1, x2) + f2(x1, x2) alpha.
std::pair<BiPoly, BiPoly> decompose(const FieldCtx& ctx, const FunctionTable& ft);

/// Inverse of decompose: the big-field table of f1 + f2 alpha.
FunctionTable recompose(const FieldCtx& ctx, const BiPoly& f1, const BiPoly& f2);

/// Coefficient of x1^{q-1} x2^{q-1} in the reduction of f1^t1 f2^t2.
Elt hermite_coefficient(const FieldCtx& ctx, const BiPoly& f1, const BiPoly& f2, std::uint32_t t1,
                        std::uint32_t t2);

struct HermiteVerdict {
  bool orthogonal = false;
  bool condition_i = false;
  /// First admissible (t1, t2) with a nonzero coefficient, in row-major order.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> witness;
};

HermiteVerdict hermite_scan(const FieldCtx& ctx, const BiPoly& f1, const BiPoly& f2);
bool orthogonal_test(const FieldCtx& ctx, const BiPoly& f1, const BiPoly& f2);

}  // namespace permtrace
