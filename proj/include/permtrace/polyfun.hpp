#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "permtrace/gf_core.hpp"

namespace permtrace {

struct Term {
  std::uint64_t exp = 0;
  Elt coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial in evaluation-reduced form: nonzero exponents are taken
/// modulo q^n - 1 into [1, q^n - 1], duplicates merged, zero terms dropped,
/// exponents strictly increasing.
class SparsePoly {
 public:
  SparsePoly() = default;
  SparsePoly(const FieldCtx& ctx, std::vector<Term> terms);

  static SparsePoly monomial(const FieldCtx& ctx, std::uint64_t exp, Elt coeff = Elt{1});

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Throws BadParameters on the zero polynomial.
  std::uint64_t degree() const;

  friend bool operator==(const SparsePoly&, const SparsePoly&) = default;

 private:
  std::vector<Term> terms_;
};

/// Exponent reduction used by SparsePoly: x^e and x^{reduce(e)} agree on F_{q^n}.
std::uint64_t reduce_exponent(std::uint64_t e, std::uint64_t field_size);

/// `exp:coeff_index` pairs separated by commas, e.g. "2:1,10:6".
SparsePoly parse_poly(const FieldCtx& ctx, std::string_view text);
std::string format_poly(const SparsePoly& poly);

enum class Codomain { BigField, Subfield };

struct FunctionTable {
  Codomain codomain = Codomain::BigField;
  std::vector<Elt> values;

  std::size_t size() const noexcept { return values.size(); }
  Elt operator[](std::size_t i) const noexcept { return values[i]; }
  Elt operator[](Elt x) const noexcept { return values[x.index]; }
  friend bool operator==(const FunctionTable&, const FunctionTable&) = default;
};

/// Validates length and, for subfield tables, membership of every entry.
void check_table(const FieldCtx& ctx, const FunctionTable& table);

/// Wraps raw indices as a subfield-valued table (validated).
FunctionTable make_subfield_table(const FieldCtx& ctx, std::vector<Elt> values);

Elt eval_poly(const FieldCtx& ctx, const SparsePoly& poly, Elt x);
FunctionTable tabulate(const FieldCtx& ctx, const SparsePoly& poly);

/// x -> Tr(H(x)).
FunctionTable trace_table(const FieldCtx& ctx, const SparsePoly& h);

/// x -> x + gamma * tt[x].
FunctionTable gamma_map(const FieldCtx& ctx, const FunctionTable& tt, Elt gamma);

/// Bitmap occupancy test; `scratch` lets hot loops reuse one buffer.
bool is_permutation(const FieldCtx& ctx, const FunctionTable& table);
bool is_permutation(std::span<const Elt> values, std::vector<std::uint8_t>& scratch);

inline constexpr std::uint32_t kInterpolationCap = 1u << 12;

/// Unique reduced polynomial of degree < q^n matching the table.
SparsePoly interpolate(const FieldCtx& ctx, const FunctionTable& table);

/// True iff every coefficient lies in F_{p^t}; t must divide m.
bool coeffs_in_subfield(const FieldCtx& ctx, const SparsePoly& poly, std::uint32_t t);

}  // namespace permtrace
