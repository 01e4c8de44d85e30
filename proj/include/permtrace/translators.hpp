#pragma once

// Linear translators of f = Tr(H(x)) given as a subfield-valued table.
// alpha != 0 is an a-translator when f(x + u alpha) - f(x) = u a for all x
// in F_{q^n} and u in F_q.

#include <optional>
#include <utility>
#include <vector>

#include "permtrace/gf_core.hpp"
#include "permtrace/polyfun.hpp"
#include "permtrace/pset.hpp"

namespace permtrace {

struct Translator {
  Elt alpha;
  Elt constant;
  friend bool operator==(const Translator&, const Translator&) = default;
};

struct TranslatorSpace {
  /// Every nonzero translator, in increasing alpha order.
  std::vector<Translator> members;
  /// Greedy F_q-basis of members (increasing index).
  std::vector<Translator> basis;
  std::size_t dim = 0;
  /// Position in `basis` of the first vector with a nonzero constant, if any.
  std::optional<std::size_t> pivot;
  /// beta_i = alpha_pivot b_i - alpha_i b_pivot for i != pivot when a pivot
  /// exists; otherwise the basis vectors themselves.
  std::vector<Elt> lambda0_basis;
};

/// The constant a of alpha, or nullopt if alpha is not a translator.
std::optional<Elt> translator_constant(const FieldCtx& ctx, const FunctionTable& tt, Elt alpha);

TranslatorSpace translator_space(const FieldCtx& ctx, const FunctionTable& tt);

/// alpha F_q in P_H  <=>  alpha is a 0-translator, for every alpha != 0.
bool verify_zero_translator_lines(const FieldCtx& ctx, const FunctionTable& tt, const PHReport& report);

/// For every b-translator alpha with b != 0: either alpha F_q hits q distinct
/// fibers and P_H meets alpha F_q in everything except -alpha/b, or it does not
/// and alpha F_q meets P_H only in 0.
bool verify_nonzero_translator_lines(const FieldCtx& ctx, const FunctionTable& tt, const PHReport& report);

/// Checks the 0-translator hyperplane Lambda_0 and the coset basis
/// {alpha, alpha + beta_2, ...}. Vacuously true without a nonzero constant.
bool verify_translator_basis(const FieldCtx& ctx, const TranslatorSpace& space, const FunctionTable& tt);

}  // namespace permtrace
