#pragma once

// Explicit trace functions with prescribed fibers, and the registry of
// quadratic-extension families with a closed-form description of P_H.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "permtrace/gf_core.hpp"
#include "permtrace/polyfun.hpp"

namespace permtrace {

/// Uniformly distributed trace function over F_{p^n} (p >= 5 prime, n >= 2)
/// whose P_H is {0}. Classes are materialized and audited as a partition
/// before tabulation; a failed audit raises ConstructionInconsistent.
FunctionTable uniform_trivial_ph_table(const FieldCtx& ctx);

/// Two-valued table: 0 on the F_q-span of the first t basis vectors, 1
/// elsewhere. Its P_H has exactly q^t elements.
FunctionTable two_valued_subspace_table(const FieldCtx& ctx, std::uint32_t t);

enum class PredicateKind {
  /// {gamma : predicate(gamma)} equals P_H.
  Exact,
  /// {gamma : predicate(gamma)} is contained in P_H.
  Subset,
};

struct FamilySpec {
  std::string name;
  std::string description;
  PredicateKind kind = PredicateKind::Exact;
  /// Builds H for the given field; `i` is only read by families with an
  /// exponent parameter (x^2 - x^{q^i + 1}).
  std::function<SparsePoly(const FieldCtx&, std::uint32_t i)> h_builder;
  std::function<bool(const FieldCtx&, Elt gamma)> predicate;
  std::function<bool(std::uint32_t p, std::uint32_t k, std::uint32_t n)> applicable;
  bool parameterized = false;
};

const std::vector<FamilySpec>& family_registry();

/// Throws BadParameters for an unknown name.
const FamilySpec& find_family(const std::string& name);

/// Sorted gamma satisfying the family predicate.
std::vector<Elt> family_expected_set(const FieldCtx& ctx, const FamilySpec& spec);

}  // namespace permtrace
