#pragma once

// The set P_H of gamma for which x + gamma * Tr(H(x)) permutes F_{q^n},
// computed both by brute force and through the fibers of Tr(H(x)), together
// with the direction set and the cardinality audit.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "permtrace/gf_core.hpp"
#include "permtrace/polyfun.hpp"

namespace permtrace {

/// Fibers I_b of a subfield-valued table, keyed by the value index b.
struct PreimagePartition {
  std::map<std::uint32_t, std::vector<Elt>> classes;

  std::size_t value_count() const noexcept { return classes.size(); }
  std::vector<Elt> value_set() const;
};

PreimagePartition preimage_partition(const FieldCtx& ctx, const FunctionTable& tt);

/// Sorted gamma with gamma_map(tt, gamma) bijective.
std::vector<Elt> ph_bruteforce(const FieldCtx& ctx, const FunctionTable& tt);

enum class Accumulation { EarlyExit, Full };

/// Complement of the union of (I_c - I_b)/(b - c) over distinct values b, c.
std::vector<Elt> ph_directions(const FieldCtx& ctx, const PreimagePartition& part,
                               Accumulation mode = Accumulation::EarlyExit);

inline constexpr std::uint32_t kDirectionPairCap = 1u << 10;

/// |{(f(y) - f(x)) / (y - x) : x != y}|. Quadratic in the field size, so it
/// refuses fields above kDirectionPairCap unless `force` is set.
std::uint64_t direction_set_size(const FieldCtx& ctx, const FunctionTable& tt, bool force = false);

/// The unique u with tt[x] = Tr(u x) for all x, if any.
std::optional<Elt> detect_linearity(const FieldCtx& ctx, const FunctionTable& tt);

struct PHReport {
  std::vector<Elt> ph;
  std::vector<Elt> ph_complement;
  std::map<std::uint32_t, std::uint64_t> partition_sizes;
  std::optional<std::uint64_t> direction_count;
  bool is_constant = false;
  std::optional<Elt> linear_witness;
  bool bound_ok = true;
  bool gap_ok = true;
  /// For nonconstant tables: |ph| = q^n - q^{n-1} exactly when a linear witness exists.
  bool linearity_ok = true;
  /// |ph| >= (q^n + 1)/2 forces a linear witness when q is an odd prime.
  bool large_ph_linear_ok = true;

  bool contains(Elt gamma) const;
  bool all_ok() const noexcept;
};

/// Assembles a PHReport. The direction count is filled in when the field is
/// within kDirectionPairCap (or `force_directions`).
PHReport cardinality_audit(const FieldCtx& ctx, const FunctionTable& tt, bool force_directions = false);

/// Closure of the P_H complement under x -> x^{p^t}. Requires H in F_{p^t}[x].
bool frobenius_closure_check(const FieldCtx& ctx, const SparsePoly& h, std::uint32_t t, const PHReport& report);

/// q^n - q^{n-1}.
std::uint64_t ph_upper_bound(const FieldCtx& ctx);

}  // namespace permtrace
