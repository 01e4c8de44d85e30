#pragma once

// Seeded generators for randomized test corpora. Draws go through
// std::mt19937_64 and plain modular reduction so a seed produces the same
// corpus on every platform.

#include <cstdint>
#include <random>
#include <vector>

#include "permtrace/gf_core.hpp"
#include "permtrace/hermite.hpp"
#include "permtrace/polyfun.hpp"

namespace permtrace {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2025;

/// PERMTRACE_SEED from the environment, else kDefaultSeed.
std::uint64_t configured_seed();

class CorpusRng {
 public:
  explicit CorpusRng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }
  Elt any_element(const FieldCtx& ctx) { return Elt{static_cast<std::uint32_t>(below(ctx.size()))}; }
  Elt subfield_element(const FieldCtx& ctx) { return ctx.subfield_elems()[below(ctx.q())]; }

 private:
  std::mt19937_64 engine_;
};

/// Subfield-valued tables in three rotating flavors (selected by `draw % 3`):
/// uniform entries, entries from a random value subset, and a constant table
/// with a few perturbed points. The mix keeps |P_H| from collapsing to 1.
FunctionTable random_subfield_table(const FieldCtx& ctx, CorpusRng& rng, std::uint64_t draw);

/// Every table F_{q^n} -> F_q in lexicographic order (only for tiny fields).
std::vector<FunctionTable> all_subfield_tables(const FieldCtx& ctx);

/// Decodes `code` as base-q digits into a table (entry i = digit i).
FunctionTable subfield_table_from_code(const FieldCtx& ctx, std::uint64_t code);

SparsePoly random_sparse_poly(const FieldCtx& ctx, CorpusRng& rng, std::size_t terms, bool prime_field_coeffs);

BiPoly random_bipoly(const FieldCtx& ctx, CorpusRng& rng, std::uint32_t max_terms);

/// Pairs (f1, f2) rotating over: unstructured sparse pairs, triangular
/// systems c x1 + g(x2), d x2 + e (bijective by construction), random linear
/// maps, and triangular systems with one coefficient perturbed.
std::pair<BiPoly, BiPoly> random_bipoly_pair(const FieldCtx& ctx, CorpusRng& rng, std::uint64_t draw);

struct CorpusSlice {
  FieldCtx ctx;
  std::vector<FunctionTable> tables;
};

/// The cross-validation corpus: every table F_4 -> F_2, then `per_field`
/// seeded random tables over each of F_8, F_9, F_25, F_27, F_49 (all over
/// their prime field).
std::vector<CorpusSlice> oracle_corpus(std::uint64_t seed, std::size_t per_field = 200);

}  // namespace permtrace
