#pragma once

// JSON serialization of results, the monomial search harness over
// x + gamma Tr(x^k), and the named verification suites behind `verify`.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "permtrace/constructions.hpp"
#include "permtrace/corpus.hpp"
#include "permtrace/gf_core.hpp"
#include "permtrace/pset.hpp"
#include "permtrace/translators.hpp"

namespace permtrace {

using json = nlohmann::json;

/// {p, k, n, modulus: [c_0, ..., c_m]}
json field_spec_json(const FieldCtx& ctx);
json elements_json(const std::vector<Elt>& elems);
json ph_report_json(const FieldCtx& ctx, const std::string& h_label, const PHReport& report);
json translator_space_json(const TranslatorSpace& space);

enum class GammaScope { All, Nonzero };

inline constexpr std::uint64_t kDefaultSearchCap = 512;

struct SearchJob {
  std::uint32_t p = 3, k = 1, n = 2;
  std::uint64_t kmin = 1, kmax = 0;  // kmax = 0 means q^n - 1
  GammaScope gamma_scope = GammaScope::All;
  std::uint64_t cap = kDefaultSearchCap;
  bool force = false;
};

struct SearchRecord {
  std::uint64_t k = 0;
  std::vector<Elt> ph;  // already filtered by the job's gamma scope
  friend bool operator==(const SearchRecord&, const SearchRecord&) = default;
};

/// Validates the job against its cap and exponent range; returns the field.
FieldCtx prepare_search(const SearchJob& job);

/// One record per exponent, in increasing k.
std::vector<SearchRecord> run_search(const SearchJob& job);

/// Splits the exponent range across `workers` threads; merges in k order.
std::vector<SearchRecord> run_search_parallel(const SearchJob& job, unsigned workers);

/// JSON-lines: a header line with the field spec and job, then one line per
/// exponent. Exponents whose P_H is nontrivial carry the full set; the rest
/// get a summary line.
void write_search_jsonl(std::ostream& out, const FieldCtx& ctx, const SearchJob& job,
                        const std::vector<SearchRecord>& records);
void write_search_csv(std::ostream& out, const FieldCtx& ctx, const std::vector<SearchRecord>& records);

struct VerifyResult {
  std::string suite;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::vector<json> lines;

  bool ok() const noexcept { return failures == 0; }
  void record(const std::string& check, bool passed, json detail = json::object());
};

const std::vector<std::string>& verify_suite_names();

/// Runs a named suite. Throws UnknownSuite for anything not in verify_suite_names().
VerifyResult run_verify(const std::string& suite, std::uint64_t seed = configured_seed());

/// Checks one family at one q over F_{q^2} (or F_{q^n} for parameterized
/// families): {family, q, expected, actual, match}.
json verify_family(const FamilySpec& spec, std::uint32_t q, std::uint32_t n = 2, std::uint32_t i = 1);

}  // namespace permtrace
