#include "permtrace/report.hpp"

#include <algorithm>
#include <map>
#include <thread>

#include "permtrace/hermite.hpp"

namespace permtrace {

json field_spec_json(const FieldCtx& ctx) {
  return json{{"p", ctx.p()},
              {"k", ctx.k()},
              {"n", ctx.n()},
              {"modulus", std::vector<std::uint32_t>(ctx.modulus().begin(), ctx.modulus().end())}};
}

json elements_json(const std::vector<Elt>& elems) {
  json out = json::array();
  for (Elt e : elems) out.push_back(e.index);
  return out;
}

json ph_report_json(const FieldCtx& ctx, const std::string& h_label, const PHReport& report) {
  json sizes = json::object();
  for (const auto& [b, size] : report.partition_sizes) sizes[std::to_string(b)] = size;
  return json{{"field", field_spec_json(ctx)},
              {"h", h_label},
              {"ph", elements_json(report.ph)},
              {"ph_size", report.ph.size()},
              {"partition_sizes", sizes},
              {"direction_count", report.direction_count ? json(*report.direction_count) : json(nullptr)},
              {"is_constant", report.is_constant},
              {"linear_witness", report.linear_witness ? json(report.linear_witness->index) : json(nullptr)},
              {"bound_ok", report.bound_ok},
              {"gap_ok", report.gap_ok}};
}

json translator_space_json(const TranslatorSpace& space) {
  json basis = json::array();
  for (const auto& t : space.basis) basis.push_back({t.alpha.index, t.constant.index});
  return json{{"dim", space.dim}, {"basis", basis}, {"lambda0", elements_json(space.lambda0_basis)}};
}

// ---------------------------------------------------------------------------
// Search harness

FieldCtx prepare_search(const SearchJob& job) {
  std::uint64_t size = 1;
  for (std::uint32_t i = 0; i < job.k * job.n; ++i) size *= job.p;
  if (size > job.cap && !job.force)
    throw Error(ErrorCode::CapExceeded,
                "q^n = " + std::to_string(size) + " exceeds search cap " + std::to_string(job.cap) + " (use --force)");
  auto ctx = FieldCtx::build(job.p, job.k, job.n);
  const std::uint64_t kmax = job.kmax == 0 ? ctx.size() - 1 : job.kmax;
  if (job.kmin < 1 || kmax > ctx.size() - 1 || job.kmin > kmax)
    throw Error(ErrorCode::BadParameters, "exponent range must lie within [1, q^n - 1]");
  return ctx;
}

namespace {

std::uint64_t resolved_kmax(const FieldCtx& ctx, const SearchJob& job) {
  return job.kmax == 0 ? ctx.size() - 1 : job.kmax;
}

SearchRecord search_one(const FieldCtx& ctx, const SearchJob& job, std::uint64_t k) {
  const auto tt = trace_table(ctx, SparsePoly::monomial(ctx, k));
  auto ph = ph_directions(ctx, preimage_partition(ctx, tt));
  if (job.gamma_scope == GammaScope::Nonzero) std::erase(ph, Elt{0});
  return SearchRecord{k, std::move(ph)};
}

}  // namespace

std::vector<SearchRecord> run_search(const SearchJob& job) {
  const auto ctx = prepare_search(job);
  std::vector<SearchRecord> out;
  for (std::uint64_t k = job.kmin; k <= resolved_kmax(ctx, job); ++k) out.push_back(search_one(ctx, job, k));
  return out;
}

std::vector<SearchRecord> run_search_parallel(const SearchJob& job, unsigned workers) {
  const auto ctx = prepare_search(job);
  const std::uint64_t kmax = resolved_kmax(ctx, job);
  const std::uint64_t total = kmax - job.kmin + 1;
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(total)));
  std::vector<std::vector<SearchRecord>> chunks(workers);
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = job.kmin + total * w / workers;
    const std::uint64_t hi = job.kmin + total * (w + 1) / workers;
    threads.emplace_back([&, w, lo, hi] {
      for (std::uint64_t k = lo; k < hi; ++k) chunks[w].push_back(search_one(ctx, job, k));
    });
  }
  for (auto& t : threads) t.join();
  std::vector<SearchRecord> out;
  for (auto& c : chunks) std::move(c.begin(), c.end(), std::back_inserter(out));
  return out;
}

void write_search_jsonl(std::ostream& out, const FieldCtx& ctx, const SearchJob& job,
                        const std::vector<SearchRecord>& records) {
  json header{{"field", field_spec_json(ctx)},
              {"kmin", job.kmin},
              {"kmax", resolved_kmax(ctx, job)},
              {"gamma_scope", job.gamma_scope == GammaScope::All ? "all" : "nonzero"}};
  out << header.dump() << '\n';
  const std::size_t trivial = job.gamma_scope == GammaScope::All ? 1 : 0;
  for (const auto& r : records) {
    json line{{"k", r.k}, {"ph_size", r.ph.size()}};
    if (r.ph.size() > trivial)
      line["ph"] = elements_json(r.ph);
    else
      line["trivial"] = true;
    out << line.dump() << '\n';
  }
}

void write_search_csv(std::ostream& out, const FieldCtx& ctx, const std::vector<SearchRecord>& records) {
  out << "# field " << field_spec_json(ctx).dump() << '\n' << "k,ph_size\n";
  for (const auto& r : records) out << r.k << ',' << r.ph.size() << '\n';
}

// ---------------------------------------------------------------------------
// Verification suites

void VerifyResult::record(const std::string& check, bool passed, json detail) {
  ++checks;
  if (!passed) ++failures;
  detail["suite"] = suite;
  detail["check"] = check;
  detail["ok"] = passed;
  lines.push_back(std::move(detail));
}

json verify_family(const FamilySpec& spec, std::uint32_t q, std::uint32_t n, std::uint32_t i) {
  const auto pk = prime_power(q);
  if (!pk) throw Error(ErrorCode::BadParameters, std::to_string(q) + " is not a prime power");
  const auto ctx = FieldCtx::build(pk->first, pk->second, n);
  const auto expected = family_expected_set(ctx, spec);
  const auto actual = ph_bruteforce(ctx, trace_table(ctx, spec.h_builder(ctx, i)));
  const bool match = spec.kind == PredicateKind::Exact
                         ? expected == actual
                         : std::includes(actual.begin(), actual.end(), expected.begin(), expected.end());
  json out{{"family", spec.name},
           {"q", q},
           {"n", n},
           {"kind", spec.kind == PredicateKind::Exact ? "exact" : "subset"},
           {"expected", elements_json(expected)},
           {"actual", elements_json(actual)},
           {"match", match}};
  if (spec.parameterized) out["i"] = i;
  return out;
}

namespace {

json field_label(const FieldCtx& ctx) { return json{{"p", ctx.p()}, {"k", ctx.k()}, {"n", ctx.n()}}; }

json with(json base, const json& extra) {
  base.update(extra);
  return base;
}

void suite_pset_oracle(VerifyResult& res, std::uint64_t seed) {
  for (const auto& slice : oracle_corpus(seed)) {
    const auto& ctx = slice.ctx;
    std::uint64_t mismatches = 0, identity_failures = 0, structure_failures = 0;
    for (const auto& tt : slice.tables) {
      const auto part = preimage_partition(ctx, tt);
      const auto brute = ph_bruteforce(ctx, tt);
      const auto fast = ph_directions(ctx, part, Accumulation::EarlyExit);
      const auto full = ph_directions(ctx, part, Accumulation::Full);
      if (brute != fast || fast != full) ++mismatches;
      if (direction_set_size(ctx, tt) + brute.size() != std::uint64_t{ctx.size()} + 1) ++identity_failures;
      const bool constant = part.value_count() == 1;
      if (brute.empty() || brute.front() != Elt{0} || constant != (brute.size() == ctx.size()))
        ++structure_failures;
    }
    json detail{{"field", field_label(ctx)}, {"tables", slice.tables.size()}};
    res.record("directions_equal_bruteforce", mismatches == 0, with(detail, {{"mismatches", mismatches}}));
    res.record("direction_identity", identity_failures == 0,
               with(detail, {{"failures", identity_failures}}));
    res.record("zero_in_ph_and_constant_iff_full", structure_failures == 0,
               with(detail, {{"failures", structure_failures}}));
  }
}

// Tr(ux) + c for some u != 0: the fibers of a linear form, shifted.
bool is_affine_form(const FieldCtx& ctx, const FunctionTable& tt) {
  FunctionTable shifted = tt;
  for (auto& v : shifted.values) v = ctx.sub(v, tt.values[0]);
  const auto u = detect_linearity(ctx, shifted);
  return u && !u->is_zero();
}

void suite_all_functions_9(VerifyResult& res) {
  const auto ctx = FieldCtx::build(3, 1, 2);
  const auto bound = ph_upper_bound(ctx);
  std::map<std::size_t, std::uint64_t> histogram;
  std::uint64_t tables = 0, bound_fail = 0, gap_fail = 0, identity_fail = 0;
  std::uint64_t maximal = 0, no_witness = 0, not_affine = 0, large_not_linear = 0;
  json counterexample = nullptr;
  for (std::uint64_t code = 0; code < 19683; ++code) {
    const auto tt = subfield_table_from_code(ctx, code);
    const auto report = cardinality_audit(ctx, tt);
    ++tables;
    ++histogram[report.ph.size()];
    if (!report.bound_ok) ++bound_fail;
    if (report.ph.size() == 5 || !report.gap_ok) ++gap_fail;
    if (*report.direction_count + report.ph.size() != 10) ++identity_fail;
    if (!report.large_ph_linear_ok) ++large_not_linear;
    if (report.is_constant || report.ph.size() != bound) continue;
    ++maximal;
    if (!is_affine_form(ctx, tt)) ++not_affine;
    if (!report.linear_witness) {
      ++no_witness;
      if (counterexample.is_null()) counterexample = {{"values", elements_json(tt.values)}, {"ph", elements_json(report.ph)}};
    }
  }
  std::uint64_t converse_fail = 0;
  for (std::uint32_t u = 1; u < ctx.size(); ++u) {
    FunctionTable tt{Codomain::Subfield, std::vector<Elt>(ctx.size())};
    for (std::uint32_t x = 0; x < ctx.size(); ++x) tt.values[x] = ctx.rel_trace(ctx.mul(Elt{u}, Elt{x}));
    if (ph_directions(ctx, preimage_partition(ctx, tt)).size() != bound) ++converse_fail;
  }
  json hist = json::object();
  for (const auto& [size, count] : histogram) hist[std::to_string(size)] = count;
  res.record("upper_bound", bound_fail == 0, {{"tables", tables}, {"failures", bound_fail}});
  res.record("forbidden_interval", gap_fail == 0, {{"tables", tables}, {"failures", gap_fail}});
  // As stated: every maximal table equals Tr(ux) on the nose. Shifting a
  // linear form by a constant keeps its fibers, hence its P_H, so this fails
  // on the 16 tables Tr(ux) + c with c != 0.
  res.record("maximal_ph_is_linear", no_witness == 0 && large_not_linear == 0,
             {{"maximal_tables", maximal},
              {"without_witness", no_witness},
              {"large_ph_without_witness", large_not_linear},
              {"first_counterexample", counterexample}});
  res.record("maximal_ph_is_affine", not_affine == 0, {{"maximal_tables", maximal}, {"failures", not_affine}});
  res.record("linear_forms_attain_bound", converse_fail == 0, {{"failures", converse_fail}});
  res.record("direction_identity", identity_fail == 0, {{"failures", identity_fail}});
  res.record("ph_size_histogram", true, {{"histogram", hist}});
}

void suite_families(VerifyResult& res) {
  const std::uint32_t qs[] = {3, 5, 7, 9, 11, 13};
  for (const auto& spec : family_registry()) {
    if (spec.parameterized) continue;
    for (std::uint32_t q : qs) {
      const auto [p, k] = *prime_power(q);
      if (!spec.applicable(p, k, 2)) continue;
      auto verdict = verify_family(spec, q);
      const bool match = verdict["match"];
      const std::size_t size = verdict["actual"].size();
      if (spec.name == "x2-xq+1") res.record("size_is_q", size == q, {{"q", q}, {"ph_size", size}});
      if (spec.name == "x3-xq+2")
        res.record("size_is_half_q_plus_one", size == (q + 1) / 2, {{"q", q}, {"ph_size", size}});
      res.record("family", match, std::move(verdict));
    }
  }
  const std::uint32_t general[][3] = {{3, 2, 1}, {3, 3, 1}, {3, 3, 2}, {5, 2, 1}};
  const auto& spec = find_family("x2-xqi+1");
  for (const auto& [q, n, i] : general) {
    auto verdict = verify_family(spec, q, n, i);
    const bool match = verdict["match"];
    res.record("family", match, std::move(verdict));
  }
}

void suite_hermite(VerifyResult& res, std::uint64_t seed) {
  CorpusRng rng(seed);
  for (std::uint32_t q : {3u, 5u, 7u}) {
    const auto ctx = FieldCtx::build(q, 1, 2);
    std::uint64_t disagreements = 0, orthogonal = 0;
    for (std::uint64_t draw = 0; draw < 100; ++draw) {
      const auto [f1, f2] = random_bipoly_pair(ctx, rng, draw);
      const bool hermite = orthogonal_test(ctx, f1, f2);
      orthogonal += hermite;
      if (hermite != is_permutation(ctx, recompose(ctx, f1, f2))) ++disagreements;
    }
    res.record("random_pairs", disagreements == 0,
               {{"q", q}, {"pairs", 100}, {"orthogonal", orthogonal}, {"disagreements", disagreements}});

    std::uint64_t maps = 0, family_disagreements = 0, roundtrip_failures = 0;
    for (const auto& spec : family_registry()) {
      if (spec.parameterized || spec.kind != PredicateKind::Exact || !spec.applicable(q, 1, 2)) continue;
      const auto tt = trace_table(ctx, spec.h_builder(ctx, 1));
      for (std::uint32_t g = 0; g < ctx.size(); ++g) {
        const auto ft = gamma_map(ctx, tt, Elt{g});
        const auto [f1, f2] = decompose(ctx, ft);
        ++maps;
        if (recompose(ctx, f1, f2) != ft) ++roundtrip_failures;
        if (orthogonal_test(ctx, f1, f2) != is_permutation(ctx, ft)) ++family_disagreements;
      }
    }
    res.record("family_maps", family_disagreements == 0 && roundtrip_failures == 0,
               {{"q", q},
                {"maps", maps},
                {"disagreements", family_disagreements},
                {"roundtrip_failures", roundtrip_failures}});
  }
}

void suite_examples(VerifyResult& res) {
  for (std::uint32_t p : {5u, 7u}) {
    const auto ctx = FieldCtx::build(p, 1, 2);
    const auto tt = uniform_trivial_ph_table(ctx);
    const auto part = preimage_partition(ctx, tt);
    bool uniform = part.value_count() == p;
    for (const auto& [b, members] : part.classes) uniform = uniform && members.size() == p;
    const auto ph = ph_bruteforce(ctx, tt);
    res.record("uniform_trivial_ph", uniform && ph == std::vector<Elt>{Elt{0}},
               {{"p", p}, {"n", 2}, {"uniform", uniform}, {"ph", elements_json(ph)}});
  }
  const auto ctx = FieldCtx::build(3, 1, 2);
  std::uint64_t expected = 1;
  for (std::uint32_t t = 0; t <= 2; ++t, expected *= 3) {
    const auto tt = two_valued_subspace_table(ctx, t);
    const auto ph = ph_bruteforce(ctx, tt);
    res.record("two_valued_subspace", ph.size() == expected,
               {{"q", 3}, {"n", 2}, {"t", t}, {"ph_size", ph.size()}, {"expected", expected}});
  }
}

void suite_translators(VerifyResult& res, std::uint64_t seed) {
  for (const auto& slice : oracle_corpus(seed)) {
    std::uint64_t failures = 0;
    for (const auto& tt : slice.tables) {
      PHReport report;
      report.ph = ph_bruteforce(slice.ctx, tt);
      if (!verify_zero_translator_lines(slice.ctx, tt, report)) ++failures;
    }
    res.record("zero_translator_lines", failures == 0,
               {{"field", field_label(slice.ctx)}, {"tables", slice.tables.size()}, {"failures", failures}});
  }

  auto check_table = [&](const FieldCtx& ctx, const FunctionTable& tt, json label) {
    PHReport report;
    report.ph = ph_bruteforce(ctx, tt);
    const auto space = translator_space(ctx, tt);
    const bool ok = verify_nonzero_translator_lines(ctx, tt, report) && verify_translator_basis(ctx, space, tt) &&
                    verify_zero_translator_lines(ctx, tt, report);
    label["dim"] = space.dim;
    return std::make_pair(ok, label);
  };

  for (std::uint32_t p : {3u, 5u}) {
    const auto ctx = FieldCtx::build(p, 1, 2);
    std::uint64_t failures = 0;
    for (std::uint32_t u = 0; u < ctx.size(); ++u) {
      FunctionTable tt{Codomain::Subfield, std::vector<Elt>(ctx.size())};
      for (std::uint32_t x = 0; x < ctx.size(); ++x) tt.values[x] = ctx.rel_trace(ctx.mul(Elt{u}, Elt{x}));
      if (!check_table(ctx, tt, json::object()).first) ++failures;
    }
    res.record("linear_forms", failures == 0, {{"field", field_label(ctx)}, {"failures", failures}});
  }

  const std::uint32_t general[][3] = {{3, 2, 1}, {3, 3, 1}, {3, 3, 2}, {5, 2, 1}};
  const auto& spec = find_family("x2-xqi+1");
  for (const auto& [q, n, i] : general) {
    const auto ctx = FieldCtx::build(q, 1, n);
    const auto tt = trace_table(ctx, spec.h_builder(ctx, i));
    auto [ok, detail] = check_table(ctx, tt, {{"q", q}, {"n", n}, {"i", i}});
    const auto one = translator_constant(ctx, tt, Elt{1});
    ok = ok && one && one->is_zero();
    res.record("quadratic_minus_twisted", ok, detail);
  }
}

void suite_frobenius(VerifyResult& res, std::uint64_t seed) {
  CorpusRng rng(seed ^ 0xf70b);
  for (std::uint32_t p : {3u, 7u}) {
    const auto ctx = FieldCtx::build(p, 1, 2);
    std::uint64_t failures = 0;
    for (int draw = 0; draw < 50; ++draw) {
      const auto h = random_sparse_poly(ctx, rng, 1 + rng.below(4), true);
      const auto report = cardinality_audit(ctx, trace_table(ctx, h));
      if (!frobenius_closure_check(ctx, h, 1, report)) ++failures;
    }
    res.record("complement_closed_under_frobenius", failures == 0,
               {{"field", field_label(ctx)}, {"polynomials", 50}, {"failures", failures}});
  }
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {"pset-oracle", "all-functions-9", "families", "translators",
                                                 "hermite",     "examples",        "frobenius"};
  return names;
}

VerifyResult run_verify(const std::string& suite, std::uint64_t seed) {
  VerifyResult res;
  res.suite = suite;
  if (suite == "pset-oracle")
    suite_pset_oracle(res, seed);
  else if (suite == "all-functions-9")
    suite_all_functions_9(res);
  else if (suite == "families")
    suite_families(res);
  else if (suite == "translators")
    suite_translators(res, seed);
  else if (suite == "hermite")
    suite_hermite(res, seed);
  else if (suite == "examples")
    suite_examples(res);
  else if (suite == "frobenius")
    suite_frobenius(res, seed);
  else
    throw Error(ErrorCode::UnknownSuite, "unknown suite '" + suite + "'");
  return res;
}

}  // namespace permtrace
