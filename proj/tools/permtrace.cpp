// permtrace: command-line front end for the P_H toolkit.
//
// All element values on the command line and in output are indices: the
// little-endian base-p digits of the coefficient vector (see `field info`).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "permtrace/constructions.hpp"
#include "permtrace/hermite.hpp"
#include "permtrace/polyfun.hpp"
#include "permtrace/pset.hpp"
#include "permtrace/report.hpp"
#include "permtrace/translators.hpp"

using namespace permtrace;

namespace {

struct FieldOpts {
  std::uint32_t p = 3, k = 1, n = 2;
};

void add_field_opts(CLI::App* cmd, FieldOpts& f) {
  cmd->add_option("--p", f.p, "characteristic")->required();
  cmd->add_option("--k", f.k, "q = p^k")->default_val(1);
  cmd->add_option("--n", f.n, "extension degree over F_q")->default_val(2);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Elt> parse_indices(const FieldCtx& ctx, const json& arr) {
  if (!arr.is_array() || arr.size() != ctx.size())
    throw Error(ErrorCode::ParseError, "expected an array of " + std::to_string(ctx.size()) + " indices");
  std::vector<Elt> out;
  for (const auto& v : arr) out.push_back(ctx.elem(v.get<std::uint32_t>()));
  return out;
}

// --h accepts a polynomial "exp:coeff,..." or @file.json holding either a
// plain array of H values or {"codomain": "subfield", "values": [...]} with
// the trace already applied.
FunctionTable load_trace_table(const FieldCtx& ctx, const std::string& spec) {
  if (spec.empty() || spec[0] != '@') return trace_table(ctx, parse_poly(ctx, spec));
  json doc;
  try {
    doc = json::parse(read_file(spec.substr(1)));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (doc.is_object()) {
    if (doc.value("codomain", "") != "subfield")
      throw Error(ErrorCode::ParseError, "table object must have codomain \"subfield\"");
    return make_subfield_table(ctx, parse_indices(ctx, doc.at("values")));
  }
  FunctionTable h{Codomain::BigField, parse_indices(ctx, doc)};
  FunctionTable tt{Codomain::Subfield, std::vector<Elt>(ctx.size())};
  for (std::size_t x = 0; x < h.values.size(); ++x) tt.values[x] = ctx.rel_trace(h.values[x]);
  return tt;
}

void print(const json& j) { std::cout << j.dump() << '\n'; }

int cmd_field(const std::string& action, const FieldOpts& f) {
  const auto ctx = FieldCtx::build(f.p, f.k, f.n);
  json out = field_spec_json(ctx);
  if (action == "info") {
    out["q"] = ctx.q();
    out["size"] = ctx.size();
    out["subfield"] = elements_json({ctx.subfield_elems().begin(), ctx.subfield_elems().end()});
    out["basis"] = elements_json(ctx.subfield_basis());
    out["log_tables"] = ctx.has_log_tables();
    out["index_convention"] =
        "index = sum d_i p^i where x = sum d_i t^i modulo the modulus; indices below p form the prime field";
    if (ctx.p() != 2) out["nonresidue"] = ctx.find_nonresidue().index;
    if (ctx.p() != 2 && ctx.n() == 2) out["alpha"] = ctx.quadratic_alpha().index;
  }
  print(out);
  return 0;
}

int cmd_pset(const FieldOpts& f, const std::string& h, const std::string& method) {
  const auto ctx = FieldCtx::build(f.p, f.k, f.n);
  const auto tt = load_trace_table(ctx, h);
  if (method == "brute") {
    print({{"field", field_spec_json(ctx)}, {"h", h}, {"ph", elements_json(ph_bruteforce(ctx, tt))}});
    return 0;
  }
  if (method == "directions") {
    const auto ph = ph_directions(ctx, preimage_partition(ctx, tt));
    print({{"field", field_spec_json(ctx)}, {"h", h}, {"ph", elements_json(ph)}});
    return 0;
  }
  const auto report = cardinality_audit(ctx, tt);
  auto out = ph_report_json(ctx, h, report);
  const bool agree = ph_bruteforce(ctx, tt) == report.ph;
  out["methods_agree"] = agree;
  print(out);
  return agree ? 0 : 1;
}

int cmd_translators(const FieldOpts& f, const std::string& h) {
  const auto ctx = FieldCtx::build(f.p, f.k, f.n);
  const auto tt = load_trace_table(ctx, h);
  const auto space = translator_space(ctx, tt);
  PHReport report;
  report.ph = ph_bruteforce(ctx, tt);
  json out = translator_space_json(space);
  out["field"] = field_spec_json(ctx);
  out["h"] = h;
  out["zero_translator_lines"] = verify_zero_translator_lines(ctx, tt, report);
  out["nonzero_translator_lines"] = verify_nonzero_translator_lines(ctx, tt, report);
  out["basis_checks"] = verify_translator_basis(ctx, space, tt);
  print(out);
  return 0;
}

struct HermiteOpts {
  std::uint32_t q = 3;
  std::string f1, f2, family;
  std::uint32_t gamma = 0;
};

int cmd_hermite(const HermiteOpts& o) {
  const auto pk = prime_power(o.q);
  if (!pk) throw Error(ErrorCode::BadParameters, std::to_string(o.q) + " is not a prime power");
  const auto ctx = FieldCtx::build(pk->first, pk->second, 2);
  BiPoly f1(o.q), f2(o.q);
  json out{{"q", o.q}};
  if (!o.family.empty()) {
    const auto& spec = find_family(o.family);
    const auto tt = trace_table(ctx, spec.h_builder(ctx, 1));
    std::tie(f1, f2) = decompose(ctx, gamma_map(ctx, tt, ctx.elem(o.gamma)));
    out["family"] = spec.name;
    out["gamma"] = o.gamma;
  } else {
    if (o.f1.empty() || o.f2.empty()) throw Error(ErrorCode::BadParameters, "need --f1 and --f2, or --from-gamma-map");
    f1 = parse_grid(ctx, o.f1);
    f2 = parse_grid(ctx, o.f2);
  }
  const auto verdict = hermite_scan(ctx, f1, f2);
  out["f1"] = format_grid(f1);
  out["f2"] = format_grid(f2);
  out["orthogonal"] = verdict.orthogonal;
  out["condition_i"] = verdict.condition_i;
  out["witness"] = verdict.witness ? json{verdict.witness->first, verdict.witness->second} : json(nullptr);
  print(out);
  return 0;
}

struct SearchOpts {
  FieldOpts field;
  std::uint64_t kmin = 1, kmax = 0;
  std::string scope = "all", out, csv;
  bool force = false;
  unsigned workers = 1;
};

int cmd_search(const SearchOpts& o) {
  SearchJob job;
  job.p = o.field.p;
  job.k = o.field.k;
  job.n = o.field.n;
  job.kmin = o.kmin;
  job.kmax = o.kmax;
  job.gamma_scope = o.scope == "nonzero" ? GammaScope::Nonzero : GammaScope::All;
  job.force = o.force;
  const auto ctx = prepare_search(job);
  const auto records = o.workers > 1 ? run_search_parallel(job, o.workers) : run_search(job);
  auto emit = [&](const std::string& path, auto&& writer) {
    if (path.empty() || path == "-") return writer(std::cout);
    std::ofstream f(path);
    if (!f) throw Error(ErrorCode::IoError, "cannot write " + path);
    writer(f);
    if (!f) throw Error(ErrorCode::IoError, "write failed for " + path);
  };
  emit(o.out, [&](std::ostream& s) { write_search_jsonl(s, ctx, job, records); });
  if (!o.csv.empty()) emit(o.csv, [&](std::ostream& s) { write_search_csv(s, ctx, records); });
  return 0;
}

struct VerifyOpts {
  std::string suite, family;
  std::uint32_t q = 0, n = 2, i = 1;
};

int cmd_verify(const VerifyOpts& o) {
  if (!o.family.empty()) {
    if (o.q == 0) throw Error(ErrorCode::BadParameters, "--family needs --q");
    const auto verdict = verify_family(find_family(o.family), o.q, o.n, o.i);
    print(verdict);
    return verdict["match"].get<bool>() ? 0 : 1;
  }
  if (o.suite.empty()) throw Error(ErrorCode::BadParameters, "need --suite or --family");
  const auto seed = configured_seed();
  const auto res = run_verify(o.suite, seed);
  for (const auto& line : res.lines) print(line);
  print({{"suite", res.suite}, {"seed", seed}, {"checks", res.checks}, {"failures", res.failures}, {"ok", res.ok()}});
  return res.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Permutation behaviour of x + gamma Tr(H(x)) over finite fields"};
  app.require_subcommand(1);

  FieldOpts field;
  std::string field_action;
  auto* field_cmd = app.add_subcommand("field", "Build a field and print its specification");
  field_cmd->add_option("action", field_action, "build | info")->required()->check(CLI::IsMember({"build", "info"}));
  add_field_opts(field_cmd, field);

  FieldOpts pset_field;
  std::string pset_h, pset_method = "both";
  auto* pset_cmd = app.add_subcommand("pset", "Compute P_H for one H");
  pset_cmd->set_help_flag("--help");  // frees -h so --h is unambiguous
  add_field_opts(pset_cmd, pset_field);
  pset_cmd->add_option("--h", pset_h, "polynomial exp:coeff,... or @table.json")->required();
  pset_cmd->add_option("--method", pset_method)->check(CLI::IsMember({"brute", "directions", "both"}));

  FieldOpts tr_field;
  std::string tr_h;
  auto* tr_cmd = app.add_subcommand("translators", "Linear translators of Tr(H(x))");
  tr_cmd->set_help_flag("--help");
  add_field_opts(tr_cmd, tr_field);
  tr_cmd->add_option("--h", tr_h, "polynomial exp:coeff,... or @table.json")->required();

  HermiteOpts herm;
  auto* herm_cmd = app.add_subcommand("hermite", "Hermite criterion for a pair over F_q");
  herm_cmd->add_option("--q", herm.q)->required();
  herm_cmd->add_option("--f1", herm.f1, "coefficient grid: rows i by ';', entries j by ','");
  herm_cmd->add_option("--f2", herm.f2);
  herm_cmd->add_option("--from-gamma-map", herm.family, "decompose x + gamma Tr(H(x)) for a named family");
  herm_cmd->add_option("--gamma", herm.gamma)->default_val(0);

  SearchOpts search;
  auto* search_cmd = app.add_subcommand("search", "Scan H = x^k over an exponent range");
  add_field_opts(search_cmd, search.field);
  search_cmd->add_option("--kmin", search.kmin)->default_val(1);
  search_cmd->add_option("--kmax", search.kmax, "0 means q^n - 1")->default_val(0);
  search_cmd->add_option("--gamma-scope", search.scope)->check(CLI::IsMember({"all", "nonzero"}));
  search_cmd->add_option("--out", search.out, "JSON-lines output (default stdout)");
  search_cmd->add_option("--csv", search.csv, "CSV summary path");
  search_cmd->add_flag("--force", search.force, "allow q^n above the search cap");
  search_cmd->add_option("--workers", search.workers)->default_val(1);

  VerifyOpts verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite or check one family");
  verify_cmd->add_option("--suite", verify.suite);
  verify_cmd->add_option("--family", verify.family);
  verify_cmd->add_option("--q", verify.q);
  verify_cmd->add_option("--n", verify.n)->default_val(2);
  verify_cmd->add_option("--i", verify.i)->default_val(1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*field_cmd) return cmd_field(field_action, field);
    if (*pset_cmd) return cmd_pset(pset_field, pset_h, pset_method);
    if (*tr_cmd) return cmd_translators(tr_field, tr_h);
    if (*herm_cmd) return cmd_hermite(herm);
    if (*search_cmd) return cmd_search(search);
    if (*verify_cmd) return cmd_verify(verify);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
