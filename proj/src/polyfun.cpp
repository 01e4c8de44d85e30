#include "permtrace/polyfun.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace permtrace {

std::uint64_t reduce_exponent(std::uint64_t e, std::uint64_t field_size) {
  if (e == 0) return 0;
  return (e - 1) % (field_size - 1) + 1;
}

SparsePoly::SparsePoly(const FieldCtx& ctx, std::vector<Term> terms) {
  for (auto& t : terms) {
    if (t.coeff.index >= ctx.size()) throw Error(ErrorCode::BadParameters, "coefficient index out of range");
    t.exp = reduce_exponent(t.exp, ctx.size());
  }
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
  for (const auto& t : terms) {
    if (!terms_.empty() && terms_.back().exp == t.exp)
      terms_.back().coeff = ctx.add(terms_.back().coeff, t.coeff);
    else
      terms_.push_back(t);
  }
  std::erase_if(terms_, [](const Term& t) { return t.coeff.is_zero(); });
}

SparsePoly SparsePoly::monomial(const FieldCtx& ctx, std::uint64_t exp, Elt coeff) {
  return SparsePoly(ctx, {Term{exp, coeff}});
}

std::uint64_t SparsePoly::degree() const {
  if (terms_.empty()) throw Error(ErrorCode::BadParameters, "degree of the zero polynomial");
  return terms_.back().exp;
}

SparsePoly parse_poly(const FieldCtx& ctx, std::string_view text) {
  std::vector<Term> terms;
  auto parse_u64 = [&](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
      throw Error(ErrorCode::ParseError, "bad integer '" + std::string(s) + "' in polynomial");
    return v;
  };
  if (text.find_first_not_of(' ') == std::string_view::npos)
    throw Error(ErrorCode::ParseError, "empty polynomial (write 0:0 for zero)");
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto item = text.substr(pos, end - pos);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos)
      throw Error(ErrorCode::ParseError, "expected exp:coeff in '" + std::string(item) + "'");
    const auto exp = parse_u64(item.substr(0, colon));
    const auto coeff = parse_u64(item.substr(colon + 1));
    if (coeff >= ctx.size()) throw Error(ErrorCode::ParseError, "coefficient index out of range");
    terms.push_back(Term{exp, Elt{static_cast<std::uint32_t>(coeff)}});
    pos = end + 1;
  }
  return SparsePoly(ctx, std::move(terms));
}

std::string format_poly(const SparsePoly& poly) {
  std::ostringstream out;
  bool first = true;
  for (const auto& t : poly.terms()) {
    if (!first) out << ',';
    out << t.exp << ':' << t.coeff.index;
    first = false;
  }
  return out.str();
}

void check_table(const FieldCtx& ctx, const FunctionTable& table) {
  if (table.values.size() != ctx.size())
    throw Error(ErrorCode::BadParameters, "table length " + std::to_string(table.values.size()) +
                                              " != field size " + std::to_string(ctx.size()));
  for (Elt v : table.values) {
    if (v.index >= ctx.size()) throw Error(ErrorCode::BadParameters, "table entry out of range");
    if (table.codomain == Codomain::Subfield && !ctx.in_subfield(v))
      throw Error(ErrorCode::BadParameters, "table entry " + std::to_string(v.index) + " not in F_q");
  }
}

FunctionTable make_subfield_table(const FieldCtx& ctx, std::vector<Elt> values) {
  FunctionTable t{Codomain::Subfield, std::move(values)};
  check_table(ctx, t);
  return t;
}

Elt eval_poly(const FieldCtx& ctx, const SparsePoly& poly, Elt x) {
  Elt acc{0};
  for (const auto& t : poly.terms()) acc = ctx.add(acc, ctx.mul(t.coeff, ctx.pow(x, t.exp)));
  return acc;
}

FunctionTable tabulate(const FieldCtx& ctx, const SparsePoly& poly) {
  FunctionTable out{Codomain::BigField, std::vector<Elt>(ctx.size())};
  for (std::uint32_t i = 0; i < ctx.size(); ++i) out.values[i] = eval_poly(ctx, poly, Elt{i});
  return out;
}

FunctionTable trace_table(const FieldCtx& ctx, const SparsePoly& h) {
  FunctionTable out{Codomain::Subfield, std::vector<Elt>(ctx.size())};
  for (std::uint32_t i = 0; i < ctx.size(); ++i) out.values[i] = ctx.rel_trace(eval_poly(ctx, h, Elt{i}));
  return out;
}

FunctionTable gamma_map(const FieldCtx& ctx, const FunctionTable& tt, Elt gamma) {
  FunctionTable out{Codomain::BigField, std::vector<Elt>(tt.size())};
  for (std::uint32_t i = 0; i < tt.size(); ++i) out.values[i] = ctx.add(Elt{i}, ctx.mul(gamma, tt.values[i]));
  return out;
}

bool is_permutation(std::span<const Elt> values, std::vector<std::uint8_t>& scratch) {
  scratch.assign(values.size(), 0);
  for (Elt v : values) {
    if (v.index >= values.size() || scratch[v.index]) return false;
    scratch[v.index] = 1;
  }
  return true;
}

bool is_permutation(const FieldCtx& ctx, const FunctionTable& table) {
  if (table.values.size() != ctx.size()) return false;
  std::vector<std::uint8_t> scratch;
  return is_permutation(table.values, scratch);
}

SparsePoly interpolate(const FieldCtx& ctx, const FunctionTable& table) {
  const std::uint32_t size = ctx.size();
  if (size > kInterpolationCap)
    throw Error(ErrorCode::CapExceeded, "interpolation limited to fields of at most 4096 elements");
  check_table(ctx, table);
  if (size == 1) return SparsePoly(ctx, {Term{0, table.values[0]}});

  // f = sum_a f(a) (1 - (x - a)^{N-1}) and (x - a)^{N-1} = sum_j x^j a^{N-1-j},
  // so the x^j coefficient (j >= 1) is -sum_a f(a) a^{N-1-j} with 0^0 = 1.
  std::vector<Elt> power_sums(size - 1, Elt{0});  // index e = N-1-j
  for (std::uint32_t a = 1; a < size; ++a) {
    const Elt fa = table.values[a];
    if (fa.is_zero()) continue;
    Elt term = fa;
    for (std::uint32_t e = 0; e + 1 < size; ++e) {
      power_sums[e] = ctx.add(power_sums[e], term);
      term = ctx.mul(term, Elt{a});
    }
  }
  power_sums[0] = ctx.add(power_sums[0], table.values[0]);

  std::vector<Term> terms;
  terms.push_back(Term{0, table.values[0]});
  for (std::uint32_t j = 1; j < size; ++j) terms.push_back(Term{j, ctx.neg(power_sums[size - 1 - j])});
  return SparsePoly(ctx, std::move(terms));
}

bool coeffs_in_subfield(const FieldCtx& ctx, const SparsePoly& poly, std::uint32_t t) {
  if (t == 0 || ctx.m() % t != 0)
    throw Error(ErrorCode::BadSubfieldDegree, "t = " + std::to_string(t) + " does not divide m = " +
                                                  std::to_string(ctx.m()));
  return std::all_of(poly.terms().begin(), poly.terms().end(),
                     [&](const Term& term) { return ctx.frob_p_power(term.coeff, t) == term.coeff; });
}

}  // namespace permtrace
