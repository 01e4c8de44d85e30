#include "permtrace/constructions.hpp"

#include <algorithm>

namespace permtrace {

FunctionTable uniform_trivial_ph_table(const FieldCtx& ctx) {
  const std::uint32_t p = ctx.p(), n = ctx.n();
  if (ctx.k() != 1 || p < 5 || n < 2)
    throw Error(ErrorCode::BadParameters, "needs q = p prime >= 5 and n >= 2");

  // Fiber values c_i: 0, 1, ..., p-3, then p-1, p-2 (the last two swapped).
  std::vector<std::int64_t> c(p);
  for (std::uint32_t i = 0; i < p; ++i) c[i] = i;
  c[p - 2] = p - 1;
  c[p - 1] = p - 2;
  // Coset offsets b_i = -c_i with the wraparound b_p = b_0 = 0.
  std::vector<Elt> b(p + 1);
  for (std::uint32_t i = 0; i <= p; ++i) b[i] = ctx.from_int(i == p ? 0 : -c[i]);

  const auto basis = ctx.subfield_basis();
  const Elt top = basis.back();
  const std::vector<Elt> lower(basis.begin(), basis.end() - 1);
  const auto lower_span = subfield_span(ctx, lower);
  std::vector<Elt> hyperplane;
  for (std::uint32_t x = 0; x < ctx.size(); ++x)
    if (lower_span[x]) hyperplane.push_back(Elt{x});

  // I_{c_i} = (b_i top + (A \ {1})) u {b_{i+1} top + 1}
  std::vector<std::int64_t> fiber(ctx.size(), -1);
  auto assign = [&](Elt x, std::uint32_t i) {
    if (fiber[x.index] != -1)
      throw Error(ErrorCode::ConstructionInconsistent, "element " + std::to_string(x.index) + " in two fibers");
    fiber[x.index] = i;
  };
  for (std::uint32_t i = 0; i < p; ++i) {
    const Elt shift = ctx.mul(b[i], top);
    for (Elt a : hyperplane)
      if (a != Elt{1}) assign(ctx.add(shift, a), i);
    assign(ctx.add(ctx.mul(b[i + 1], top), Elt{1}), i);
  }
  if (std::find(fiber.begin(), fiber.end(), -1) != fiber.end())
    throw Error(ErrorCode::ConstructionInconsistent, "fibers do not cover the field");

  FunctionTable tt{Codomain::Subfield, std::vector<Elt>(ctx.size())};
  for (std::uint32_t x = 0; x < ctx.size(); ++x) tt.values[x] = ctx.from_int(c[fiber[x]]);
  return tt;
}

FunctionTable two_valued_subspace_table(const FieldCtx& ctx, std::uint32_t t) {
  if (t > ctx.n()) throw Error(ErrorCode::BadParameters, "subspace dimension exceeds n");
  const auto basis = ctx.subfield_basis();
  const std::vector<Elt> span_basis(basis.begin(), basis.begin() + t);
  const auto in_subgroup = subfield_span(ctx, span_basis);
  FunctionTable tt{Codomain::Subfield, std::vector<Elt>(ctx.size())};
  for (std::uint32_t x = 0; x < ctx.size(); ++x) tt.values[x] = in_subgroup[x] ? Elt{0} : Elt{1};
  return tt;
}

namespace {

bool odd_quadratic(std::uint32_t p, std::uint32_t, std::uint32_t n) { return p != 2 && n == 2; }

std::uint64_t q_of(const FieldCtx& ctx) { return ctx.q(); }

SparsePoly binomial(const FieldCtx& ctx, std::uint64_t e1, std::uint64_t e2, int sign) {
  return SparsePoly(ctx, {Term{e1, Elt{1}}, Term{e2, ctx.from_int(sign)}});
}

bool alpha_gamma_in_subfield(const FieldCtx& ctx, Elt gamma) {
  return ctx.in_subfield(ctx.mul(ctx.quadratic_alpha(), gamma));
}

std::vector<FamilySpec> make_registry() {
  std::vector<FamilySpec> r;
  auto only_zero = [](const FieldCtx&, Elt g) { return g.is_zero(); };
  auto in_fq = [](const FieldCtx& ctx, Elt g) { return ctx.in_subfield(g); };

  r.push_back({"x2", "H = x^2, q odd: P_H = {0}", PredicateKind::Exact,
               [](const FieldCtx& ctx, std::uint32_t) { return SparsePoly::monomial(ctx, 2); }, only_zero,
               odd_quadratic});
  r.push_back({"xq+1", "H = x^(q+1), q odd: P_H = {0}", PredicateKind::Exact,
               [](const FieldCtx& ctx, std::uint32_t) { return SparsePoly::monomial(ctx, q_of(ctx) + 1); },
               only_zero, odd_quadratic});
  r.push_back({"xq+3", "H = x^(q+3), q = 1 mod 4: P_H = {0}", PredicateKind::Exact,
               [](const FieldCtx& ctx, std::uint32_t) { return SparsePoly::monomial(ctx, q_of(ctx) + 3); },
               only_zero,
               [](std::uint32_t p, std::uint32_t k, std::uint32_t n) {
                 std::uint64_t q = 1;
                 for (std::uint32_t i = 0; i < k; ++i) q *= p;
                 return odd_quadratic(p, k, n) && q % 4 == 1;
               }});
  r.push_back({"xq+3.q7", "H = x^(q+3), q = 7: {0} u {gamma^4 = 1} within P_H", PredicateKind::Subset,
               [](const FieldCtx& ctx, std::uint32_t) { return SparsePoly::monomial(ctx, q_of(ctx) + 3); },
               [](const FieldCtx& ctx, Elt g) { return g.is_zero() || ctx.pow(g, 4) == Elt{1}; },
               [](std::uint32_t p, std::uint32_t k, std::uint32_t n) { return p == 7 && k == 1 && n == 2; }});
  r.push_back({"x2-xq+1", "H = x^2 - x^(q+1), q odd: P_H = F_q", PredicateKind::Exact,
               [](const FieldCtx& ctx, std::uint32_t) { return binomial(ctx, 2, q_of(ctx) + 1, -1); }, in_fq,
               odd_quadratic});
  r.push_back({"x2+xq+1", "H = x^2 + x^(q+1), q odd: P_H = {gamma : alpha gamma in F_q}", PredicateKind::Exact,
               [](const FieldCtx& ctx, std::uint32_t) { return binomial(ctx, 2, q_of(ctx) + 1, 1); },
               alpha_gamma_in_subfield, odd_quadratic});
  r.push_back({"x3-xq+2", "H = x^3 - x^(q+2), q odd: P_H = {gamma in F_q : -2 gamma a square}",
               PredicateKind::Exact,
               [](const FieldCtx& ctx, std::uint32_t) { return binomial(ctx, 3, q_of(ctx) + 2, -1); },
               [](const FieldCtx& ctx, Elt g) {
                 return ctx.in_subfield(g) && ctx.is_subfield_square(ctx.mul(ctx.from_int(-2), g));
               },
               odd_quadratic});
  r.push_back({"x4-xq+3", "H = x^4 - x^(q+3), q odd: P_H = {0}, or F_q in characteristic 3",
               PredicateKind::Exact,
               [](const FieldCtx& ctx, std::uint32_t) { return binomial(ctx, 4, q_of(ctx) + 3, -1); },
               [](const FieldCtx& ctx, Elt g) { return ctx.p() == 3 ? ctx.in_subfield(g) : g.is_zero(); },
               odd_quadratic});
  r.push_back({"x4+xq+3",
               "H = x^4 + x^(q+3), q odd: P_H = {0}, or {gamma : alpha gamma in F_q} in characteristic 3",
               PredicateKind::Exact,
               [](const FieldCtx& ctx, std::uint32_t) { return binomial(ctx, 4, q_of(ctx) + 3, 1); },
               [](const FieldCtx& ctx, Elt g) {
                 return ctx.p() == 3 ? alpha_gamma_in_subfield(ctx, g) : g.is_zero();
               },
               odd_quadratic});
  r.push_back({"xq+3-x2q+2", "H = x^(q+3) - x^(2q+2), q odd: P_H = {0}", PredicateKind::Exact,
               [](const FieldCtx& ctx, std::uint32_t) {
                 return binomial(ctx, q_of(ctx) + 3, 2 * q_of(ctx) + 2, -1);
               },
               only_zero, odd_quadratic});
  r.push_back({"xq+3+x2q+2", "H = x^(q+3) + x^(2q+2), q odd: P_H = {0}", PredicateKind::Exact,
               [](const FieldCtx& ctx, std::uint32_t) {
                 return binomial(ctx, q_of(ctx) + 3, 2 * q_of(ctx) + 2, 1);
               },
               only_zero, odd_quadratic});
  FamilySpec general{"x2-xqi+1", "H = x^2 - x^(q^i+1) over F_{q^n}, 1 <= i <= n-1: F_q within P_H",
                     PredicateKind::Subset,
                     [](const FieldCtx& ctx, std::uint32_t i) {
                       if (i < 1 || i >= ctx.n())
                         throw Error(ErrorCode::BadParameters, "exponent parameter i must lie in [1, n-1]");
                       std::uint64_t qi = 1;
                       for (std::uint32_t j = 0; j < i; ++j) qi *= ctx.q();
                       return binomial(ctx, 2, qi + 1, -1);
                     },
                     in_fq, [](std::uint32_t, std::uint32_t, std::uint32_t n) { return n >= 2; }};
  general.parameterized = true;
  r.push_back(std::move(general));
  return r;
}

}  // namespace

const std::vector<FamilySpec>& family_registry() {
  static const std::vector<FamilySpec> registry = make_registry();
  return registry;
}

const FamilySpec& find_family(const std::string& name) {
  for (const auto& f : family_registry())
    if (f.name == name) return f;
  throw Error(ErrorCode::BadParameters, "unknown family '" + name + "'");
}

std::vector<Elt> family_expected_set(const FieldCtx& ctx, const FamilySpec& spec) {
  if (!spec.applicable(ctx.p(), ctx.k(), ctx.n()))
    throw Error(ErrorCode::BadParameters, "family " + spec.name + " does not apply to this field");
  std::vector<Elt> out;
  for (std::uint32_t g = 0; g < ctx.size(); ++g)
    if (spec.predicate(ctx, Elt{g})) out.push_back(Elt{g});
  return out;
}

}  // namespace permtrace
