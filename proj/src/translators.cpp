#include "permtrace/translators.hpp"

#include <algorithm>

namespace permtrace {

std::optional<Elt> translator_constant(const FieldCtx& ctx, const FunctionTable& tt, Elt alpha) {
  if (alpha.is_zero()) throw Error(ErrorCode::ZeroAlpha, "translators are nonzero by definition");
  // u = 1, x = 0 forces the constant; everything else is verification.
  const Elt a = ctx.sub(tt[alpha], tt[Elt{0}]);
  for (Elt u : ctx.subfield_elems()) {
    if (u.is_zero()) continue;
    const Elt shift = ctx.mul(u, alpha);
    const Elt expected = ctx.mul(u, a);
    for (std::uint32_t x = 0; x < ctx.size(); ++x) {
      if (ctx.sub(tt[ctx.add(Elt{x}, shift)], tt.values[x]) != expected) return std::nullopt;
    }
  }
  return a;
}

TranslatorSpace translator_space(const FieldCtx& ctx, const FunctionTable& tt) {
  check_table(ctx, tt);
  TranslatorSpace space;
  for (std::uint32_t i = 1; i < ctx.size(); ++i) {
    if (auto a = translator_constant(ctx, tt, Elt{i})) space.members.push_back({Elt{i}, *a});
  }

  std::vector<Elt> chosen;
  std::vector<std::uint8_t> in_span(ctx.size(), 0);
  in_span[0] = 1;
  for (const auto& t : space.members) {
    if (in_span[t.alpha.index]) continue;
    space.basis.push_back(t);
    chosen.push_back(t.alpha);
    in_span = subfield_span(ctx, chosen);
  }
  space.dim = space.basis.size();

  for (std::size_t i = 0; i < space.basis.size(); ++i) {
    if (!space.basis[i].constant.is_zero()) {
      space.pivot = i;
      break;
    }
  }
  if (space.pivot) {
    const auto& [a1, b1] = space.basis[*space.pivot];
    for (std::size_t i = 0; i < space.basis.size(); ++i) {
      if (i == *space.pivot) continue;
      const auto& [ai, bi] = space.basis[i];
      space.lambda0_basis.push_back(ctx.sub(ctx.mul(a1, bi), ctx.mul(ai, b1)));
    }
  } else {
    space.lambda0_basis = chosen;
  }
  return space;
}

bool verify_zero_translator_lines(const FieldCtx& ctx, const FunctionTable& tt, const PHReport& report) {
  const auto sub = ctx.subfield_elems();
  for (std::uint32_t i = 1; i < ctx.size(); ++i) {
    const Elt alpha{i};
    const bool line_in_ph =
        std::all_of(sub.begin(), sub.end(), [&](Elt u) { return report.contains(ctx.mul(alpha, u)); });
    const auto a = translator_constant(ctx, tt, alpha);
    const bool zero_translator = a && a->is_zero();
    if (line_in_ph != zero_translator) return false;
  }
  return true;
}

bool verify_nonzero_translator_lines(const FieldCtx& ctx, const FunctionTable& tt, const PHReport& report) {
  const auto sub = ctx.subfield_elems();
  for (std::uint32_t i = 1; i < ctx.size(); ++i) {
    const Elt alpha{i};
    const auto b = translator_constant(ctx, tt, alpha);
    if (!b || b->is_zero()) continue;

    std::vector<std::uint32_t> values;
    for (Elt u : sub) values.push_back(tt[ctx.mul(alpha, u)].index);
    std::sort(values.begin(), values.end());
    const bool uniform = std::adjacent_find(values.begin(), values.end()) == values.end();

    if (uniform) {
      const Elt excluded = ctx.neg(ctx.div(alpha, *b));
      for (Elt u : sub) {
        const Elt g = ctx.mul(alpha, u);
        if (report.contains(g) == (g == excluded)) return false;
      }
    } else {
      for (Elt u : sub) {
        const Elt g = ctx.mul(alpha, u);
        if (report.contains(g) != g.is_zero()) return false;
      }
    }
  }
  return true;
}

bool verify_translator_basis(const FieldCtx& ctx, const TranslatorSpace& space, const FunctionTable& tt) {
  if (!space.pivot) return true;

  for (Elt beta : space.lambda0_basis) {
    if (beta.is_zero()) return false;
    const auto a = translator_constant(ctx, tt, beta);
    if (!a || !a->is_zero()) return false;
  }
  if (space.lambda0_basis.size() + 1 != space.dim) return false;
  if (!subfield_independent(ctx, space.lambda0_basis)) return false;

  const auto lambda0 = subfield_span(ctx, space.lambda0_basis);
  for (const auto& [alpha, b] : space.members) {
    if (b.is_zero()) continue;
    for (std::uint32_t v = 0; v < ctx.size(); ++v) {
      if (!lambda0[v]) continue;
      const Elt shifted = ctx.add(alpha, Elt{v});
      if (shifted.is_zero()) return false;
      const auto a = translator_constant(ctx, tt, shifted);
      if (!a || *a != b) return false;
    }
    std::vector<Elt> coset_basis{alpha};
    for (Elt beta : space.lambda0_basis) coset_basis.push_back(ctx.add(alpha, beta));
    if (!subfield_independent(ctx, coset_basis)) return false;
  }
  return true;
}

}  // namespace permtrace
