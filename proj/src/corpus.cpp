#include "permtrace/corpus.hpp"

#include <cstdlib>
#include <string>

namespace permtrace {

std::uint64_t configured_seed() {
  if (const char* env = std::getenv("PERMTRACE_SEED")) {
    try {
      return std::stoull(env, nullptr, 0);
    } catch (const std::exception&) {
    }
  }
  return kDefaultSeed;
}

FunctionTable random_subfield_table(const FieldCtx& ctx, CorpusRng& rng, std::uint64_t draw) {
  FunctionTable tt{Codomain::Subfield, std::vector<Elt>(ctx.size())};
  switch (draw % 3) {
    case 0:
      for (auto& v : tt.values) v = rng.subfield_element(ctx);
      break;
    case 1: {
      const std::uint64_t count = 1 + rng.below(ctx.q());
      std::vector<Elt> palette;
      for (std::uint64_t i = 0; i < count; ++i) palette.push_back(rng.subfield_element(ctx));
      for (auto& v : tt.values) v = palette[rng.below(palette.size())];
      break;
    }
    default: {
      const Elt base = rng.subfield_element(ctx);
      for (auto& v : tt.values) v = base;
      const std::uint64_t flips = rng.below(4);
      for (std::uint64_t i = 0; i < flips; ++i) tt.values[rng.below(ctx.size())] = rng.subfield_element(ctx);
      break;
    }
  }
  return tt;
}

FunctionTable subfield_table_from_code(const FieldCtx& ctx, std::uint64_t code) {
  FunctionTable tt{Codomain::Subfield, std::vector<Elt>(ctx.size())};
  const auto sub = ctx.subfield_elems();
  for (auto& v : tt.values) {
    v = sub[code % ctx.q()];
    code /= ctx.q();
  }
  return tt;
}

std::vector<FunctionTable> all_subfield_tables(const FieldCtx& ctx) {
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < ctx.size(); ++i) {
    total *= ctx.q();
    if (total > (std::uint64_t{1} << 24)) throw Error(ErrorCode::CapExceeded, "too many tables to enumerate");
  }
  std::vector<FunctionTable> out;
  out.reserve(total);
  for (std::uint64_t code = 0; code < total; ++code) out.push_back(subfield_table_from_code(ctx, code));
  return out;
}

SparsePoly random_sparse_poly(const FieldCtx& ctx, CorpusRng& rng, std::size_t terms, bool prime_field_coeffs) {
  std::vector<Term> out;
  for (std::size_t i = 0; i < terms; ++i) {
    const Elt c = prime_field_coeffs ? Elt{static_cast<std::uint32_t>(rng.below(ctx.p()))} : rng.any_element(ctx);
    out.push_back(Term{rng.below(ctx.size()), c});
  }
  return SparsePoly(ctx, std::move(out));
}

BiPoly random_bipoly(const FieldCtx& ctx, CorpusRng& rng, std::uint32_t max_terms) {
  const std::uint32_t q = ctx.q();
  BiPoly f(q);
  const std::uint64_t terms = 1 + rng.below(max_terms);
  for (std::uint64_t t = 0; t < terms; ++t) {
    const auto i = static_cast<std::uint32_t>(rng.below(q));
    const auto j = static_cast<std::uint32_t>(rng.below(q));
    f.at(i, j) = ctx.add(f.at(i, j), rng.subfield_element(ctx));
  }
  return f;
}

std::pair<BiPoly, BiPoly> random_bipoly_pair(const FieldCtx& ctx, CorpusRng& rng, std::uint64_t draw) {
  const std::uint32_t q = ctx.q();
  auto nonzero = [&] {
    Elt s{0};
    while (s.is_zero()) s = rng.subfield_element(ctx);
    return s;
  };
  auto triangular = [&] {
    BiPoly f1(q), f2(q);
    f1.at(1, 0) = nonzero();
    for (std::uint32_t j = 0; j < q; ++j)
      if (rng.below(2)) f1.at(0, j) = ctx.add(f1.at(0, j), rng.subfield_element(ctx));
    f2.at(0, 1) = nonzero();
    f2.at(0, 0) = rng.subfield_element(ctx);
    return std::make_pair(f1, f2);
  };
  switch (draw % 4) {
    case 0:
      return {random_bipoly(ctx, rng, 2 * q), random_bipoly(ctx, rng, 2 * q)};
    case 1: {
      auto [f1, f2] = triangular();
      if (rng.below(2)) std::swap(f1, f2);
      return {f1, f2};
    }
    case 2: {
      BiPoly f1(q), f2(q);
      f1.at(1, 0) = rng.subfield_element(ctx);
      f1.at(0, 1) = rng.subfield_element(ctx);
      f2.at(1, 0) = rng.subfield_element(ctx);
      f2.at(0, 1) = rng.subfield_element(ctx);
      f1.at(0, 0) = rng.subfield_element(ctx);
      return {f1, f2};
    }
    default: {
      auto [f1, f2] = triangular();
      BiPoly& target = rng.below(2) ? f1 : f2;
      const auto i = static_cast<std::uint32_t>(rng.below(q));
      const auto j = static_cast<std::uint32_t>(rng.below(q));
      target.at(i, j) = ctx.add(target.at(i, j), nonzero());
      return {f1, f2};
    }
  }
}

std::vector<CorpusSlice> oracle_corpus(std::uint64_t seed, std::size_t per_field) {
  std::vector<CorpusSlice> out;
  {
    auto ctx = FieldCtx::build(2, 1, 2);
    auto tables = all_subfield_tables(ctx);
    out.push_back({std::move(ctx), std::move(tables)});
  }
  CorpusRng rng(seed);
  const std::pair<std::uint32_t, std::uint32_t> fields[] = {{2, 3}, {3, 2}, {5, 2}, {3, 3}, {7, 2}};
  for (const auto& [p, n] : fields) {
    auto ctx = FieldCtx::build(p, 1, n);
    std::vector<FunctionTable> tables;
    for (std::size_t i = 0; i < per_field; ++i) tables.push_back(random_subfield_table(ctx, rng, i));
    out.push_back({std::move(ctx), std::move(tables)});
  }
  return out;
}

}  // namespace permtrace
