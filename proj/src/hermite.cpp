#include "permtrace/hermite.hpp"

#include <charconv>
#include <sstream>

namespace permtrace {

namespace {

void require_bivariate_ctx(const FieldCtx& ctx) {
  if (ctx.p() == 2) throw Error(ErrorCode::EvenCharacteristic, "bivariate decomposition needs q odd");
  if (ctx.n() != 2) throw Error(ErrorCode::NotQuadraticExtension, "bivariate decomposition needs n = 2");
}

void require_same_q(const FieldCtx& ctx, const BiPoly& a) {
  if (a.q() != ctx.q()) throw Error(ErrorCode::BadParameters, "BiPoly q does not match the field");
}

// Coefficient of x1^{q-1} x2^{q-1} in reduce(a * b); only exponent sums
// q-1 and 2q-2 reduce to q-1.
Elt top_coefficient(const FieldCtx& ctx, const BiPoly& a, const BiPoly& b) {
  const std::uint32_t q = a.q(), top = q - 1;
  Elt acc{0};
  auto partners = [&](std::uint32_t i, auto&& fn) {
    fn(top - i);
    if (i == top && top != 0) fn(top);
  };
  for (std::uint32_t i = 0; i < q; ++i) {
    for (std::uint32_t j = 0; j < q; ++j) {
      const Elt c = a.at(i, j);
      if (c.is_zero()) continue;
      partners(i, [&](std::uint32_t ii) {
        partners(j, [&](std::uint32_t jj) { acc = ctx.add(acc, ctx.mul(c, b.at(ii, jj))); });
      });
    }
  }
  return acc;
}

}  // namespace

BiPoly BiPoly::constant(std::uint32_t q, Elt c) { return monomial(q, 0, 0, c); }

BiPoly BiPoly::monomial(std::uint32_t q, std::uint32_t i, std::uint32_t j, Elt c) {
  BiPoly f(q);
  f.at(reduce_bivariate_exponent(i, q), reduce_bivariate_exponent(j, q)) = c;
  return f;
}

std::uint32_t reduce_bivariate_exponent(std::uint32_t e, std::uint32_t q) {
  if (e < q) return e;
  return (e - 1) % (q - 1) + 1;
}

Elt bipoly_eval(const FieldCtx& ctx, const BiPoly& f, Elt x1, Elt x2) {
  Elt acc{0};
  Elt p1{1};
  for (std::uint32_t i = 0; i < f.q(); ++i) {
    Elt p2{1};
    for (std::uint32_t j = 0; j < f.q(); ++j) {
      const Elt c = f.at(i, j);
      if (!c.is_zero()) acc = ctx.add(acc, ctx.mul(c, ctx.mul(p1, p2)));
      p2 = ctx.mul(p2, x2);
    }
    p1 = ctx.mul(p1, x1);
  }
  return acc;
}

BiPoly bipoly_add(const FieldCtx& ctx, const BiPoly& a, const BiPoly& b) {
  BiPoly out(a.q());
  for (std::uint32_t i = 0; i < a.q(); ++i)
    for (std::uint32_t j = 0; j < a.q(); ++j) out.at(i, j) = ctx.add(a.at(i, j), b.at(i, j));
  return out;
}

BiPoly bipoly_scale(const FieldCtx& ctx, const BiPoly& a, Elt s) {
  BiPoly out(a.q());
  for (std::uint32_t i = 0; i < a.q(); ++i)
    for (std::uint32_t j = 0; j < a.q(); ++j) out.at(i, j) = ctx.mul(a.at(i, j), s);
  return out;
}

BiPoly bipoly_mul_reduce(const FieldCtx& ctx, const BiPoly& a, const BiPoly& b) {
  if (a.q() != b.q()) throw Error(ErrorCode::BadParameters, "BiPoly q mismatch");
  const std::uint32_t q = a.q();
  BiPoly out(q);
  for (std::uint32_t i = 0; i < q; ++i) {
    for (std::uint32_t j = 0; j < q; ++j) {
      const Elt c = a.at(i, j);
      if (c.is_zero()) continue;
      for (std::uint32_t k = 0; k < q; ++k) {
        const std::uint32_t ei = reduce_bivariate_exponent(i + k, q);
        for (std::uint32_t l = 0; l < q; ++l) {
          const Elt d = b.at(k, l);
          if (d.is_zero()) continue;
          Elt& slot = out.at(ei, reduce_bivariate_exponent(j + l, q));
          slot = ctx.add(slot, ctx.mul(c, d));
        }
      }
    }
  }
  return out;
}

BiPoly bipoly_pow(const FieldCtx& ctx, const BiPoly& a, std::uint32_t t) {
  BiPoly out = BiPoly::constant(a.q(), Elt{1});
  for (std::uint32_t i = 0; i < t; ++i) out = bipoly_mul_reduce(ctx, out, a);
  return out;
}

BiPoly parse_grid(const FieldCtx& ctx, std::string_view text) {
  const std::uint32_t q = ctx.q();
  BiPoly f(q);
  std::uint32_t row = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(';', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    if (row >= q) throw Error(ErrorCode::ParseError, "grid has more than q rows");
    std::uint32_t col = 0;
    std::size_t p = 0;
    while (p <= line.size()) {
      std::size_t e = line.find(',', p);
      if (e == std::string_view::npos) e = line.size();
      auto item = line.substr(p, e - p);
      while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
      while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
      std::uint32_t v = 0;
      const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size())
        throw Error(ErrorCode::ParseError, "bad grid entry '" + std::string(item) + "'");
      if (col >= q) throw Error(ErrorCode::ParseError, "grid row has more than q entries");
      if (v >= ctx.size() || !ctx.in_subfield(Elt{v}))
        throw Error(ErrorCode::ParseError, "grid entry " + std::to_string(v) + " is not in F_q");
      f.at(row, col++) = Elt{v};
      p = e + 1;
    }
    ++row;
    pos = end + 1;
  }
  return f;
}

std::string format_grid(const BiPoly& f) {
  std::ostringstream out;
  for (std::uint32_t i = 0; i < f.q(); ++i) {
    if (i) out << ';';
    for (std::uint32_t j = 0; j < f.q(); ++j) {
      if (j) out << ',';
      out << f.at(i, j).index;
    }
  }
  return out.str();
}

std::pair<BiPoly, BiPoly> decompose(const FieldCtx& ctx, const FunctionTable& ft) {
  require_bivariate_ctx(ctx);
  if (ft.size() != ctx.size()) throw Error(ErrorCode::BadParameters, "table length mismatch");
  const std::uint32_t q = ctx.q();
  const auto sub = ctx.subfield_elems();
  const Elt alpha = ctx.quadratic_alpha();
  // alpha^q = -alpha, so v - v^q = 2 v2 alpha.
  const Elt inv_two_alpha = ctx.inv(ctx.sub(alpha, ctx.frob_q(alpha)));

  std::vector<Elt> g1(std::size_t{q} * q), g2(std::size_t{q} * q);
  for (std::uint32_t a = 0; a < q; ++a) {
    for (std::uint32_t b = 0; b < q; ++b) {
      const Elt x = ctx.add(sub[a], ctx.mul(sub[b], alpha));
      const Elt v = ft[x];
      const Elt v2 = ctx.mul(ctx.sub(v, ctx.frob_q(v)), inv_two_alpha);
      g1[a * q + b] = ctx.sub(v, ctx.mul(v2, alpha));
      g2[a * q + b] = v2;
    }
  }

  // delta_a(x) = 1 - (x - a)^{q-1}; its x^j coefficient is [j = 0] - a^{q-1-j}, 0^0 = 1.
  std::vector<Elt> basis(std::size_t{q} * q);
  for (std::uint32_t j = 0; j < q; ++j) {
    for (std::uint32_t a = 0; a < q; ++a) {
      Elt c = ctx.neg(ctx.pow(sub[a], q - 1 - j));
      if (j == 0) c = ctx.add(c, Elt{1});
      basis[j * q + a] = c;
    }
  }

  auto interpolate2 = [&](const std::vector<Elt>& g) {
    std::vector<Elt> partial(std::size_t{q} * q, Elt{0});  // [i][b]
    for (std::uint32_t i = 0; i < q; ++i)
      for (std::uint32_t a = 0; a < q; ++a) {
        const Elt e = basis[i * q + a];
        if (e.is_zero()) continue;
        for (std::uint32_t b = 0; b < q; ++b)
          partial[i * q + b] = ctx.add(partial[i * q + b], ctx.mul(g[a * q + b], e));
      }
    BiPoly f(q);
    for (std::uint32_t i = 0; i < q; ++i)
      for (std::uint32_t j = 0; j < q; ++j) {
        Elt acc{0};
        for (std::uint32_t b = 0; b < q; ++b) acc = ctx.add(acc, ctx.mul(partial[i * q + b], basis[j * q + b]));
        f.at(i, j) = acc;
      }
    return f;
  };
  return {interpolate2(g1), interpolate2(g2)};
}

FunctionTable recompose(const FieldCtx& ctx, const BiPoly& f1, const BiPoly& f2) {
  require_bivariate_ctx(ctx);
  require_same_q(ctx, f1);
  require_same_q(ctx, f2);
  const Elt alpha = ctx.quadratic_alpha();
  const auto sub = ctx.subfield_elems();
  FunctionTable out{Codomain::BigField, std::vector<Elt>(ctx.size())};
  for (Elt a : sub)
    for (Elt b : sub) {
      const Elt x = ctx.add(a, ctx.mul(b, alpha));
      out.values[x.index] = ctx.add(bipoly_eval(ctx, f1, a, b), ctx.mul(bipoly_eval(ctx, f2, a, b), alpha));
    }
  return out;
}

Elt hermite_coefficient(const FieldCtx& ctx, const BiPoly& f1, const BiPoly& f2, std::uint32_t t1,
                        std::uint32_t t2) {
  require_same_q(ctx, f1);
  require_same_q(ctx, f2);
  if (t1 >= ctx.q() || t2 >= ctx.q()) throw Error(ErrorCode::BadParameters, "Hermite exponents must be < q");
  return top_coefficient(ctx, bipoly_pow(ctx, f1, t1), bipoly_pow(ctx, f2, t2));
}

HermiteVerdict hermite_scan(const FieldCtx& ctx, const BiPoly& f1, const BiPoly& f2) {
  require_same_q(ctx, f1);
  require_same_q(ctx, f2);
  const std::uint32_t q = ctx.q(), p = ctx.p();
  std::vector<BiPoly> pow1{BiPoly::constant(q, Elt{1})}, pow2{BiPoly::constant(q, Elt{1})};
  for (std::uint32_t t = 1; t < q; ++t) {
    pow1.push_back(bipoly_mul_reduce(ctx, pow1.back(), f1));
    pow2.push_back(bipoly_mul_reduce(ctx, pow2.back(), f2));
  }

  HermiteVerdict verdict;
  verdict.condition_i = !top_coefficient(ctx, pow1[q - 1], pow2[q - 1]).is_zero();
  for (std::uint32_t t1 = 0; t1 < q && !verdict.witness; ++t1) {
    for (std::uint32_t t2 = 0; t2 < q; ++t2) {
      if (t1 == q - 1 && t2 == q - 1) continue;
      if (t1 % p == 0 && t2 % p == 0) continue;
      if (!top_coefficient(ctx, pow1[t1], pow2[t2]).is_zero()) {
        verdict.witness = std::make_pair(t1, t2);
        break;
      }
    }
  }
  verdict.orthogonal = verdict.condition_i && !verdict.witness;
  return verdict;
}

bool orthogonal_test(const FieldCtx& ctx, const BiPoly& f1, const BiPoly& f2) {
  return hermite_scan(ctx, f1, f2).orthogonal;
}

}  // namespace permtrace
