#include <gtest/gtest.h>

#include <cctype>
#include <random>
#include <set>

#include "oracle.hpp"
#include "permtrace/constructions.hpp"
#include "permtrace/corpus.hpp"
#include "permtrace/hermite.hpp"

using namespace permtrace;

namespace {

// Pointwise evaluation in the oracle field, with 0^0 = 1.
std::uint32_t naive_bi_eval(const oracle::Field& f, const BiPoly& g, std::uint32_t a, std::uint32_t b) {
  std::uint32_t acc = 0;
  for (std::uint32_t i = 0; i < g.q(); ++i)
    for (std::uint32_t j = 0; j < g.q(); ++j)
      acc = f.add(acc, f.mul(g.at(i, j).index, f.mul(f.pow(a, i), f.pow(b, j))));
  return acc;
}

// The coefficient of x1^{q-1} x2^{q-1} in a reduced polynomial g equals
// sum over F_q^2 of g, because sum_a a^i is -1 for i = q-1 and 0 otherwise.
std::uint32_t naive_top_coefficient(const oracle::Field& f, const BiPoly& f1, const BiPoly& f2, std::uint32_t t1,
                                    std::uint32_t t2) {
  std::uint32_t acc = 0;
  const auto sub = f.subfield();
  for (std::uint32_t a : sub)
    for (std::uint32_t b : sub)
      acc = f.add(acc, f.mul(f.pow(naive_bi_eval(f, f1, a, b), t1), f.pow(naive_bi_eval(f, f2, a, b), t2)));
  return acc;
}

bool naive_orthogonal(const oracle::Field& f, const BiPoly& f1, const BiPoly& f2) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> image;
  const auto sub = f.subfield();
  for (std::uint32_t a : sub)
    for (std::uint32_t b : sub) image.insert({naive_bi_eval(f, f1, a, b), naive_bi_eval(f, f2, a, b)});
  return image.size() == sub.size() * sub.size();
}

}  // namespace

TEST(Hermite, ExponentReduction) {
  EXPECT_EQ(reduce_bivariate_exponent(0, 5), 0u);
  EXPECT_EQ(reduce_bivariate_exponent(4, 5), 4u);
  EXPECT_EQ(reduce_bivariate_exponent(5, 5), 1u);
  EXPECT_EQ(reduce_bivariate_exponent(8, 5), 4u);
  EXPECT_EQ(reduce_bivariate_exponent(9, 5), 1u);
  const auto ctx = FieldCtx::build(5, 1, 2);
  for (std::uint32_t e = 0; e < 30; ++e)
    for (Elt a : ctx.subfield_elems()) ASSERT_EQ(ctx.pow(a, e), ctx.pow(a, reduce_bivariate_exponent(e, 5)));
}

TEST(Hermite, GridParsing) {
  const auto ctx = FieldCtx::build(3, 1, 2);
  const auto f = parse_grid(ctx, "0,1,0;2,0,0");
  EXPECT_EQ(f.at(0, 1), Elt{1});
  EXPECT_EQ(f.at(1, 0), Elt{2});
  EXPECT_EQ(f.at(2, 2), Elt{0});
  EXPECT_EQ(parse_grid(ctx, format_grid(f)), f);
  for (const char* bad : {"0,1,0,0", "0;0;0;0", "x", "3", "0,,1"}) {
    try {
      parse_grid(ctx, bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError) << bad;
    }
  }
}

TEST(Hermite, ProductsAgreePointwise) {
  const auto ctx = FieldCtx::build(5, 1, 2);
  CorpusRng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_bipoly(ctx, rng, 6), b = random_bipoly(ctx, rng, 6);
    const auto prod = bipoly_mul_reduce(ctx, a, b);
    const auto sum = bipoly_add(ctx, a, b);
    const auto cube = bipoly_pow(ctx, a, 3);
    for (Elt x : ctx.subfield_elems())
      for (Elt y : ctx.subfield_elems()) {
        ASSERT_EQ(bipoly_eval(ctx, prod, x, y), ctx.mul(bipoly_eval(ctx, a, x, y), bipoly_eval(ctx, b, x, y)));
        ASSERT_EQ(bipoly_eval(ctx, sum, x, y), ctx.add(bipoly_eval(ctx, a, x, y), bipoly_eval(ctx, b, x, y)));
        ASSERT_EQ(bipoly_eval(ctx, cube, x, y), ctx.pow(bipoly_eval(ctx, a, x, y), 3));
      }
    EXPECT_EQ(bipoly_pow(ctx, a, 0), BiPoly::constant(5, Elt{1}));
  }
}

TEST(Hermite, CoefficientMatchesSumOracle) {
  for (std::uint32_t p : {3u, 5u}) {
    const auto ctx = FieldCtx::build(p, 1, 2);
    const oracle::Field ref(p, 1, 2);
    CorpusRng rng(p);
    for (int trial = 0; trial < 8; ++trial) {
      const auto [f1, f2] = random_bipoly_pair(ctx, rng, trial);
      for (std::uint32_t t1 = 0; t1 < p; ++t1)
        for (std::uint32_t t2 = 0; t2 < p; ++t2)
          ASSERT_EQ(hermite_coefficient(ctx, f1, f2, t1, t2).index, naive_top_coefficient(ref, f1, f2, t1, t2));
    }
  }
}

TEST(Hermite, OrthogonalTestMatchesImageOracle) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const auto ctx = FieldCtx::build(p, 1, 2);
    const oracle::Field ref(p, 1, 2);
    CorpusRng rng(configured_seed() + p);
    int orthogonal = 0;
    for (std::uint64_t draw = 0; draw < 60; ++draw) {
      const auto [f1, f2] = random_bipoly_pair(ctx, rng, draw);
      const bool expect = naive_orthogonal(ref, f1, f2);
      orthogonal += expect;
      ASSERT_EQ(orthogonal_test(ctx, f1, f2), expect) << format_grid(f1) << " | " << format_grid(f2);
      const auto verdict = hermite_scan(ctx, f1, f2);
      ASSERT_EQ(verdict.orthogonal, expect);
      if (verdict.witness) {
        const auto [t1, t2] = *verdict.witness;
        ASSERT_FALSE(t1 == p - 1 && t2 == p - 1);
        ASSERT_FALSE(t1 % p == 0 && t2 % p == 0);
        ASSERT_FALSE(hermite_coefficient(ctx, f1, f2, t1, t2).is_zero());
      }
    }
    // The generator mix must exercise both outcomes.
    EXPECT_GT(orthogonal, 0);
    EXPECT_LT(orthogonal, 60);
  }
}

TEST(Hermite, DecomposeUsesFrozenBasis) {
  // Over F_9, alpha has index 3, so x1 + x2 alpha has index x1 + 3 x2.
  const auto ctx = FieldCtx::build(3, 1, 2);
  FunctionTable id{Codomain::BigField, {}};
  for (std::uint32_t x = 0; x < 9; ++x) id.values.push_back(Elt{x});
  const auto [f1, f2] = decompose(ctx, id);
  EXPECT_EQ(f1, BiPoly::monomial(3, 1, 0));
  EXPECT_EQ(f2, BiPoly::monomial(3, 0, 1));
}

TEST(Hermite, DecomposeRecomposeRoundTrip) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const auto ctx = FieldCtx::build(p, 1, 2);
    const Elt alpha = ctx.quadratic_alpha();
    std::mt19937_64 rng(p);
    for (int trial = 0; trial < 10; ++trial) {
      FunctionTable ft{Codomain::BigField, std::vector<Elt>(ctx.size())};
      for (auto& v : ft.values) v = Elt{static_cast<std::uint32_t>(rng() % ctx.size())};
      const auto [f1, f2] = decompose(ctx, ft);
      EXPECT_EQ(recompose(ctx, f1, f2), ft);
      for (Elt a : ctx.subfield_elems())
        for (Elt b : ctx.subfield_elems()) {
          const Elt x = ctx.add(a, ctx.mul(b, alpha));
          ASSERT_EQ(ctx.add(bipoly_eval(ctx, f1, a, b), ctx.mul(bipoly_eval(ctx, f2, a, b), alpha)), ft[x]);
        }
    }
  }
}

TEST(Hermite, DecomposeErrors) {
  try {
    decompose(FieldCtx::build(2, 1, 2), FunctionTable{Codomain::BigField, std::vector<Elt>(4)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EvenCharacteristic);
  }
  try {
    decompose(FieldCtx::build(3, 1, 3), FunctionTable{Codomain::BigField, std::vector<Elt>(27)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotQuadraticExtension);
  }
}

TEST(Hermite, QuadraticFamilyInHandComputedForm) {
  // x + gamma Tr(x^2) splits as f1 = 2 a1 x1^2 + 2 a1 u x2^2 + x1 and
  // f2 = 2 a2 x1^2 + 2 a2 u x2^2 + x2.
  const auto ctx = FieldCtx::build(5, 1, 2);
  const Elt u = ctx.find_nonresidue(), alpha = ctx.quadratic_alpha();
  const auto tt = trace_table(ctx, SparsePoly::monomial(ctx, 2));
  const Elt a1{2}, a2{3};
  const auto [f1, f2] = decompose(ctx, gamma_map(ctx, tt, ctx.add(a1, ctx.mul(a2, alpha))));
  BiPoly e1(5), e2(5);
  e1.at(2, 0) = ctx.mul(Elt{2}, a1);
  e1.at(0, 2) = ctx.mul(ctx.mul(Elt{2}, a1), u);
  e1.at(1, 0) = Elt{1};
  e2.at(2, 0) = ctx.mul(Elt{2}, a2);
  e2.at(0, 2) = ctx.mul(ctx.mul(Elt{2}, a2), u);
  e2.at(0, 1) = Elt{1};
  EXPECT_EQ(f1, e1);
  EXPECT_EQ(f2, e2);
}

// Witnesses from the standard non-orthogonality argument: for the stated gamma = a1 + a2 alpha the
// coefficient at (t1, t2) must be nonzero.
struct Witness {
  const char* family;
  std::uint32_t q;
  bool t1_half, t2_half;  // t_i = (q-1)/2 when set, else 0
  enum { BothNonzero, A1Nonzero, OnlyA2 } gammas;
};

class StatedWitness : public ::testing::TestWithParam<Witness> {};

TEST_P(StatedWitness, NonzeroAtStatedExponents) {
  const auto w = GetParam();
  const auto [p, k] = *prime_power(w.q);
  const auto ctx = FieldCtx::build(p, k, 2);
  const auto tt = trace_table(ctx, find_family(w.family).h_builder(ctx, 1));
  const Elt alpha = ctx.quadratic_alpha();
  const std::uint32_t t1 = w.t1_half ? (w.q - 1) / 2 : 0, t2 = w.t2_half ? (w.q - 1) / 2 : 0;
  std::size_t zeros = 0, tried = 0;
  for (Elt a1 : ctx.subfield_elems())
    for (Elt a2 : ctx.subfield_elems()) {
      const bool in_range = w.gammas == Witness::BothNonzero ? !a1.is_zero() && !a2.is_zero()
                            : w.gammas == Witness::A1Nonzero ? !a1.is_zero()
                                                             : a1.is_zero() && !a2.is_zero();
      if (!in_range) continue;
      const auto [f1, f2] = decompose(ctx, gamma_map(ctx, tt, ctx.add(a1, ctx.mul(a2, alpha))));
      ++tried;
      zeros += hermite_coefficient(ctx, f1, f2, t1, t2).is_zero();
    }
  EXPECT_GT(tried, 0u);
  EXPECT_EQ(zeros, 0u) << w.family << " q=" << w.q << " (t1,t2)=(" << t1 << "," << t2 << ")";
}

INSTANTIATE_TEST_SUITE_P(
    Hermite, StatedWitness,
    ::testing::Values(Witness{"x2", 3, true, true, Witness::BothNonzero}, Witness{"x2", 5, true, true, Witness::BothNonzero},
                      Witness{"x2", 7, true, true, Witness::BothNonzero}, Witness{"x2", 9, true, true, Witness::BothNonzero},
                      Witness{"xq+1", 3, true, true, Witness::BothNonzero},
                      Witness{"xq+1", 9, true, true, Witness::BothNonzero},
                      Witness{"xq+1", 11, true, true, Witness::BothNonzero},
                      Witness{"xq+3", 5, true, false, Witness::A1Nonzero},
                      Witness{"xq+3", 9, true, false, Witness::A1Nonzero},
                      Witness{"xq+3", 13, true, false, Witness::A1Nonzero},
                      Witness{"xq+3", 5, false, true, Witness::OnlyA2}, Witness{"xq+3", 9, false, true, Witness::OnlyA2},
                      Witness{"xq+3", 13, false, true, Witness::OnlyA2},
                      Witness{"x4-xq+3", 5, true, false, Witness::A1Nonzero},
                      Witness{"x4-xq+3", 7, true, false, Witness::A1Nonzero},
                      Witness{"x4-xq+3", 11, true, false, Witness::A1Nonzero},
                      Witness{"xq+3-x2q+2", 3, true, false, Witness::A1Nonzero},
                      Witness{"xq+3-x2q+2", 9, true, false, Witness::A1Nonzero},
                      Witness{"xq+3-x2q+2", 13, true, false, Witness::A1Nonzero}),
    [](const auto& info) {
      std::string name = info.param.family;
      for (auto& c : name)
        if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
      return name + "_q" + std::to_string(info.param.q) + "_" + std::to_string(info.index);
    });

TEST(Hermite, XqPlus3AtNineHasOtherWitnesses) {
  // At q = 9 the (q-1)/2 exponents vanish, yet every gamma != 0 still fails
  // the criterion through some other admissible pair.
  const auto ctx = FieldCtx::build(3, 2, 2);
  const auto tt = trace_table(ctx, find_family("xq+3").h_builder(ctx, 1));
  for (std::uint32_t g = 1; g < ctx.size(); ++g) {
    const auto [f1, f2] = decompose(ctx, gamma_map(ctx, tt, Elt{g}));
    const auto verdict = hermite_scan(ctx, f1, f2);
    ASSERT_FALSE(verdict.orthogonal);
    ASSERT_TRUE(verdict.witness || !verdict.condition_i);
  }
}
