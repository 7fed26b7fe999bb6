#include <gtest/gtest.h>

#include "helpers.hpp"
#include "qf2/forms.hpp"

using namespace qf2;
using namespace qf2::testing;

TEST(PfisterExpand, Examples) {
  const Element a = t(), b = t() + one();
  EXPECT_EQ(pfister_expand({{}, a}), binary(one(), a));
  EXPECT_EQ(pfister_expand({{b}, a}), orth_sum(binary(one(), a), binary(b, a)));
  auto h = pfister_expand({{b}, zero()});
  ASSERT_EQ(h.pairs.size(), 2u);
  EXPECT_TRUE(h.pairs[0].a.is_zero());
  EXPECT_TRUE(h.pairs[1].a.is_zero());
}

TEST(PfisterExpand, DimensionIsPowerOfTwo) {
  for (int n = 1; n <= 4; ++n) {
    QuadraticPfister p{std::vector<Element>(n - 1, t()), one()};
    EXPECT_EQ(pfister_expand(p).dim(), 1 << n);
  }
}

TEST(Tensor, MatchesPrependedSlots) {
  const Element b1 = t(1), b2 = t(2) + one(), c = t(1) * t(2), a = t(2).inverse();
  QuadraticPfister p{{b2}, a};
  QuadraticPfister full{{c, b1, b2}, a};
  EXPECT_EQ(tensor(BilinearPfister{{c, b1}}, pfister_expand(p)), pfister_expand(full));
  EXPECT_EQ(tensor(BilinearPfister{{t()}}, binary(one(), a)), pfister_expand({{t()}, a}));
}

TEST(ScaleAndSum, Examples) {
  EXPECT_EQ(scale(t(), binary(one(), one())), binary(t(), one()));
  EXPECT_EQ(orth_sum(binary(one(), t()), binary(t(), one())).dim(), 4);
  EXPECT_THROW(scale(zero(), binary(one(), one())), Error);
}

TEST(Evaluate, PairAndPolar) {
  QuadraticForm f = orth_sum(binary(t(), one()), quasilinear_form({t()}));
  // t(x^2 + xy + y^2) + t z^2 at (1, 1, 1) = t + t = 0.
  EXPECT_TRUE(evaluate(f, {one(), one(), one()}).is_zero());
  EXPECT_EQ(polar(f, {one(), zero(), zero()}, {zero(), one(), zero()}), t());
}

TEST(Moves, TwoPairKeepsArfAndDimension) {
  QuadraticForm f = orth_sum(binary(t(), t().inverse()), binary(t() + one(), one()));
  QuadraticForm g = apply_move(f, {MoveKind::TwoPair, 0, 1, {}, {}, {}});
  EXPECT_EQ(g.dim(), 4);
  EXPECT_EQ(f.pairs[0].a + f.pairs[1].a, g.pairs[0].a + g.pairs[1].a);
  EXPECT_EQ(g.pairs[0].b, one());
  // Cancelling coefficients produce a hyperbolic plane.
  QuadraticForm h = apply_move(orth_sum(binary(t(), one()), binary(t(), t())), {MoveKind::TwoPair, 0, 1, {}, {}, {}});
  EXPECT_EQ(h.pairs[0], (Pair{one(), zero()}));
}

TEST(Normalize, Examples) {
  const Element a = t(), b = t() + one();
  auto n1 = normalize_presentation(pfister_expand({{b}, a}));
  EXPECT_FALSE(n1.scaled_by.has_value());
  EXPECT_TRUE(is_normalized(n1.form));
  EXPECT_EQ(n1.form.pairs.back(), (Pair{one(), a}));

  auto n2 = normalize_presentation(hyperbolic_form(1, 2));
  EXPECT_EQ(n2.form, hyperbolic_form(1, 2));

  const Element s = (t() + one()) / (t().pow(2) + t() + one());
  auto n3 = normalize_presentation(orth_sum(binary(t(), t()), binary(one(), t() + wp(s))));
  EXPECT_EQ(n3.form, orth_sum(binary(t(), t()), binary(one(), t())));
  // s has a positive-valuation part, so the witness is a truncated series.
  EXPECT_FALSE(n3.arf_witness_exact);
  EXPECT_GE(valuation(wp(n3.arf_witness) + wp(s), 1), kDefaultPrecision);

  EXPECT_THROW(normalize_presentation(orth_sum(binary(t(), one()), binary(t(), zero()))), Error);
}

TEST(Normalize, ScalesWhenNoSquareCoefficient) {
  auto f = orth_sum(binary(t(), one()), binary(t() + one(), one()));
  auto n = normalize_presentation(f);
  ASSERT_TRUE(n.scaled_by.has_value());
  EXPECT_EQ(*n.scaled_by, (t() + one()).inverse());
  EXPECT_TRUE(is_normalized(n.form));
}

TEST(Format, Form) {
  const std::vector<std::string> names{"t"};
  EXPECT_EQ(format_form(orth_sum(binary(one(), t()), quasilinear_form({one()})), names), "[1,t] + <1>q");
  EXPECT_EQ(format_pfister({{t()}, one()}, names), "<<t,1]]");
}
