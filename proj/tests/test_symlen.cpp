#include <gtest/gtest.h>

#include "helpers.hpp"
#include "qf2/errors.hpp"
#include "qf2/invariants.hpp"
#include "qf2/sampling.hpp"
#include "qf2/symlen.hpp"
#include "qf2/witt.hpp"

using namespace qf2;
using namespace qf2::symlen;
using namespace qf2::testing;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidArgument;
}

/// b_1[1,a_1] + ... + b_{m-1}[1,a_{m-1}] + [1, a_1 + ... + a_{m-1}]
QuadraticForm normalized(const std::vector<Pair>& head) {
  QuadraticForm f{1, head, {}};
  Element sum = zero();
  for (const auto& p : head) sum += p.a;
  f.pairs.push_back({one(), sum});
  return f;
}

QuadraticForm sample_normalized(sampling::Rng& rng, int height, int pairs) {
  auto f = sampling::tame_form(rng, 1, height, pairs - 1);
  return normalized(f.pairs);
}

bool trivial_difference(const SymbolSum& x, const SymbolSum& y) {
  const auto t = class_trivial(x + y);
  return t && *t;
}

}  // namespace

TEST(GoodboundValue, Examples) {
  EXPECT_EQ(goodbound_value({8, 8}, 3), 3);
  EXPECT_EQ(goodbound_value({8}, 2), 3);
  EXPECT_EQ(goodbound_value({4}, 2), 1);
  EXPECT_EQ(goodbound_value({4, 8, 16}, 4), 1);
  EXPECT_EQ(kind_of([] { goodbound_value({8, 4}, 3); }), ErrorKind::HypothesisViolated);
  EXPECT_EQ(kind_of([] { goodbound_value({8}, 3); }), ErrorKind::InvalidArgument);
}

TEST(PrankBound, Examples) {
  EXPECT_EQ(prank_bound(2, 2), 2);
  EXPECT_EQ(prank_bound(2, 3), 1);
  EXPECT_EQ(prank_bound(2, 4), 0);
  EXPECT_EQ(prank_bound(5, 3), 10);
}

TEST(InseparableExtension, Arithmetic) {
  const InseparableExtension k({t(1), t(2) + one()}, 2);
  EXPECT_EQ(k.degree(), 4);
  for (size_t i = 0; i < 2; ++i)
    EXPECT_TRUE(k.equal(k.mul(k.root(i), k.root(i)), k.embed(k.adjoined()[i])));
  const auto x = k.add(k.add(k.embed(one()), k.root(0)), k.mul(k.root(0), k.root(1)));
  EXPECT_TRUE(k.equal(k.mul(x, k.inverse(x)), k.embed(one())));
  EXPECT_EQ(k.square(x), one() + t(1) + t(1) * (t(2) + one()));
  EXPECT_EQ(kind_of([] { InseparableExtension({t(1), t(1) * t(2).square()}, 2); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { InseparableExtension({one()}, 1); }), ErrorKind::InvalidArgument);
}

TEST(SplitFieldSlots, SlotCounts) {
  const auto f8 = normalized({{t(1), t(2)}, {t(2), one()}, {t(1) * t(2), t(1)}});
  const auto s8 = split_field_slots(f8, 3);
  ASSERT_EQ(s8.slots.size(), 1u);
  EXPECT_EQ(s8.slots[0], t(1));
  EXPECT_EQ(s8.proof.hauptsatz_step.dim, 6);

  std::vector<Pair> head;
  for (int i = 0; i < 5; ++i) head.push_back({t(1) + Element::base(1, 1).pow(i) * t(2).pow(i), t(2).pow(i)});
  const auto s12 = split_field_slots(normalized(head), 2);
  EXPECT_EQ(s12.slots.size(), 5u);
  EXPECT_EQ(s12.proof.hauptsatz_step.dim, 2);

  const auto s4 = split_field_slots(normalized({{t(1), one()}}), 2);
  EXPECT_EQ(s4.slots.size(), 1u);
}

TEST(SplitFieldSlots, Errors) {
  EXPECT_EQ(kind_of([] { split_field_slots(normalized({{t(1), one()}}), 3); }), ErrorKind::DimensionTooSmall);
  EXPECT_EQ(kind_of([] { split_field_slots(QuadraticForm{1, {{t(1), one()}, {one(), t(1)}}, {}}, 2); }),
            ErrorKind::NotNormalized);
}

TEST(SplitFieldSlots, ProofsReverify) {
  sampling::Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = sample_normalized(rng, 2, 3);
    const auto split = split_field_slots(f, 2);
    for (const auto& step : split.proof.witt_chain)
      if (step.relation == "Witt equivalent over F") EXPECT_TRUE(step.verified);
    EXPECT_TRUE(verify_proof(split.proof));
  }
}

TEST(LagKing, PeelsExistingSlot) {
  const SymbolSum c(2, {Symbol{t(1) + one(), {t(2)}}});
  const auto r = lagking_decompose(c, {t(2)}, 1000);
  EXPECT_EQ(r.stage, 0);
  EXPECT_TRUE(trivial_difference(c, wedge_slots(r.omegas, {t(2)})));
}

TEST(LagKing, TrivialClass) {
  const SymbolSum c(2, {Symbol{t(1).square() + t(1), {t(2)}}});
  const auto r = lagking_decompose(c, {t(1)}, 1000);
  ASSERT_EQ(r.omegas.size(), 1u);
  EXPECT_TRUE(simplify(r.omegas[0]).empty());
}

TEST(LagKing, CliffordClassOverTower) {
  sampling::Rng rng(5);
  for (int trial = 0; trial < 8; ++trial) {
    const auto f = sample_normalized(rng, 2, 3);
    const auto split = split_field_slots(f, 2);
    const auto c = clifford(f).as_symbols();
    const auto r = lagking_decompose(c, split.slots, 100000);
    EXPECT_TRUE(trivial_difference(c, wedge_slots(r.omegas, split.slots)));
  }
}

TEST(Goodbound, PfisterGivesSingleSymbol) {
  const QuadraticPfister p{{t(1)}, t(2) + one()};
  const auto f = scale(t(2), pfister_expand(p));
  const auto r = goodbound_decompose(f, 2, 2, 100000);
  EXPECT_LE(r.output.size(), 1u);
  EXPECT_TRUE(trivial_difference(r.output, SymbolSum(2, {e_map(p)})));
}

TEST(Goodbound, HyperbolicGivesEmpty) {
  const auto r = goodbound_decompose(hyperbolic_form(1, 3), 2, 2, 1000);
  EXPECT_TRUE(r.output.empty());
}

TEST(Goodbound, DimSixOverTower) {
  sampling::Rng rng(3);
  int done = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = sample_normalized(rng, 2, 3);
    try {
      const auto r = goodbound_decompose(f, 2, 2, 100000);
      EXPECT_LE(static_cast<long>(r.output.size()), goodbound_value({8}, 2));
      EXPECT_TRUE(trivial_difference(r.output, clifford(f).as_symbols()));
      ++done;
    } catch (const Error& e) {
      EXPECT_TRUE(e.kind() == ErrorKind::SearchExhausted || e.kind() == ErrorKind::UndecidableClass) << e.what();
    }
  }
  EXPECT_GE(done, 8);
}

TEST(Goodbound, DegreeThreeTopClass) {
  const QuadraticPfister p{{t(1), t(2)}, t(1) + one()};
  const auto f = pfister_expand(p);
  const auto c = e_class(f, 3, 2, 1000);
  EXPECT_TRUE(trivial_difference(c, SymbolSum(3, {e_map(p)})));
  const auto r = goodbound_decompose(f, 3, 2, 100000);
  EXPECT_LE(r.output.size(), 1u);
}
