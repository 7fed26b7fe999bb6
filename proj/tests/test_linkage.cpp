#include <gtest/gtest.h>

#include "helpers.hpp"
#include "qf2/errors.hpp"
#include "qf2/invariants.hpp"
#include "qf2/linkage.hpp"
#include "qf2/sampling.hpp"
#include "qf2/witt.hpp"

using namespace qf2;
using namespace qf2::linkage;
using namespace qf2::testing;

namespace {

bool anisotropic(const QuadraticPfister& p) { return isotropy(pfister_expand(p)).kind == IsoKind::Anisotropic; }

QuadraticPfister with_front(const Element& x, const QuadraticPfister& rho) {
  QuadraticPfister p{{x}, rho.last};
  p.bilinear_slots.insert(p.bilinear_slots.end(), rho.bilinear_slots.begin(), rho.bilinear_slots.end());
  return p;
}

}  // namespace

TEST(MaxSepLinkage, SelfLinkageIsFold) {
  const QuadraticPfister p{{t(1)}, one()};
  const auto r = max_sep_linkage(p, p);
  EXPECT_EQ(r.r, 2);
  EXPECT_EQ(r.witt_index, 4);
}

TEST(MaxSepLinkage, SharedUnitSlot) {
  const QuadraticPfister p{{t(1)}, one()}, q{{t(2)}, one()};
  const auto r = max_sep_linkage(p, q, kDefaultSearchBudget, true);
  EXPECT_GE(r.r, 1);
  EXPECT_TRUE(r.power_of_two);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(verify_witness(*r.witness, p, q));
}

TEST(MaxSepLinkage, ConstructedSharedRho) {
  sampling::Rng rng(21);
  int checked = 0;
  for (int trial = 0; trial < 100 && checked < 6; ++trial) {
    const auto rho = sampling::tame_pfister(rng, 1, 2, 1);
    const auto p = with_front(sampling::slot(rng, 1, 2), rho);
    const auto q = with_front(sampling::slot(rng, 1, 2), rho);
    if (!anisotropic(p) || !anisotropic(q)) continue;
    ++checked;
    const auto r = max_sep_linkage(p, q, kDefaultSearchBudget, true);
    EXPECT_GE(r.r, 1);
    EXPECT_TRUE(r.power_of_two) << r.witt_index;
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_TRUE(verify_witness(*r.witness, p, q));
  }
  EXPECT_GE(checked, 3);
}

TEST(InsepLinked, IdenticalForms) {
  const QuadraticPfister p{{t(1), t(2)}, one()};
  const auto r = insep_k_linked(p, p, 1, 2, 1000);
  ASSERT_TRUE(r.linked.has_value());
  EXPECT_TRUE(*r.linked);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(verify_witness(*r.witness, p, p));
}

TEST(InsepLinked, LaurentSeriesTwoFolds) {
  sampling::Rng rng(8);
  int checked = 0;
  for (int trial = 0; trial < 30 && checked < 10; ++trial) {
    const auto p0 = sampling::anisotropic_pfister(rng, 1, 1, 2), q0 = sampling::anisotropic_pfister(rng, 1, 1, 2);
    if (!p0 || !q0) continue;
    const auto p = *p0, q = *q0;
    ++checked;
    const auto r = insep_k_linked(p, q, 1, 1, 1000);
    ASSERT_TRUE(r.linked.has_value());
    EXPECT_TRUE(*r.linked);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_TRUE(verify_witness(*r.witness, p, q));
  }
  EXPECT_GE(checked, 5);
}

TEST(LiftLinkage, TowerThreeFolds) {
  sampling::Rng rng(4);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 5; ++trial) {
    const auto rho = sampling::tame_pfister(rng, 1, 2, 2);
    const auto p = with_front(sampling::slot(rng, 1, 2), rho);
    const auto q = with_front(sampling::slot(rng, 1, 2), rho);
    if (!anisotropic(p) || !anisotropic(q)) continue;
    ++checked;
    const auto r = lift_linkage(p, q, 2, search_oracle(1000), 1000);
    ASSERT_TRUE(r.inseparable.has_value());
    EXPECT_EQ(r.inseparable->order(), 2);
    EXPECT_TRUE(verify_witness(*r.inseparable, p, q));
  }
  EXPECT_GE(checked, 2);
}

TEST(LiftLinkage, OracleFailurePropagates) {
  const QuadraticPfister p{{t(1), t(2), t(1) + one()}, one()}, q{{t(2), t(1), t(2) + one()}, one()};
  const SepOracle refuse = [](const QuadraticPfister&, const QuadraticPfister&) {
    return std::optional<LinkageWitness>{};
  };
  try {
    lift_linkage(p, q, 2, refuse, 100);
    FAIL() << "expected OracleFailure";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OracleFailure);
  }
}

TEST(UEstimate, Tables) {
  const auto finite = u_n_estimate(FieldTower(2, {}), 1, 10, 1, 1000);
  EXPECT_EQ(finite.claimed, 2);
  EXPECT_TRUE(finite.witness_anisotropic);
  EXPECT_EQ(finite.isotropic, 10);

  const FieldTower laurent(1, {"t"});
  for (int n : {1, 2}) {
    const auto u = u_n_estimate(laurent, n, 20, 3, 5000);
    EXPECT_EQ(u.claimed, 4);
    EXPECT_EQ(u.lower, 4);
    EXPECT_EQ(u.isotropic + u.undecided, 20);
  }
  const auto zero = u_n_estimate(laurent, 3, 5, 3, 5000);
  EXPECT_EQ(zero.claimed, 0);
}

TEST(TheoremU, LaurentSeries) {
  sampling::Rng rng(17);
  int checked = 0;
  for (int trial = 0; trial < 40 && checked < 8; ++trial) {
    const auto p = sampling::anisotropic_pfister(rng, 1, 1, 2);
    if (!p) continue;
    const auto f = scale(sampling::slot(rng, 1, 1), pfister_expand(*p));
    if (witt_index(f) != 0) continue;
    ++checked;
    const auto r = theoremu_decompose(f, 2, 1, 5000);
    EXPECT_TRUE(r.dims_ok);
    EXPECT_FALSE(r.psi.has_value());
    EXPECT_EQ(r.psi_part.dim(), 0);
  }
  EXPECT_GE(checked, 4);
}

TEST(DInvariant, Examples) {
  EXPECT_EQ(d_invariant_estimate(FieldTower(1, {"t"}), 2, 30, 2, 5000).value, 4);
  EXPECT_EQ(d_invariant_estimate(FieldTower(1, {"t"}), 3, 5, 2, 5000).value, 2);
}

TEST(WittLemma, ConstructedPairs) {
  sampling::Rng rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    const auto rho = sampling::tame_pfister(rng, 1, 1, 1);
    const auto pi = with_front(sampling::slot(rng, 1, 1), rho);
    const auto psi = with_front(sampling::slot(rng, 1, 1), with_front(sampling::slot(rng, 1, 1), rho));
    const auto r = wittindex_lemma_check(pi, psi, 1, 5000);
    EXPECT_TRUE(r.holds);
    EXPECT_GE(r.structural_lower, 3);
    if (r.direct_index) EXPECT_GE(*r.direct_index, 3);
  }
}
