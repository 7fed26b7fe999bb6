#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "qf2/field.hpp"
#include "qf2/gf2k.hpp"

using namespace qf2;
using namespace qf2::testing;

namespace {

// Random element of F_2(t1)(t2) built from small Laurent polynomials and fractions.
Element random_element(std::mt19937_64& rng, int height, bool allow_fraction = true) {
  std::uniform_int_distribution<int> exp(-2, 2), coin(0, 3);
  auto laurent = [&](int level) {
    Element acc = zero();
    const int terms = 1 + coin(rng) % 3;
    for (int i = 0; i < terms; ++i) {
      Element term = one();
      for (int l = 1; l <= level; ++l) term = term * t(l).pow(exp(rng));
      acc = acc + term;
    }
    return acc;
  };
  Element x = laurent(height);
  if (allow_fraction && coin(rng) == 0) {
    Element d = laurent(height);
    if (!d.is_zero()) x = x / d;
  }
  return x;
}

// Residual of an inexact reduction: every level contributes only terms of
// t-adic order >= precision.
bool negligible(const Element& r, int precision) {
  if (r.is_zero()) return true;
  const int j = r.level();
  if (j == 0 || valuation(r, j) < 0) return false;
  const Element c = residue(r, j);
  const Element rest = r + c;
  return negligible(c, precision) && (rest.is_zero() || valuation(rest, j) >= precision);
}

}  // namespace

TEST(Gf2k, FieldAxiomsExhaustive) {
  for (unsigned k = 1; k <= 4; ++k) {
    const uint32_t q = gf2k::order(k);
    for (uint32_t x = 0; x < q; ++x) {
      EXPECT_EQ(gf2k::square(k, gf2k::sqrt(k, x)), x);
      if (x) EXPECT_EQ(gf2k::mul(k, x, gf2k::inv(k, x)), 1u);
      for (uint32_t y = 0; y < q; ++y) {
        EXPECT_EQ(gf2k::mul(k, x, y), gf2k::mul(k, y, x));
        for (uint32_t w = 0; w < q; ++w)
          EXPECT_EQ(gf2k::mul(k, x, y ^ w), gf2k::mul(k, x, y) ^ gf2k::mul(k, x, w));
      }
    }
  }
}

TEST(Gf2k, TraceCountsHalfTheField) {
  for (unsigned k = 1; k <= 8; ++k) {
    uint32_t zeros = 0;
    for (uint32_t x = 0; x < gf2k::order(k); ++x) zeros += gf2k::trace(k, x) == 0;
    EXPECT_EQ(zeros, gf2k::order(k) / 2);
  }
  EXPECT_EQ(gf2k::trace_one_representative(1), 1u);
  EXPECT_EQ(gf2k::trace_one_representative(2), 2u);  // z, since Tr(1) = 0 in F4
}

TEST(FieldOps, Examples) {
  EXPECT_TRUE((one() + one()).is_zero());
  EXPECT_EQ((one() + t()).inverse() * (one() + t()), one());
  EXPECT_EQ(t() * t().inverse(), one());
  EXPECT_THROW(zero().inverse(), Error);
}

TEST(FieldOps, RandomAxioms) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    Element a = random_element(rng, 2), b = random_element(rng, 2), c = random_element(rng, 2);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a.square(), a * a);
    if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), one());
  }
}

TEST(FieldOps, CanonicalFormIsReduced) {
  Element x = (t() * t() + one()) / (t() + one());  // = 1 + t
  EXPECT_EQ(x, t() + one());
  EXPECT_EQ(x.level(), 1);
  EXPECT_EQ(((t(1) + t(2)) / (t(2) + t(1))), one());
  EXPECT_EQ(((t(1) + t(2)) / (t(2) + t(1))).level(), 0);
}

TEST(Valuation, Examples) {
  EXPECT_EQ(valuation(t().pow(2) + t().pow(3), 1), 2);
  EXPECT_EQ(valuation(t().inverse(), 1), -1);
  EXPECT_EQ(valuation(one() + t(), 1), 0);
  EXPECT_EQ(valuation(t(1) * t(2).pow(3), 1), 1);
  EXPECT_EQ(valuation(t(1) / (t(1) + t(2)), 1), 1);  // Gauss valuation
  EXPECT_THROW(valuation(zero(), 1), Error);
}

TEST(Valuation, Multiplicative) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    Element a = random_element(rng, 2), b = random_element(rng, 2);
    if (a.is_zero() || b.is_zero()) continue;
    for (int level = 1; level <= 2; ++level) EXPECT_EQ(valuation(a * b, level), valuation(a, level) + valuation(b, level));
  }
}

TEST(Residue, Examples) {
  EXPECT_EQ(residue(one() + t(), 1), one());
  EXPECT_EQ(residue(t() / (one() + t()), 1), zero());
  EXPECT_EQ(residue(t(1) + t(2), 2), t(1));
  EXPECT_THROW(residue(t().inverse(), 1), Error);
}

TEST(IsSquare, Examples) {
  for (uint32_t x = 0; x < 4; ++x) EXPECT_TRUE(is_square(Element::base(2, x)).is_square);
  auto sq = is_square(t().pow(2));
  ASSERT_TRUE(sq.is_square);
  EXPECT_EQ(*sq.root, t());
  EXPECT_FALSE(is_square(one() + t()).is_square);
}

TEST(IsSquare, OnePlusTHasNoTruncatedRoot) {
  // Oracle: no power series y with deg <= 8 satisfies y^2 == 1 + t mod t^9.
  for (uint32_t bits = 0; bits < (1u << 9); ++bits) {
    uint32_t sq = 0;
    for (int i = 0; i <= 8; ++i)
      if ((bits >> i) & 1u && 2 * i <= 8) sq |= 1u << (2 * i);
    EXPECT_NE(sq & 0x1FFu, 0b11u);
  }
}

TEST(SquareComponents, Reconstruct) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 150; ++i) {
    Element x = random_element(rng, 2);
    Element back = zero();
    for (const auto& [mask, y] : square_components(x)) {
      Element basis = one();
      for (int l = 1; l <= 2; ++l)
        if (mask & (1u << (l - 1))) basis = basis * t(l);
      back = back + basis * y.square();
    }
    EXPECT_EQ(back, x);
  }
}

TEST(IsSquare, ClosedUnderProducts) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    Element a = random_element(rng, 2), b = random_element(rng, 2);
    EXPECT_TRUE(is_square(a.square()).is_square);
    EXPECT_TRUE(is_square(a.square() * b.square()).is_square);
  }
}

TEST(WpReduce, BaseField) {
  auto r0 = wp_reduce(zero());
  EXPECT_TRUE(r0.is_in_wp);
  auto r1 = wp_reduce(one());
  EXPECT_FALSE(r1.is_in_wp);
  EXPECT_EQ(r1.reduced, one());
  EXPECT_TRUE(wp_reduce(Element::one(2)).is_in_wp);  // 1 = z^2 + z in F4
}

TEST(WpReduce, TIsInWp) {
  auto r = wp_reduce(t(), 16);
  EXPECT_TRUE(r.is_in_wp);
  EXPECT_FALSE(r.exact);
  // Oracle: series solution of y^2 + y = t computed coefficientwise, y_0 = 0.
  // y_n = [n == 1] + (n even ? y_{n/2} : 0).
  std::vector<int> y(16, 0);
  for (int n = 1; n < 16; ++n) y[n] = (n == 1) ^ (n % 2 == 0 ? y[n / 2] : 0);
  for (int n = 0; n < 16; ++n)
    EXPECT_EQ(series_coefficient(r.correction, 1, n), y[n] ? one() : zero()) << "n=" << n;
  Element residual = t() + wp(r.correction);
  EXPECT_GE(valuation(residual, 1), 16);
}

TEST(WpReduce, InverseTNotInWp) {
  auto r = wp_reduce(t().inverse());
  EXPECT_FALSE(r.is_in_wp);
  EXPECT_EQ(r.reduced, t().inverse());
  // Oracle: no rational y = p/q with deg p, deg q <= 6 over F2 solves y^2 + y = 1/t.
  auto from_bits = [](uint32_t bits) {
    Element acc = zero();
    for (int i = 0; i < 7; ++i)
      if ((bits >> i) & 1u) acc = acc + t().pow(i);
    return acc;
  };
  for (uint32_t q = 1; q < 128; ++q) {
    const Element qe = from_bits(q);
    for (uint32_t p = 0; p < 128; ++p) {
      const Element y = from_bits(p) / qe;
      EXPECT_NE(wp(y), t().inverse());
    }
  }
}

TEST(WpReduce, ReducesEvenPoles) {
  Element x = t().pow(-4) + t().pow(-3) + one();
  auto r = wp_reduce(x);
  EXPECT_FALSE(r.is_in_wp);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.reduced + wp(r.correction), x);
  EXPECT_TRUE(wp_reduce(t().pow(-2) + t().inverse()).is_in_wp);
}

TEST(WpReduce, ReductionIdentityAndAdditivity) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 150; ++i) {
    Element x = random_element(rng, 2);
    auto r = wp_reduce(x);
    Element residual = x + r.reduced + wp(r.correction);
    if (r.exact) {
      EXPECT_TRUE(residual.is_zero());
    } else {
      EXPECT_TRUE(negligible(residual, kDefaultPrecision)) << x;
    }
    Element s1 = random_element(rng, 2), s2 = random_element(rng, 2);
    EXPECT_TRUE(wp_reduce(wp(s1) + wp(s2)).is_in_wp);
    EXPECT_EQ(wp_reduce(x + wp(s1)).is_in_wp, r.is_in_wp);
  }
}

TEST(DlogCoords, Examples) {
  auto c1 = dlog_coords(t(1), 2);
  EXPECT_EQ(c1[0], t(1).inverse());
  EXPECT_TRUE(c1[1].is_zero());
  auto c2 = dlog_coords(t(1) * t(2), 2);
  EXPECT_EQ(c2[0], t(1).inverse());
  EXPECT_EQ(c2[1], t(2).inverse());
  EXPECT_TRUE(dlog_coords(t().pow(2), 1)[0].is_zero());
  EXPECT_THROW(dlog_coords(zero(), 1), Error);
}

TEST(DlogCoords, Additive) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    Element a = random_element(rng, 2), b = random_element(rng, 2);
    if (a.is_zero() || b.is_zero()) continue;
    auto ca = dlog_coords(a, 2), cb = dlog_coords(b, 2), cab = dlog_coords(a * b, 2);
    for (int l = 0; l < 2; ++l) EXPECT_EQ(cab[l], ca[l] + cb[l]);
  }
}
