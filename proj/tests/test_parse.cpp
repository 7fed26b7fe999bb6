#include <gtest/gtest.h>

#include "helpers.hpp"
#include "qf2/errors.hpp"
#include "qf2/parse.hpp"
#include "qf2/sampling.hpp"

using namespace qf2;
using namespace qf2::testing;

namespace {

const FieldTower kTower(1, {"t1", "t2"});
const FieldTower kLaurent(1, {"t"});

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(ParseField, Descriptors) {
  EXPECT_EQ(parse::field("F2"), FieldTower(1, {}));
  EXPECT_EQ(parse::field("F4"), FieldTower(2, {}));
  EXPECT_EQ(parse::field("F2^3((u))"), FieldTower(3, {"u"}));
  EXPECT_EQ(parse::field("F2((t1))((t2))"), kTower);
  EXPECT_EQ(parse::field(kTower.descriptor()), kTower);
  EXPECT_EQ(kind_of([] { parse::field("F3"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse::field("F2((t))((t))"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse::field("F2((z))"); }), ErrorKind::ParseError);
}

TEST(ParseElement, Arithmetic) {
  EXPECT_EQ(parse::element("t1^2 + t1", kTower), t(1).square() + t(1));
  EXPECT_EQ(parse::element("t1 t2", kTower), t(1) * t(2));
  EXPECT_EQ(parse::element("1/(1+t2)", kTower), (one() + t(2)).inverse());
  EXPECT_EQ(parse::element("t1^-1", kTower), t(1).inverse());
  EXPECT_EQ(parse::element("3", kTower), one());
  EXPECT_EQ(parse::element("z^2+z", FieldTower(2, {})), Element::base(2, 2).square() + Element::base(2, 2));
}

TEST(ParseElement, ErrorsCarryColumns) {
  try {
    parse::element("t1 + s", kTower);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    EXPECT_NE(std::string(e.what()).find("column 6"), std::string::npos) << e.what();
  }
  EXPECT_EQ(kind_of([] { parse::element("1/0", kTower); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse::element("z", kTower); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse::element("(t1", kTower); }), ErrorKind::ParseError);
}

TEST(ParseElement, RoundTrip) {
  sampling::Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    Element x = sampling::slot(rng, 1, 2) + sampling::integral(rng, 1, 2);
    if (i % 3 == 0 && !x.is_zero()) x = (one() + t(2) * sampling::integral(rng, 1, 2)) / x;
    EXPECT_EQ(parse::element(format_element(x, kTower.variable_names), kTower), x) << format_element(x, {"t1", "t2"});
  }
  const FieldTower f4(2, {"t"});
  sampling::Rng rng2(3);
  for (int i = 0; i < 50; ++i) {
    const Element x = sampling::slot(rng2, 2, 1) + sampling::integral(rng2, 2, 1);
    EXPECT_EQ(parse::element(format_element(x, f4.variable_names), f4), x);
  }
}

TEST(ParseForm, Grammar) {
  EXPECT_EQ(parse::form("[1,t]", kLaurent), binary(one(), t()));
  EXPECT_EQ(parse::form("t*[1,1]", kLaurent), binary(t(), one()));
  EXPECT_EQ(parse::form("<<t,1]]", kLaurent), pfister_expand({{t()}, one()}));
  EXPECT_EQ(parse::form("<t>*[1,1]", kLaurent), tensor({{t()}}, binary(one(), one())));
  EXPECT_EQ(parse::form("<1,t>q", kLaurent), quasilinear_form({one(), t()}));
  EXPECT_EQ(parse::form("[1,t] + (t+1)*[1,1] + <t>q", kLaurent),
            orth_sum(orth_sum(binary(one(), t()), binary(t() + one(), one())), quasilinear_form({t()})));
  EXPECT_EQ(parse::form("0", kLaurent).dim(), 0);
  EXPECT_EQ(parse::form("[t,1]", kLaurent), binary(t(), t()));
  EXPECT_EQ(kind_of([] { parse::form("t", kLaurent); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse::form("[1,t]*[1,t]", kLaurent); }), ErrorKind::ParseError);
}

TEST(ParseForm, RoundTrip) {
  sampling::Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    QuadraticForm f = sampling::tame_form(rng, 1, 2, 1 + i % 3);
    if (i % 4 == 0) f.quasilinear.push_back(sampling::slot(rng, 1, 2));
    EXPECT_EQ(parse::form(format_form(f, kTower.variable_names), kTower), f) << format_form(f, kTower.variable_names);
  }
  const QuadraticPfister p{{t(1), t(2) + one()}, t(1).inverse()};
  EXPECT_EQ(parse::pfister(format_pfister(p, kTower.variable_names), kTower), p);
}

TEST(ParseSymbol, Grammar) {
  const auto s = parse::symbol_sum("(1+t2) d(t1*t2^2)/t1*t2^2 + d(t1)/t1", kTower);
  ASSERT_EQ(s.degree, 2);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.symbols[0].coefficient, one() + t(2));
  EXPECT_EQ(s.symbols[0].slots[0], t(1) * t(2).square());
  EXPECT_EQ(s.symbols[1].coefficient, one());

  const auto w = parse::symbol_sum("t1 d(t1)/t1 ^ d(1+t2)/(1+t2)", kTower);
  ASSERT_EQ(w.degree, 3);
  EXPECT_EQ(w.symbols[0].slots[1], one() + t(2));

  EXPECT_EQ(parse::symbol_sum("0", kTower, 3).degree, 3);
  EXPECT_EQ(parse::symbol_sum("t1 + 1", kTower).degree, 1);
  EXPECT_EQ(kind_of([] { parse::symbol_sum("t1 d(t1)/t2", kTower); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { parse::symbol_sum("d(t1)/t1 + d(t1)/t1 ^ d(t2)/t2", kTower); }), ErrorKind::ParseError);
}

TEST(ParseSymbol, RoundTrip) {
  sampling::Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    const int degree = 2 + i % 2;
    SymbolSum s(degree);
    for (int j = 0; j < 1 + i % 3; ++j) {
      Symbol x{sampling::slot(rng, 1, 2) + sampling::integral(rng, 1, 2), {}};
      if (x.coefficient.is_zero()) x.coefficient = one();
      for (int l = 1; l < degree; ++l) x.slots.push_back(sampling::slot(rng, 1, 2));
      s.symbols.push_back(x);
    }
    const auto text = format_sum(s, kTower.variable_names);
    const auto back = parse::symbol_sum(text, kTower);
    EXPECT_EQ(back.degree, s.degree) << text;
    EXPECT_EQ(back.symbols, s.symbols) << text;
  }
}
