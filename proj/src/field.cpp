#include "qf2/field.hpp"

#include <algorithm>
#include <sstream>

#include "qf2/gf2k.hpp"

namespace qf2 {

FieldTower::FieldTower(unsigned k, std::vector<std::string> names)
    : base_exponent(k), variable_names(std::move(names)) {
  if (!gf2k::supported(k)) throw Error(ErrorKind::UnsupportedField, "base exponent " + std::to_string(k));
}

std::string FieldTower::descriptor() const {
  std::string out = base_exponent == 1 ? "F2" : "F2^" + std::to_string(base_exponent);
  for (const auto& name : variable_names) out += "((" + name + "))";
  return out;
}

// ---------------------------------------------------------------------------
// polynomials

namespace poly {

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly add(const Poly& a, const Poly& b, unsigned k) {
  Poly out(std::max(a.size(), b.size()), Element::zero(k));
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] = out[i] + b[i];
  trim(out);
  return out;
}

Poly mul(const Poly& a, const Poly& b, unsigned k) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Element::zero(k));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) out[i + j] = out[i + j] + a[i] * b[j];
  }
  trim(out);
  return out;
}

Poly scale(const Poly& a, const Element& c) {
  if (c.is_zero()) return {};
  Poly out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(x * c);
  return out;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, unsigned k) {
  if (b.empty()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  Poly rem = a;
  trim(rem);
  if (rem.size() < b.size()) return {{}, rem};
  Poly quot(rem.size() - b.size() + 1, Element::zero(k));
  const Element lead_inv = b.back().inverse();
  while (rem.size() >= b.size()) {
    const size_t shift = rem.size() - b.size();
    const Element c = rem.back() * lead_inv;
    quot[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) rem[shift + i] = rem[shift + i] + c * b[i];
    rem.pop_back();
    trim(rem);
  }
  trim(quot);
  return {quot, rem};
}

Poly gcd(Poly a, Poly b, unsigned k) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b, k).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly derivative(const Poly& a, unsigned k) {
  Poly out;
  for (size_t i = 1; i < a.size(); ++i) out.push_back(i % 2 == 1 ? a[i] : Element::zero(k));
  trim(out);
  return out;
}

bool is_one(const Poly& a) { return a.size() == 1 && a[0].is_one(); }

namespace {
Poly shifted(const Poly& a, int by, unsigned k) {
  if (by <= 0 || a.empty()) return a;
  Poly out(static_cast<size_t>(by), Element::zero(k));
  out.insert(out.end(), a.begin(), a.end());
  return out;
}

Poly squared(const Poly& a, unsigned k) {
  if (a.empty()) return {};
  Poly out(2 * a.size() - 1, Element::zero(k));
  for (size_t i = 0; i < a.size(); ++i) out[2 * i] = a[i].square();
  return out;
}
}  // namespace

}  // namespace poly

// ---------------------------------------------------------------------------
// Element

Element Element::base(unsigned k, uint32_t bits) {
  if (!gf2k::supported(k)) throw Error(ErrorKind::UnsupportedField, "base exponent " + std::to_string(k));
  Element e;
  e.k_ = static_cast<uint8_t>(k);
  e.bits_ = bits & (gf2k::order(k) - 1);
  return e;
}

Element Element::monomial(unsigned k, int level, int exponent, const Element& coefficient) {
  if (coefficient.is_zero()) return zero(k);
  if (level <= 0) return coefficient;
  if (coefficient.level() >= level)
    throw Error(ErrorKind::InvalidArgument, "monomial coefficient must live below its variable");
  return normalize(k, level, exponent, {coefficient}, {one(k)});
}

Element Element::from_parts(unsigned k, int level, int shift, Poly num, Poly den) {
  return normalize(k, level, shift, std::move(num), std::move(den));
}

const Element::Frac& Element::frac() const {
  if (!frac_) throw Error(ErrorKind::InvalidArgument, "fraction parts requested on a base-field element");
  return *frac_;
}

int Element::shift() const { return frac().shift; }
const Element::Poly& Element::numerator() const { return frac().num; }
const Element::Poly& Element::denominator() const { return frac().den; }

Element Element::normalize(unsigned k, int level, int shift, Poly num, Poly den) {
  poly::trim(num);
  poly::trim(den);
  if (den.empty()) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  if (num.empty()) return zero(k);
  auto strip_low = [](Poly& p) {
    size_t z = 0;
    while (z < p.size() && p[z].is_zero()) ++z;
    p.erase(p.begin(), p.begin() + static_cast<long>(z));
    return static_cast<int>(z);
  };
  shift += strip_low(num);
  shift -= strip_low(den);
  if (den.size() > 1 && num.size() > 1) {
    auto g = poly::gcd(num, den, k);
    if (g.size() > 1) {
      num = poly::divmod(num, g, k).first;
      den = poly::divmod(den, g, k).first;
    }
  }
  if (!den[0].is_one()) {
    const Element c = den[0].inverse();
    num = poly::scale(num, c);
    den = poly::scale(den, c);
  }
  if (shift == 0 && num.size() == 1 && den.size() == 1) return num[0];
  Element e;
  e.k_ = static_cast<uint8_t>(k);
  e.level_ = static_cast<int8_t>(level);
  e.frac_ = std::make_shared<const Frac>(Frac{shift, std::move(num), std::move(den)});
  return e;
}

namespace {
struct FracView {
  int shift;
  Element::Poly num;
  Element::Poly den;
};

FracView view_at(const Element& x, int level) {
  if (x.level() == level) return {x.shift(), x.numerator(), x.denominator()};
  return {0, {x}, {Element::one(x.k())}};
}

void check_k(const Element& x, const Element& y) {
  if (x.k() != y.k())
    throw Error(ErrorKind::FieldMismatch, "elements from GF(2^" + std::to_string(x.k()) + ") and GF(2^" +
                                              std::to_string(y.k()) + ")");
}
}  // namespace

Element Element::operator+(const Element& y) const {
  if (is_zero()) return y;
  if (y.is_zero()) return *this;
  check_k(*this, y);
  if (level_ == 0 && y.level_ == 0) return base(k_, bits_ ^ y.bits_);
  const int L = std::max(level_, y.level_);
  auto fx = view_at(*this, L);
  auto fy = view_at(y, L);
  const int s = std::min(fx.shift, fy.shift);
  Poly num, den;
  if (fx.den == fy.den) {
    num = poly::add(poly::shifted(fx.num, fx.shift - s, k_), poly::shifted(fy.num, fy.shift - s, k_), k_);
    den = fx.den;
  } else {
    num = poly::add(poly::shifted(poly::mul(fx.num, fy.den, k_), fx.shift - s, k_),
                    poly::shifted(poly::mul(fy.num, fx.den, k_), fy.shift - s, k_), k_);
    den = poly::mul(fx.den, fy.den, k_);
  }
  return normalize(k_, L, s, std::move(num), std::move(den));
}

Element Element::operator*(const Element& y) const {
  if (is_zero() || y.is_zero()) return zero(k_);
  check_k(*this, y);
  if (level_ == 0 && y.level_ == 0) return base(k_, gf2k::mul(k_, bits_, y.bits_));
  if (level_ != y.level_) {
    const Element& hi = level_ > y.level_ ? *this : y;
    const Element& lo = level_ > y.level_ ? y : *this;
    Element e;
    e.k_ = k_;
    e.level_ = hi.level_;
    e.frac_ = std::make_shared<const Frac>(Frac{hi.shift(), poly::scale(hi.numerator(), lo), hi.denominator()});
    return e;
  }
  const auto& a = frac();
  const auto& b = y.frac();
  Poly n1 = a.num, d1 = a.den, n2 = b.num, d2 = b.den;
  auto cancel = [this](Poly& n, Poly& d) {
    if (n.size() > 1 && d.size() > 1) {
      auto g = poly::gcd(n, d, k_);
      if (g.size() > 1) {
        n = poly::divmod(n, g, k_).first;
        d = poly::divmod(d, g, k_).first;
      }
    }
  };
  cancel(n1, d2);
  cancel(n2, d1);
  return normalize(k_, level_, a.shift + b.shift, poly::mul(n1, n2, k_), poly::mul(d1, d2, k_));
}

Element Element::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of 0");
  if (level_ == 0) return base(k_, gf2k::inv(k_, bits_));
  const auto& f = frac();
  return normalize(k_, level_, -f.shift, f.den, f.num);
}

Element Element::square() const {
  if (level_ == 0) return base(k_, gf2k::square(k_, bits_));
  const auto& f = frac();
  Element e;
  e.k_ = k_;
  e.level_ = level_;
  e.frac_ = std::make_shared<const Frac>(Frac{2 * f.shift, poly::squared(f.num, k_), poly::squared(f.den, k_)});
  return e;
}

Element Element::pow(int exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  Element result = one(k_), b = *this;
  while (exponent) {
    if (exponent & 1) result = result * b;
    b = b.square();
    exponent >>= 1;
  }
  return result;
}

bool operator==(const Element& x, const Element& y) {
  if (x.is_zero() && y.is_zero()) return true;
  if (x.k_ != y.k_ || x.level_ != y.level_) return false;
  if (x.level_ == 0) return x.bits_ == y.bits_;
  if (x.frac_ == y.frac_) return true;
  return x.frac_->shift == y.frac_->shift && x.frac_->num == y.frac_->num && x.frac_->den == y.frac_->den;
}

int compare(const Element& x, const Element& y) {
  auto cmp = [](auto a, auto b) { return a < b ? -1 : (a > b ? 1 : 0); };
  if (x.is_zero() || y.is_zero()) return cmp(!x.is_zero(), !y.is_zero());
  if (int c = cmp(x.level_, y.level_)) return c;
  if (x.level_ == 0) return cmp(x.bits_, y.bits_);
  const auto& a = *x.frac_;
  const auto& b = *y.frac_;
  if (int c = cmp(a.shift, b.shift)) return c;
  auto cmp_poly = [&](const Element::Poly& p, const Element::Poly& q) {
    if (int c = cmp(p.size(), q.size())) return c;
    for (size_t i = 0; i < p.size(); ++i)
      if (int c = compare(p[i], q[i])) return c;
    return 0;
  };
  if (int c = cmp_poly(a.num, b.num)) return c;
  return cmp_poly(a.den, b.den);
}

// ---------------------------------------------------------------------------
// valuations and residues

namespace {
int gauss_valuation(const Element::Poly& p, int level) {
  int best = 1 << 30;
  for (const auto& c : p)
    if (!c.is_zero()) best = std::min(best, valuation(c, level));
  return best;
}

Element poly_element(unsigned k, int level, Element::Poly p) {
  return Element::from_parts(k, level, 0, std::move(p), {Element::one(k)});
}
}  // namespace

int valuation(const Element& x, int level) {
  if (x.is_zero()) throw Error(ErrorKind::ZeroInput, "valuation of 0");
  if (level < 1) throw Error(ErrorKind::InvalidArgument, "valuation level must be >= 1");
  if (level > x.level()) return 0;
  if (level == x.level()) return x.shift();
  return gauss_valuation(x.numerator(), level) - gauss_valuation(x.denominator(), level);
}

Element residue(const Element& x, int level) {
  if (x.is_zero() || level > x.level()) return x;
  if (level < 1) throw Error(ErrorKind::InvalidArgument, "residue level must be >= 1");
  if (valuation(x, level) < 0) throw Error(ErrorKind::NegativeValuation, "residue of an element with a pole");
  const unsigned k = x.k();
  if (level == x.level()) return x.shift() > 0 ? Element::zero(k) : x.numerator()[0];
  const int c = gauss_valuation(x.denominator(), level);
  const Element unit = Element::monomial(k, level, -c, Element::one(k));
  Element::Poly num, den;
  for (const auto& a : x.numerator()) num.push_back(residue(a * unit, level));
  for (const auto& a : x.denominator()) den.push_back(residue(a * unit, level));
  return Element::from_parts(k, x.level(), x.shift(), std::move(num), std::move(den));
}

// Coefficients of t_level^0 .. t_level^(count-1) of x, which must have level == level
// and nonnegative valuation.
static std::vector<Element> series_prefix(const Element& x, int level, int count) {
  const unsigned k = x.k();
  std::vector<Element> c(static_cast<size_t>(count), Element::zero(k));
  const auto& num = x.numerator();
  const auto& den = x.denominator();
  (void)level;
  const int s = x.shift();
  // x = t^s * sum_i q_i t^i with q = num / den computed by the usual recurrence.
  std::vector<Element> q(static_cast<size_t>(std::max(0, count - s)), Element::zero(k));
  for (size_t i = 0; i < q.size(); ++i) {
    Element v = i < num.size() ? num[i] : Element::zero(k);
    for (size_t jj = 1; jj <= i && jj < den.size(); ++jj) v = v + den[jj] * q[i - jj];
    q[i] = v;
  }
  for (size_t i = 0; i < q.size(); ++i) c[i + static_cast<size_t>(s)] = q[i];
  return c;
}

Element series_coefficient(const Element& x, int level, int exponent) {
  const unsigned k = x.k();
  if (x.is_zero()) return x;
  if (level > x.level()) return exponent == 0 ? x : Element::zero(k);
  if (level < x.level())
    throw Error(ErrorKind::InvalidArgument, "series coefficients are taken in the outermost variable");
  const int idx = exponent - x.shift();
  if (idx < 0) return Element::zero(k);
  const auto& num = x.numerator();
  const auto& den = x.denominator();
  std::vector<Element> c(static_cast<size_t>(idx) + 1, Element::zero(k));
  for (int i = 0; i <= idx; ++i) {
    Element v = static_cast<size_t>(i) < num.size() ? num[static_cast<size_t>(i)] : Element::zero(k);
    for (int j = 1; j <= i && static_cast<size_t>(j) < den.size(); ++j)
      v = v + den[static_cast<size_t>(j)] * c[static_cast<size_t>(i - j)];
    c[static_cast<size_t>(i)] = v;
  }
  return c.back();
}

// ---------------------------------------------------------------------------
// squares

std::map<unsigned, Element> square_components(const Element& x) {
  std::map<unsigned, Element> out;
  if (x.is_zero()) return out;
  const unsigned k = x.k();
  if (x.level() == 0) {
    out.emplace(0u, Element::base(k, gf2k::sqrt(k, x.base_bits())));
    return out;
  }
  const int j = x.level();
  const auto prod = poly::mul(x.numerator(), x.denominator(), k);
  for (size_t i = 0; i < prod.size(); ++i) {
    if (prod[i].is_zero()) continue;
    const int e = x.shift() + static_cast<int>(i);
    const int eps = e & 1;
    const int half = (e - eps) / 2;
    for (const auto& [mask, z] : square_components(prod[i])) {
      const unsigned m = mask | (eps ? (1u << (j - 1)) : 0u);
      auto term = Element::monomial(k, j, half, z);
      auto it = out.find(m);
      if (it == out.end())
        out.emplace(m, term);
      else
        it->second = it->second + term;
    }
  }
  const Element den_inv = poly_element(k, j, x.denominator()).inverse();
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero()) {
      it = out.erase(it);
    } else {
      it->second = it->second * den_inv;
      ++it;
    }
  }
  return out;
}

SquareTest is_square(const Element& x) {
  auto comps = square_components(x);
  if (comps.empty()) return {true, Element::zero(x.k())};
  if (comps.size() == 1 && comps.begin()->first == 0) return {true, comps.begin()->second};
  return {false, std::nullopt};
}

// ---------------------------------------------------------------------------
// Artin-Schreier reduction

PolarReduction reduce_polar(const Element& x) {
  const unsigned k = x.k();
  PolarReduction out{x, Element::zero(k), false};
  if (x.level() == 0 || x.shift() >= 0) return out;
  const int j = x.level();
  const int v = x.shift();
  std::vector<Element> tail;  // tail[i] is the coefficient of t^(v+i)
  for (int e = v; e < 0; ++e) tail.push_back(series_coefficient(x, j, e));
  Element corr = Element::zero(k);
  for (int e = v; e < 0; ++e) {
    const Element c = tail[static_cast<size_t>(e - v)];
    if (c.is_zero()) continue;
    if (e % 2 == 0) {
      // Shift away the square component; whatever is left is irreducible.
      auto comps = square_components(c);
      auto it = comps.find(0u);
      if (it != comps.end()) {
        const Element& d = it->second;
        const int half = e / 2;
        tail[static_cast<size_t>(e - v)] = c + d.square();
        tail[static_cast<size_t>(half - v)] = tail[static_cast<size_t>(half - v)] + d;
        corr = corr + Element::monomial(k, j, half, d);
      }
      if (tail[static_cast<size_t>(e - v)].is_zero()) continue;
    }
    out.wild = true;
  }
  out.correction = corr;
  out.reduced = x + wp(corr);
  return out;
}

WpNormalForm wp_reduce(const Element& x, int precision) {
  const unsigned k = x.k();
  if (x.level() == 0) {
    const uint32_t bits = x.base_bits();
    if (gf2k::trace(k, bits) == 0)
      return {Element::zero(k), true, Element::base(k, gf2k::artin_schreier_root(k, bits)), true};
    const uint32_t rep = gf2k::trace_one_representative(k);
    return {Element::base(k, rep), false, Element::base(k, gf2k::artin_schreier_root(k, bits ^ rep)), true};
  }
  const int j = x.level();
  auto polar = reduce_polar(x);
  Element tail = Element::zero(k);
  if (!polar.reduced.is_zero() && polar.reduced.level() == j && polar.reduced.shift() < 0) {
    for (int e = polar.reduced.shift(); e < 0; ++e)
      tail = tail + Element::monomial(k, j, e, series_coefficient(polar.reduced, j, e));
  }
  const Element rest = polar.reduced + tail;
  const Element constant = residue(rest, j);
  const Element positive = rest + constant;
  auto sub = wp_reduce(constant, precision);

  // Truncated Hensel correction sum_i positive^(2^i), built on the series of
  // `positive` so the Frobenius powers never leave polynomial arithmetic.
  Element hensel = Element::zero(k);
  if (!positive.is_zero() && valuation(positive, j) < precision) {
    const auto coeffs = series_prefix(positive, j, precision);
    Element::Poly acc(static_cast<size_t>(precision), Element::zero(k));
    for (int e = 1; e < precision; ++e) {
      Element c = coeffs[static_cast<size_t>(e)];
      for (int f = e; f < precision && !c.is_zero(); f *= 2) {
        acc[static_cast<size_t>(f)] = acc[static_cast<size_t>(f)] + c;
        c = c.square();
      }
    }
    poly::trim(acc);
    if (!acc.empty()) hensel = Element::from_parts(k, j, 0, acc, {Element::one(k)});
  }
  return {tail + sub.reduced, tail.is_zero() && sub.is_in_wp, polar.correction + sub.correction + hensel,
          sub.exact && positive.is_zero()};
}

// ---------------------------------------------------------------------------
// derivations

Element partial(const Element& x, int level) {
  const unsigned k = x.k();
  if (level < 1) throw Error(ErrorKind::InvalidArgument, "derivative level must be >= 1");
  if (x.is_zero() || level > x.level()) return Element::zero(k);
  const int j = x.level();
  const auto& num = x.numerator();
  const auto& den = x.denominator();
  if (level == j) {
    Element dlog = (x.shift() & 1) ? Element::monomial(k, j, -1, Element::one(k)) : Element::zero(k);
    auto dn = poly::derivative(num, k);
    if (!dn.empty()) dlog = dlog + poly_element(k, j, dn) / poly_element(k, j, num);
    auto dd = poly::derivative(den, k);
    if (!dd.empty()) dlog = dlog + poly_element(k, j, dd) / poly_element(k, j, den);
    return x * dlog;
  }
  Element::Poly dn, dd;
  for (const auto& c : num) dn.push_back(partial(c, level));
  for (const auto& c : den) dd.push_back(partial(c, level));
  auto top = poly::add(poly::mul(dn, den, k), poly::mul(num, dd, k), k);
  if (top.empty()) return Element::zero(k);
  return Element::from_parts(k, j, x.shift(), top, poly::mul(den, den, k));
}

std::vector<Element> dlog_coords(const Element& b, int height) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroInput, "dlog of 0");
  const Element inv = b.inverse();
  std::vector<Element> out;
  for (int i = 1; i <= height; ++i) out.push_back(partial(b, i) * inv);
  return out;
}

// ---------------------------------------------------------------------------
// printing

namespace {
std::string format_base(const Element& x) {
  const uint32_t bits = x.base_bits();
  if (bits <= 1) return bits ? "1" : "0";
  std::vector<std::string> terms;
  for (int i = 31; i >= 0; --i) {
    if (!((bits >> i) & 1u)) continue;
    terms.push_back(i == 0 ? "1" : (i == 1 ? "z" : "z^" + std::to_string(i)));
  }
  if (terms.size() == 1) return terms[0];
  std::string out = "(";
  for (size_t i = 0; i < terms.size(); ++i) out += (i ? "+" : "") + terms[i];
  return out + ")";
}

std::string format_terms(const Element::Poly& p, int shift, const std::string& var,
                         const std::vector<std::string>& names, size_t& count) {
  std::string out;
  count = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i].is_zero()) continue;
    const int e = shift + static_cast<int>(i);
    std::string mono = e == 0 ? "" : (e == 1 ? var : var + "^" + std::to_string(e));
    std::string coef = format_element(p[i], names);
    std::string term;
    if (mono.empty())
      term = coef;
    else if (p[i].is_one())
      term = mono;
    else
      term = coef + "*" + mono;
    out += (count++ ? "+" : "") + term;
  }
  return out;
}
}  // namespace

std::string format_element(const Element& x, const std::vector<std::string>& names) {
  if (x.level() == 0) return format_base(x);
  const int j = x.level();
  const std::string var =
      static_cast<size_t>(j) <= names.size() ? names[static_cast<size_t>(j - 1)] : "t" + std::to_string(j);
  size_t nn = 0, nd = 0;
  const std::string num = format_terms(x.numerator(), x.shift(), var, names, nn);
  if (poly::is_one(x.denominator())) return nn == 1 ? num : "(" + num + ")";
  const std::string den = format_terms(x.denominator(), 0, var, names, nd);
  return "((" + num + ")/(" + den + "))";
}

std::ostream& operator<<(std::ostream& os, const Element& x) {
  // Default variable names t1..t9; use format_element for tower-specific names.
  std::vector<std::string> names;
  for (int i = 1; i <= 9; ++i) names.push_back("t" + std::to_string(i));
  return os << format_element(x, names);
}

}  // namespace qf2
