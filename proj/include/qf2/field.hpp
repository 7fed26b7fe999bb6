#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qf2/errors.hpp"

namespace qf2 {

/// Descriptor of F_{2^k}((t_1))...((t_m)). Variable t_i sits at level i; level 0 is
/// the finite base field. The 2-basis of the tower is exactly {t_1, ..., t_m}.
struct FieldTower {
  unsigned base_exponent = 1;
  std::vector<std::string> variable_names;

  FieldTower() = default;
  FieldTower(unsigned k, std::vector<std::string> names);

  int height() const { return static_cast<int>(variable_names.size()); }
  /// Descriptor in the CLI grammar, e.g. `F2^2((t1))((t2))`.
  std::string descriptor() const;

  friend bool operator==(const FieldTower&, const FieldTower&) = default;
};

/// Exact element of a characteristic-2 Laurent tower, carried by an iterated
/// rational-function representative.
///
/// An element at level j > 0 is t_j^s * N(t_j) / D(t_j) with N, D polynomials whose
/// coefficients live at levels < j, N(0) != 0, D(0) == 1 and gcd(N, D) == 1. Elements
/// are always stored at the lowest level containing them, so structural equality is
/// field equality. Values are immutable and cheap to copy.
class Element {
 public:
  using Poly = std::vector<Element>;

  Element() = default;  ///< zero of GF(2)

  static Element zero(unsigned k) { return base(k, 0); }
  static Element one(unsigned k) { return base(k, 1); }
  static Element base(unsigned k, uint32_t bits);
  /// t_level^exponent.
  static Element monomial(unsigned k, int level, int exponent, const Element& coefficient);
  static Element variable(unsigned k, int level) { return monomial(k, level, 1, one(k)); }
  /// t_level^shift * num / den, normalized.
  static Element from_parts(unsigned k, int level, int shift, Poly num, Poly den);

  unsigned k() const { return k_; }
  int level() const { return level_; }
  bool is_zero() const { return level_ == 0 && bits_ == 0; }
  bool is_one() const { return level_ == 0 && bits_ == 1; }
  uint32_t base_bits() const { return bits_; }

  /// Level-j parts; only meaningful when level() > 0.
  int shift() const;
  const Poly& numerator() const;
  const Poly& denominator() const;

  Element operator+(const Element& y) const;
  Element operator-(const Element& y) const { return *this + y; }
  Element operator*(const Element& y) const;
  Element operator/(const Element& y) const { return *this * y.inverse(); }
  Element& operator+=(const Element& y) { return *this = *this + y; }
  Element& operator*=(const Element& y) { return *this = *this * y; }
  Element& operator/=(const Element& y) { return *this = *this / y; }
  Element inverse() const;
  Element square() const;
  Element pow(int exponent) const;

  friend bool operator==(const Element& x, const Element& y);
  friend bool operator!=(const Element& x, const Element& y) { return !(x == y); }
  /// Total order on canonical representatives (not a field order).
  friend int compare(const Element& x, const Element& y);
  friend bool operator<(const Element& x, const Element& y) { return compare(x, y) < 0; }

 private:
  struct Frac {
    int shift = 0;
    Poly num;
    Poly den;
  };

  uint8_t k_ = 1;
  int8_t level_ = 0;
  uint32_t bits_ = 0;
  std::shared_ptr<const Frac> frac_;

  static Element normalize(unsigned k, int level, int shift, Poly num, Poly den);
  const Frac& frac() const;
};

std::ostream& operator<<(std::ostream& os, const Element& x);
/// Fully parenthesized rational expression over 0, 1, z and the given variable
/// names; re-parses to an equal element.
std::string format_element(const Element& x, const std::vector<std::string>& names);

// Polynomial helpers over a coefficient field (coefficients are Elements of one
// lower level). Index = degree; results are trimmed.
namespace poly {
using Poly = Element::Poly;
void trim(Poly& p);
Poly add(const Poly& a, const Poly& b, unsigned k);
Poly mul(const Poly& a, const Poly& b, unsigned k);
Poly scale(const Poly& a, const Element& c);
/// Quotient and remainder of a by nonzero b.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, unsigned k);
Poly gcd(Poly a, Poly b, unsigned k);
Poly derivative(const Poly& a, unsigned k);
bool is_one(const Poly& a);
}  // namespace poly

/// Order of vanishing at t_level = 0 (Gauss valuation for inner levels).
int valuation(const Element& x, int level);
/// Constant term as a series in t_level; requires valuation >= 0.
Element residue(const Element& x, int level);
/// Coefficient of t_level^exponent in the Laurent expansion of x in t_level, where
/// level == x.level() (elements of lower level are constants).
Element series_coefficient(const Element& x, int level, int exponent);

/// Decomposition x = sum_M t^M * y_M^2 over the 2-basis monomials t^M, M a bitmask
/// over the variables (bit i-1 for t_i). Zero components are omitted.
std::map<unsigned, Element> square_components(const Element& x);

struct SquareTest {
  bool is_square = false;
  std::optional<Element> root;
};
SquareTest is_square(const Element& x);

/// Artin-Schreier map y -> y^2 + y.
inline Element wp(const Element& y) { return y.square() + y; }

struct WpNormalForm {
  Element reduced;
  bool is_in_wp = false;
  /// wp(correction) == input - reduced when exact; otherwise the residual
  /// input - reduced - wp(correction) has valuation >= the configured precision.
  Element correction;
  bool exact = true;
};

constexpr int kDefaultPrecision = 16;

WpNormalForm wp_reduce(const Element& x, int precision = kDefaultPrecision);

/// Exact ℘-shift of the polar part only: returns (x', s) with x = x' + wp(s) and
/// x' carrying no reducible negative-valuation terms in t_{x.level()}. `wild` is
/// true when an irreducible polar term remains.
struct PolarReduction {
  Element reduced;
  Element correction;
  bool wild = false;
};
PolarReduction reduce_polar(const Element& x);

/// Formal partial derivative in t_level.
Element partial(const Element& x, int level);
/// Coordinates of db/b over dt_1, ..., dt_m.
std::vector<Element> dlog_coords(const Element& b, int height);

}  // namespace qf2
