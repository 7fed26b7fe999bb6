#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qf2/cohomology.hpp"
#include "qf2/forms.hpp"

namespace qf2 {

/// Formal sum of quaternion symbols [a_i, b_i).
struct CliffordSum {
  std::vector<std::pair<Element, Element>> symbols;

  SymbolSum as_symbols() const;  ///< [a, b) -> a db/b
  bool empty() const { return symbols.empty(); }
};

/// Reduced Arf value; `precision` bounds the wp correction when it is not exact.
WpNormalForm arf(const QuadraticForm& f, int precision = kDefaultPrecision);
CliffordSum clifford(const QuadraticForm& f);
/// Applies the symbol calculus: [wp(s)+a, b) = [a, b), [a, b^2) = 0, bilinearity in
/// each slot, and [a, nu) = 0 for nu a value of [1, a] among the pair coefficients.
CliffordSum simplify(const CliffordSum& c);
std::optional<bool> clifford_trivial(const CliffordSum& c);

/// <<b_1, ..., b_{n-1}, a]] -> a db_1/b_1 ^ ... (degree = fold).
Symbol e_map(const QuadraticPfister& p);

/// I_q^n F vanishes for n >= height + 2 on the supported towers.
bool iqn_vanishes(int n, int height);

/// Membership of a nonsingular form in I_q^n F over a tower of the given height.
std::optional<bool> in_Iqn(const QuadraticForm& f, int n, int height);

}  // namespace qf2
