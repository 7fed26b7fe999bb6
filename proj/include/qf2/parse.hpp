#pragma once

#include <string>

#include "qf2/cohomology.hpp"
#include "qf2/forms.hpp"

namespace qf2::parse {

/// `F2`, `F4`, `F2^k`, `F<2^k>`, followed by `((name))` per variable.
FieldTower field(const std::string& text);

/// Rational expressions over 0, 1, z, the tower's variables, + * / ^ and
/// parentheses; juxtaposition multiplies.
Element element(const std::string& text, const FieldTower& field);

/// `[1,a]`, `b*[1,a]`, `<<b1,...,a]]`, `<b1,...,bk>` (a bilinear Pfister factor),
/// `<c1,...,cs>q`, `+` for orthogonal sum, `*` for scaling and tensor, `0`.
QuadraticForm form(const std::string& text, const FieldTower& field);

QuadraticPfister pfister(const std::string& text, const FieldTower& field);

/// `a d(b1)/b1 ^ d(b2)/b2 + ...`; a sum without slots is one degree-1 class and `0`
/// is the trivial class of degree `zero_degree`.
SymbolSum symbol_sum(const std::string& text, const FieldTower& field, int zero_degree = 2);

}  // namespace qf2::parse
