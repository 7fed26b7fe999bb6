#pragma once

#include "qf2/field.hpp"

namespace qf2::testing {

inline Element one(unsigned k = 1) { return Element::one(k); }
inline Element zero(unsigned k = 1) { return Element::zero(k); }
inline Element t(int level = 1, unsigned k = 1) { return Element::variable(k, level); }
inline Element z() { return Element::base(2, 2); }

}  // namespace qf2::testing
