#pragma once

#include <optional>
#include <random>
#include <vector>

#include "qf2/forms.hpp"

namespace qf2::sampling {

using Rng = std::mt19937_64;

/// Nonzero base-field element.
Element base_unit(Rng& rng, unsigned k);
/// Element with nonnegative valuation at every level: base constants plus
/// monomials with exponents in [0, 2].
Element integral(Rng& rng, unsigned k, int height);
/// Nonzero element c * t^e * (optional 1 + t_i factor), exponents in [-2, 2].
Element slot(Rng& rng, unsigned k, int height);
/// Tame nonsingular form: pair coefficients from `slot`, last slots `integral`.
QuadraticForm tame_form(Rng& rng, unsigned k, int height, int pairs);
/// Pfister form with bilinear slots from `slot` and an integral last slot.
QuadraticPfister tame_pfister(Rng& rng, unsigned k, int height, int fold);
/// First anisotropic draw of tame_pfister within `tries` attempts.
std::optional<QuadraticPfister> anisotropic_pfister(Rng& rng, unsigned k, int height, int fold, int tries = 64);
/// Random elementary move that keeps a tame form tame.
Move tame_move(Rng& rng, const QuadraticForm& f, int height);
/// Apply `steps` random tame moves.
QuadraticForm rechain(Rng& rng, QuadraticForm f, int height, int steps, std::vector<Move>* log = nullptr);

}  // namespace qf2::sampling
