#include "qf2/sampling.hpp"

#include "qf2/gf2k.hpp"
#include "qf2/witt.hpp"

namespace qf2::sampling {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Element t_power(unsigned k, int level, int e) { return Element::monomial(k, level, e, Element::one(k)); }

bool tame_valuation(const Element& a) {
  for (int l = a.level(); l >= 1; --l) {
    if (a.is_zero()) return true;
    if (valuation(a, l) < 0) return false;
  }
  return true;
}

}  // namespace

Element base_unit(Rng& rng, unsigned k) {
  return Element::base(k, static_cast<uint32_t>(uniform(rng, 1, static_cast<int>(gf2k::order(k)) - 1)));
}

Element integral(Rng& rng, unsigned k, int height) {
  Element acc = Element::zero(k);
  if (uniform(rng, 0, 1)) acc += base_unit(rng, k);
  const int terms = uniform(rng, 0, 2);
  for (int i = 0; i < terms && height > 0; ++i) {
    Element m = base_unit(rng, k);
    for (int l = 1; l <= height; ++l) m *= t_power(k, l, uniform(rng, 0, 2));
    acc += m;
  }
  return acc;
}

Element slot(Rng& rng, unsigned k, int height) {
  Element m = base_unit(rng, k);
  for (int l = 1; l <= height; ++l) m *= t_power(k, l, uniform(rng, -2, 2));
  if (height > 0 && uniform(rng, 0, 3) == 0) m *= Element::one(k) + t_power(k, uniform(rng, 1, height), 1);
  return m;
}

QuadraticForm tame_form(Rng& rng, unsigned k, int height, int pairs) {
  QuadraticForm f{k, {}, {}};
  for (int i = 0; i < pairs; ++i) f.pairs.push_back({slot(rng, k, height), integral(rng, k, height)});
  return f;
}

QuadraticPfister tame_pfister(Rng& rng, unsigned k, int height, int fold) {
  QuadraticPfister p;
  for (int i = 0; i + 1 < fold; ++i) p.bilinear_slots.push_back(slot(rng, k, height));
  p.last = integral(rng, k, height);
  return p;
}

std::optional<QuadraticPfister> anisotropic_pfister(Rng& rng, unsigned k, int height, int fold, int tries) {
  for (int i = 0; i < tries; ++i) {
    auto p = tame_pfister(rng, k, height, fold);
    if (isotropy(pfister_expand(p)).kind == IsoKind::Anisotropic) return p;
  }
  return std::nullopt;
}

Move tame_move(Rng& rng, const QuadraticForm& f, int height) {
  const unsigned k = f.k;
  const int r = static_cast<int>(f.pairs.size());
  for (int attempt = 0; attempt < 32; ++attempt) {
    Move m{static_cast<MoveKind>(uniform(rng, 0, 3)), uniform(rng, 0, r - 1), uniform(rng, 0, r - 1), {}, {}, {}};
    switch (m.kind) {
      case MoveKind::WpShift:
        m.s = integral(rng, k, height);
        return m;
      case MoveKind::NormScale: {
        m.x = integral(rng, k, height);
        m.y = integral(rng, k, height);
        const Element nu = m.x.square() + m.x * m.y + f.pairs[m.i].a * m.y.square();
        if (!nu.is_zero()) return m;
        break;
      }
      case MoveKind::Swap:
        return m;
      case MoveKind::TwoPair: {
        if (r < 2 || m.i == m.j) break;
        const QuadraticForm g = apply_move(f, m);
        if (tame_valuation(g.pairs[m.i].a) && tame_valuation(g.pairs[m.j].a)) return m;
        break;
      }
    }
  }
  return Move{MoveKind::Swap, 0, 0, {}, {}, {}};
}

QuadraticForm rechain(Rng& rng, QuadraticForm f, int height, int steps, std::vector<Move>* log) {
  if (f.pairs.empty()) return f;
  for (int i = 0; i < steps; ++i) {
    const Move m = tame_move(rng, f, height);
    f = apply_move(f, m);
    if (log) log->push_back(m);
  }
  return f;
}

}  // namespace qf2::sampling
