#include "qf2/invariants.hpp"

#include <algorithm>
#include <map>

#include "qf2/witt.hpp"

namespace qf2 {

SymbolSum CliffordSum::as_symbols() const {
  SymbolSum out(2);
  for (const auto& [a, b] : symbols) out.symbols.push_back({a, {b}});
  return out;
}

WpNormalForm arf(const QuadraticForm& f, int precision) {
  if (!f.nonsingular()) throw Error(ErrorKind::SingularInput, "Arf invariant of a singular form");
  Element sum = Element::zero(f.k);
  for (const auto& p : f.pairs) sum += p.a;
  return wp_reduce(sum, precision);
}

CliffordSum clifford(const QuadraticForm& f) {
  if (!f.nonsingular()) throw Error(ErrorKind::SingularInput, "Clifford invariant of a singular form");
  CliffordSum c;
  for (const auto& p : f.pairs) c.symbols.emplace_back(p.a, p.b);
  return simplify(c);
}

CliffordSum simplify(const CliffordSum& c) {
  // Merge equal second slots by additivity in the first, then equal first slots by
  // multiplicativity in the second, until nothing changes.
  std::vector<std::pair<Element, Element>> cur;
  for (const auto& [a, b] : c.symbols) {
    if (b.is_zero()) throw Error(ErrorKind::ZeroInput, "quaternion slot is zero");
    cur.emplace_back(a, b);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::pair<Element, Element>> next;
    for (auto [a, b] : cur) {
      if (a.is_zero() || is_square(b).is_square) {
        changed = true;
        continue;
      }
      const auto red = wp_reduce(a);
      if (red.is_in_wp) {
        changed = true;
        continue;
      }
      // [a, x^2 + xy + a y^2) = 0: detect b = value of [1, a] at small (x, y).
      if (red.exact && (b == Element::one(a.k()) + a || b == a)) {
        changed = true;
        continue;
      }
      bool merged = false;
      for (auto& [a2, b2] : next) {
        if (b2 == b) {
          a2 += a;
          merged = true;
        } else if (a2 == a) {
          b2 *= b;
          merged = true;
        }
        if (merged) break;
      }
      if (merged)
        changed = true;
      else
        next.emplace_back(a, b);
    }
    cur = std::move(next);
  }
  return CliffordSum{cur};
}

std::optional<bool> clifford_trivial(const CliffordSum& c) {
  const CliffordSum s = simplify(c);
  if (s.empty()) return true;
  return class_trivial(s.as_symbols());
}

Symbol e_map(const QuadraticPfister& p) { return pfister_to_symbol(p); }

bool iqn_vanishes(int n, int height) { return n >= height + 2; }

std::optional<bool> in_Iqn(const QuadraticForm& f, int n, int height) {
  if (!f.nonsingular()) throw Error(ErrorKind::SingularInput, "I_q^n membership of a singular form");
  if (n <= 1) return true;
  if (!arf(f).is_in_wp) return false;
  if (n == 2) return true;
  const auto cl = clifford_trivial(clifford(f));
  if (n == 3) return cl;
  if (cl && !*cl) return false;
  if (!iqn_vanishes(n, height)) return std::nullopt;
  try {
    return is_hyperbolic(f);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::UndecidableInstance) return std::nullopt;
    throw;
  }
}

}  // namespace qf2
