#include "qf2/cohomology.hpp"

#include <algorithm>
#include <sstream>

#include "qf2/gf2k.hpp"
#include "qf2/witt.hpp"

namespace qf2 {

SymbolSum::SymbolSum(int n, std::vector<Symbol> s) : degree(n), symbols(std::move(s)) {
  for (const auto& x : symbols)
    if (x.degree() != n) throw Error(ErrorKind::InvalidArgument, "symbol degree does not match the sum");
}

SymbolSum operator+(const SymbolSum& x, const SymbolSum& y) {
  if (x.empty()) return y;
  if (y.empty()) return x;
  if (x.degree != y.degree) throw Error(ErrorKind::InvalidArgument, "adding classes of different degrees");
  SymbolSum out = x;
  out.symbols.insert(out.symbols.end(), y.symbols.begin(), y.symbols.end());
  return out;
}

SymbolSum operator+(const SymbolSum& x, const Symbol& s) { return x + SymbolSum(s.degree(), {s}); }

int sum_level(const SymbolSum& s) {
  int j = 0;
  for (const auto& x : s.symbols) {
    j = std::max(j, x.coefficient.level());
    for (const auto& b : x.slots) j = std::max(j, b.level());
  }
  return j;
}

namespace {

Element t_power(unsigned k, int level, int e) { return Element::monomial(k, level, e, Element::one(k)); }

unsigned sum_k(const SymbolSum& s) { return s.symbols.empty() ? 1u : s.symbols.front().coefficient.k(); }

}  // namespace

DifferentialForm to_differential(const SymbolSum& s, int height) {
  DifferentialForm w;
  w.degree = s.degree - 1;
  w.height = height;
  for (const auto& sym : s.symbols) {
    if (sym.coefficient.is_zero()) continue;
    std::map<std::vector<int>, Element> acc{{{}, sym.coefficient}};
    for (const auto& b : sym.slots) {
      const auto d = dlog_coords(b, height);
      std::map<std::vector<int>, Element> next;
      for (const auto& [J, c] : acc) {
        for (int i = 0; i < height; ++i) {
          if (d[i].is_zero() || std::find(J.begin(), J.end(), i + 1) != J.end()) continue;
          auto JJ = J;
          JJ.insert(std::upper_bound(JJ.begin(), JJ.end(), i + 1), i + 1);
          const Element v = c * d[i];
          auto it = next.find(JJ);
          if (it == next.end())
            next.emplace(JJ, v);
          else
            it->second += v;
        }
      }
      acc = std::move(next);
    }
    for (const auto& [J, c] : acc) {
      auto it = w.coords.find(J);
      if (it == w.coords.end())
        w.coords.emplace(J, c);
      else
        it->second += c;
    }
  }
  for (auto it = w.coords.begin(); it != w.coords.end();) it = it->second.is_zero() ? w.coords.erase(it) : std::next(it);
  return w;
}

SymbolSum basis_rewrite(const DifferentialForm& w, unsigned k) {
  SymbolSum out(w.degree + 1);
  for (const auto& [J, c] : w.coords) {
    Symbol s{c, {}};
    for (int j : J) {
      s.coefficient *= t_power(k, j, 1);
      s.slots.push_back(t_power(k, j, 1));
    }
    out.symbols.push_back(std::move(s));
  }
  return out;
}

ResidueSplit symbol_residue(const SymbolSum& s, int level) {
  const int n = s.degree;
  ResidueSplit out{SymbolSum(n), SymbolSum(std::max(1, n - 1))};
  for (const auto& sym : s.symbols) {
    Element a = sym.coefficient;
    if (a.is_zero()) continue;
    if (a.level() == level) {
      const auto red = reduce_polar(a);
      if (red.wild) throw Error(ErrorKind::WildSymbol, "coefficient has an irreducible pole");
      a = red.reduced;
      if (a.level() == level) a = residue(a, level);
    }
    if (a.is_zero()) continue;
    std::vector<Element> units;
    std::vector<int> odd;
    for (size_t i = 0; i < sym.slots.size(); ++i) {
      const Element& b = sym.slots[i];
      if (b.level() < level) {
        units.push_back(b);
        continue;
      }
      const int v = valuation(b, level);
      units.push_back(residue(b * t_power(b.k(), level, -v), level));
      if (v & 1) odd.push_back(static_cast<int>(i));
    }
    out.unramified.symbols.push_back({a, units});
    for (int i : odd) {
      Symbol r{a, {}};
      for (size_t l = 0; l < units.size(); ++l)
        if (static_cast<int>(l) != i) r.slots.push_back(units[l]);
      out.ramified.symbols.push_back(std::move(r));
    }
  }
  return out;
}

SymbolSum simplify(const SymbolSum& s) {
  std::map<std::vector<Element>, Element> grouped;
  std::vector<std::vector<Element>> order;
  for (const auto& sym : s.symbols) {
    if (sym.coefficient.is_zero()) continue;
    auto slots = sym.slots;
    bool dead = false;
    for (const auto& b : slots) {
      if (b.is_zero()) throw Error(ErrorKind::ZeroInput, "symbol slot is zero");
      if (is_square(b).is_square) dead = true;
    }
    std::sort(slots.begin(), slots.end());
    if (std::adjacent_find(slots.begin(), slots.end()) != slots.end()) dead = true;
    if (dead) continue;
    auto it = grouped.find(slots);
    if (it == grouped.end()) {
      grouped.emplace(slots, sym.coefficient);
      order.push_back(slots);
    } else {
      it->second += sym.coefficient;
    }
  }
  SymbolSum out(s.degree);
  for (const auto& slots : order) {
    const Element& a = grouped.at(slots);
    if (a.is_zero() || wp_reduce(a).is_in_wp) continue;
    out.symbols.push_back({a, slots});
  }
  return out;
}

std::optional<bool> class_trivial(const SymbolSum& input) {
  const SymbolSum s = simplify(input);
  if (s.empty()) return true;
  if (s.degree == 1) return false;  // simplify merged everything into one non-wp coefficient
  const int j = sum_level(s);
  if (j == 0) return true;  // H^n of a finite field vanishes for n >= 2
  if (to_differential(s, j).is_zero()) return true;
  std::optional<bool> verdict;
  try {
    const auto split = symbol_residue(s, j);
    const auto u = class_trivial(split.unramified);
    const auto r = class_trivial(split.ramified);
    if ((u && !*u) || (r && !*r)) return false;
    if (u && r) return true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::WildSymbol) throw;
  }
  if (s.size() == 1) {
    // A symbol vanishes iff its Pfister form is hyperbolic, iff it is isotropic.
    const auto v = isotropy(pfister_expand(symbol_to_pfister(s.symbols.front())));
    if (v.kind != IsoKind::Undecided) verdict = v.kind == IsoKind::Isotropic;
  }
  return verdict;
}

QuadraticPfister symbol_to_pfister(const Symbol& s) { return {s.slots, s.coefficient}; }

Symbol pfister_to_symbol(const QuadraticPfister& p) { return {p.last, p.bilinear_slots}; }

namespace {

std::vector<std::vector<int>> exponent_vectors(int height, int lo, int hi) {
  std::vector<std::vector<int>> out{{}};
  for (int l = 0; l < height; ++l) {
    std::vector<std::vector<int>> next;
    for (const auto& e : out)
      for (int x = lo; x <= hi; ++x) {
        auto ee = e;
        ee.push_back(x);
        next.push_back(std::move(ee));
      }
    out = std::move(next);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int sa = 0, sb = 0;
    for (int x : a) sa += std::abs(x);
    for (int x : b) sb += std::abs(x);
    return sa < sb;
  });
  return out;
}

Element monomial(unsigned k, const std::vector<int>& e) {
  Element m = Element::one(k);
  for (size_t l = 0; l < e.size(); ++l)
    if (e[l]) m *= t_power(k, static_cast<int>(l) + 1, e[l]);
  return m;
}

}  // namespace

std::vector<Element> coefficient_pool(unsigned k, int height, size_t limit) {
  std::vector<Element> pool;
  const uint32_t units = std::min<uint32_t>(gf2k::order(k) - 1, 3);
  const auto exps = exponent_vectors(height, -2, 2);
  for (const auto& e : exps)
    for (uint32_t u = 1; u <= units; ++u) pool.push_back(Element::base(k, u) * monomial(k, e));
  for (const auto& e : exps) {
    if (std::all_of(e.begin(), e.end(), [](int x) { return x == 0; })) continue;
    pool.push_back(Element::one(k) + monomial(k, e));
  }
  if (pool.size() > limit) pool.resize(limit);
  return pool;
}

std::vector<Element> slot_pool(unsigned k, int height, size_t limit) {
  std::vector<Element> pool;
  for (const auto& e : exponent_vectors(height, 0, 1)) {
    if (std::all_of(e.begin(), e.end(), [](int x) { return x == 0; })) continue;
    pool.push_back(monomial(k, e));
  }
  for (const auto& e : exponent_vectors(height, -2, 2)) {
    if (std::all_of(e.begin(), e.end(), [](int x) { return x == 0; })) continue;
    pool.push_back(Element::one(k) + monomial(k, e));
  }
  if (pool.size() > limit) pool.resize(limit);
  return pool;
}

SymbolLength symbol_length_exact(const SymbolSum& s, long budget) {
  const auto trivial = class_trivial(s);
  if (!trivial) throw Error(ErrorKind::UndecidableClass, "class triviality is undecidable for this sum");
  SymbolLength out;
  if (*trivial) {
    out.exact = true;
    out.expression = SymbolSum(s.degree);
    return out;
  }
  const unsigned k = sum_k(s);
  const int h = sum_level(s);
  SymbolSum rewritten = s.degree == 1 ? simplify(s) : basis_rewrite(to_differential(s, h), k);
  if (rewritten.size() <= 1) {
    out.value = 1;
    out.exact = true;
    out.expression = s.degree == 1 ? rewritten : simplify(s).size() == 1 ? simplify(s) : rewritten;
    return out;
  }
  // Look for a single symbol c dlog(b_1) ^ ... in the pools.
  const auto cpool = coefficient_pool(k, h, 128);
  const auto spool = slot_pool(k, h, 64);
  const int slots = s.degree - 1;
  std::vector<int> idx(slots);
  for (int i = 0; i < slots; ++i) idx[i] = i;
  const int ns = static_cast<int>(spool.size());
  while (out.candidates < budget && slots <= ns) {
    std::vector<Element> chosen;
    for (int i : idx) chosen.push_back(spool[i]);
    for (const auto& c : cpool) {
      if (++out.candidates > budget) break;
      const Symbol cand{c, chosen};
      const auto t = class_trivial(s + cand);
      if (t && *t) {
        out.value = 1;
        out.exact = true;
        out.expression = SymbolSum(s.degree, {cand});
        return out;
      }
    }
    int i = slots - 1;
    while (i >= 0 && idx[i] == ns - slots + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int l = i + 1; l < slots; ++l) idx[l] = idx[l - 1] + 1;
  }
  out.value = static_cast<int>(rewritten.size());
  out.exact = false;
  out.expression = rewritten;
  return out;
}

std::string format_symbol(const Symbol& s, const std::vector<std::string>& names) {
  std::ostringstream os;
  os << format_element(s.coefficient, names);
  for (size_t i = 0; i < s.slots.size(); ++i) {
    const auto b = format_element(s.slots[i], names);
    os << (i ? " ^ " : " ") << "d(" << b << ")/" << b;
  }
  return os.str();
}

std::string format_sum(const SymbolSum& s, const std::vector<std::string>& names) {
  if (s.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < s.symbols.size(); ++i) {
    if (i) out += " + ";
    out += format_symbol(s.symbols[i], names);
  }
  return out;
}

}  // namespace qf2
