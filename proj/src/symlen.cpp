#include "qf2/symlen.hpp"

#include <algorithm>
#include <stdexcept>

#include "qf2/errors.hpp"
#include "qf2/invariants.hpp"
#include "qf2/linalg.hpp"
#include "qf2/witt.hpp"

namespace qf2::symlen {

namespace {

unsigned sum_k(const SymbolSum& s, const std::vector<Element>& extra) {
  for (const auto& sym : s.symbols) return sym.coefficient.k();
  for (const auto& e : extra) return e.k();
  return 1;
}

int level_of(const std::vector<Element>& xs) {
  int h = 0;
  for (const auto& x : xs) h = std::max(h, x.level());
  return h;
}

std::optional<bool> trivial(const SymbolSum& s) {
  try {
    return class_trivial(s);
  } catch (const Error&) {
    return std::nullopt;
  }
}

/// db/b and dc/c agree when b/c is a square.
bool same_dlog(const Element& b, const Element& c) { return is_square(b / c).is_square; }

/// Moves every symbol of `rest` carrying a slot equivalent to some slots[i] into
/// omegas[i], with that slot removed.
void peel(SymbolSum& rest, const std::vector<Element>& slots, std::vector<SymbolSum>& omegas) {
  std::vector<Symbol> kept;
  for (const auto& sym : rest.symbols) {
    bool moved = false;
    for (size_t j = 0; j < sym.slots.size() && !moved; ++j)
      for (size_t i = 0; i < slots.size() && !moved; ++i)
        if (same_dlog(sym.slots[j], slots[i])) {
          Symbol w{sym.coefficient, sym.slots};
          w.slots.erase(w.slots.begin() + static_cast<long>(j));
          omegas[i].symbols.push_back(w);
          moved = true;
        }
    if (!moved) kept.push_back(sym);
  }
  rest.symbols = kept;
}

std::vector<Symbol> symbol_pool(unsigned k, int height, int degree) {
  const auto cpool = coefficient_pool(k, height, 64);
  const auto spool = slot_pool(k, height, 16);
  const int nslots = degree - 1;
  std::vector<std::vector<Element>> combos;
  std::vector<int> idx(nslots);
  std::vector<Element> cur;
  auto rec = [&](auto&& self, int start, int depth) -> void {
    if (depth == nslots) {
      combos.push_back(cur);
      return;
    }
    for (int s = start; s < static_cast<int>(spool.size()); ++s) {
      cur.push_back(spool[s]);
      self(self, s + 1, depth + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0);
  std::vector<Symbol> out;
  for (const auto& sl : combos)
    for (const auto& c : cpool) out.push_back({c, sl});
  return out;
}

QuadraticForm form_of(const SymbolSum& s, unsigned k) {
  QuadraticForm f{k, {}, {}};
  for (const auto& sym : s.symbols) f = orth_sum(f, pfister_expand(symbol_to_pfister(sym)));
  return f;
}

QuadraticForm unit_pairs(const QuadraticForm& f, size_t count) {
  QuadraticForm g = f;
  for (size_t i = 0; i < count; ++i) g.pairs[i].b = Element::one(f.k);
  return g;
}

bool check_equivalent(const QuadraticForm& f, const QuadraticForm& g, long budget) {
  try {
    return witt_equivalent(f, g, budget);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

InseparableExtension::InseparableExtension(std::vector<Element> adjoined, int height)
    : adjoined_(std::move(adjoined)) {
  if (adjoined_.size() > 16) throw Error(ErrorKind::InvalidArgument, "too many adjoined roots");
  if (!adjoined_.empty()) k_ = adjoined_.front().k();
  std::vector<linalg::Vector> rows;
  for (const auto& b : adjoined_) {
    if (b.is_zero()) throw Error(ErrorKind::ZeroInput, "adjoined element is zero");
    rows.push_back(dlog_coords(b, height));
  }
  if (linalg::rank(rows, k_) != static_cast<int>(adjoined_.size()))
    throw Error(ErrorKind::InvalidArgument, "adjoined elements are not 2-independent");
}

InseparableExtension::Value InseparableExtension::embed(const Element& x) const {
  Value v(degree(), Element::zero(k_));
  v[0] = x;
  return v;
}

InseparableExtension::Value InseparableExtension::root(size_t i) const {
  Value v(degree(), Element::zero(k_));
  v[size_t{1} << i] = Element::one(k_);
  return v;
}

InseparableExtension::Value InseparableExtension::add(const Value& x, const Value& y) const {
  Value v(degree());
  for (int s = 0; s < degree(); ++s) v[s] = x[s] + y[s];
  return v;
}

InseparableExtension::Value InseparableExtension::mul(const Value& x, const Value& y) const {
  Value v(degree(), Element::zero(k_));
  for (int s = 0; s < degree(); ++s) {
    if (x[s].is_zero()) continue;
    for (int t = 0; t < degree(); ++t) {
      if (y[t].is_zero()) continue;
      Element c = x[s] * y[t];
      for (size_t i = 0; i < adjoined_.size(); ++i)
        if ((s & t) >> i & 1) c *= adjoined_[i];
      v[s ^ t] += c;
    }
  }
  return v;
}

Element InseparableExtension::square(const Value& x) const {
  Element out = Element::zero(k_);
  for (int s = 0; s < degree(); ++s) {
    Element c = x[s].square();
    for (size_t i = 0; i < adjoined_.size(); ++i)
      if (s >> i & 1) c *= adjoined_[i];
    out += c;
  }
  return out;
}

InseparableExtension::Value InseparableExtension::inverse(const Value& x) const {
  const Element n = square(x);
  if (n.is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero in K");
  return mul(x, embed(n.inverse()));
}

bool InseparableExtension::is_zero(const Value& x) const {
  return std::all_of(x.begin(), x.end(), [](const Element& c) { return c.is_zero(); });
}

bool InseparableExtension::equal(const Value& x, const Value& y) const { return is_zero(add(x, y)); }

SplitResult split_field_slots(const QuadraticForm& f, int n, long budget) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "n must be at least 2");
  if (!is_normalized(f)) throw Error(ErrorKind::NotNormalized, "form is not in normalized presentation");
  const int m = static_cast<int>(f.pairs.size());
  if (2 * m < (1 << n)) throw Error(ErrorKind::DimensionTooSmall, "dimension below 2^n");
  const int l = m + 1 - (1 << (n - 1));

  SplitResult out;
  for (int i = 0; i < l; ++i) out.slots.push_back(f.pairs[i].b);

  // Over K the first l coefficients are squares and scale away.
  WittStep squares{f, unit_pairs(f, l), "isometric over K",
                   "b_i = (sqrt b_i)^2 in K; scaling both variables of b_i[1,a_i] by 1/sqrt b_i gives [1,a_i]",
                   false};
  try {
    const InseparableExtension ext(out.slots, level_of(out.slots));
    bool ok = true;
    for (int i = 0; i < l; ++i) ok = ok && ext.equal(ext.mul(ext.root(i), ext.root(i)), ext.embed(out.slots[i]));
    squares.verified = ok;
  } catch (const Error&) {
    squares.justification += " (slots not 2-independent; cited)";
  }
  out.proof.witt_chain.push_back(squares);

  // [1,a_1] + ... + [1,a_l] + [1, a_1 + ... + a_{m-1}] ~ [1, a_{l+1} + ... + a_{m-1}].
  QuadraticForm units{f.k, {}, {}};
  for (int i = 0; i < l; ++i) units.pairs.push_back({Element::one(f.k), f.pairs[i].a});
  units.pairs.push_back(f.pairs.back());
  Element tail = Element::zero(f.k);
  for (int i = l; i + 1 < m; ++i) tail += f.pairs[i].a;
  const QuadraticForm merged = binary(Element::one(f.k), tail);
  WittStep merge{units, merged, "Witt equivalent over F", "[1,a] + [1,c] = [1,a+c] + H, applied l times",
                 check_equivalent(units, merged, budget)};
  out.proof.witt_chain.push_back(merge);

  QuadraticForm rest{f.k, {}, {}};
  for (int i = l; i + 1 < m; ++i) rest.pairs.push_back(f.pairs[i]);
  rest.pairs.push_back({Element::one(f.k), tail});
  WittStep substitute{squares.rhs, rest, "Witt equivalent over F",
                      "substitute the previous step into the unit part", check_equivalent(squares.rhs, rest, budget)};
  out.proof.witt_chain.push_back(substitute);

  out.proof.hauptsatz_step = {rest, n, rest.dim()};
  if (rest.dim() != (1 << n) - 2) throw std::logic_error("split remainder has the wrong dimension");
  return out;
}

bool verify_proof(const DecompositionProof& proof, long budget) {
  const auto& chain = proof.witt_chain;
  if (chain.size() != 3) return false;
  const auto& sq = chain[0];
  if (sq.lhs.pairs.size() != sq.rhs.pairs.size()) return false;
  for (size_t i = 0; i < sq.lhs.pairs.size(); ++i) {
    if (sq.lhs.pairs[i].a != sq.rhs.pairs[i].a) return false;
    if (sq.lhs.pairs[i].b != sq.rhs.pairs[i].b && !sq.rhs.pairs[i].b.is_one()) return false;
  }
  for (size_t i = 1; i < chain.size(); ++i)
    if (!check_equivalent(chain[i].lhs, chain[i].rhs, budget)) return false;
  if (!(chain[2].lhs == sq.rhs) || !(chain[2].rhs == proof.hauptsatz_step.form)) return false;
  return proof.hauptsatz_step.dim == proof.hauptsatz_step.form.dim() &&
         proof.hauptsatz_step.dim == (1 << proof.hauptsatz_step.n) - 2;
}

SymbolSum wedge_slots(const std::vector<SymbolSum>& omegas, const std::vector<Element>& slots) {
  if (omegas.size() != slots.size()) throw Error(ErrorKind::InvalidArgument, "omega/slot count mismatch");
  int degree = 1;
  for (const auto& w : omegas) degree = w.degree + 1;
  SymbolSum out(degree);
  for (size_t i = 0; i < omegas.size(); ++i)
    for (const auto& sym : omegas[i].symbols) {
      Symbol s = sym;
      s.slots.push_back(slots[i]);
      out.symbols.push_back(s);
    }
  return out;
}

LagKingResult lagking_decompose(const SymbolSum& c, const std::vector<Element>& slots, long budget) {
  if (budget <= 0) throw Error(ErrorKind::InvalidArgument, "budget must be positive");
  if (c.degree < 2) throw Error(ErrorKind::InvalidArgument, "class degree must be at least 2");
  const int n = c.degree;
  const unsigned k = sum_k(c, slots);
  int height = level_of(slots);
  for (const auto& sym : c.symbols) height = std::max({height, sym.coefficient.level(), level_of(sym.slots)});

  LagKingResult out;
  out.omegas.assign(slots.size(), SymbolSum(n - 1));
  auto done = [&](const std::vector<SymbolSum>& omegas) {
    ++out.candidates;
    const auto t = trivial(c + wedge_slots(omegas, slots));
    return t && *t;
  };

  SymbolSum rest = simplify(c);
  peel(rest, slots, out.omegas);
  if (done(out.omegas)) return out;
  // Expand the remainder over the 2-basis and peel again.
  if (height > 0) {
    SymbolSum basis = basis_rewrite(to_differential(rest, height), k);
    auto omegas = out.omegas;
    peel(basis, slots, omegas);
    if (done(omegas)) return {omegas, out.candidates, 0, 0};
  }

  const auto pool = symbol_pool(k, height, n - 1);
  out.pool_size = pool.size();
  const size_t l = slots.size();
  const size_t cells = l * pool.size();
  for (size_t a = 0; a < cells && out.candidates < budget; ++a) {
    auto omegas = out.omegas;
    omegas[a / pool.size()].symbols.push_back(pool[a % pool.size()]);
    if (done(omegas)) {
      out.omegas = omegas;
      out.stage = 1;
      return out;
    }
  }
  for (size_t a = 0; a < cells && out.candidates < budget; ++a)
    for (size_t b = a + 1; b < cells && out.candidates < budget; ++b) {
      auto omegas = out.omegas;
      omegas[a / pool.size()].symbols.push_back(pool[a % pool.size()]);
      omegas[b / pool.size()].symbols.push_back(pool[b % pool.size()]);
      if (done(omegas)) {
        out.omegas = omegas;
        out.stage = 2;
        return out;
      }
    }
  throw Error(ErrorKind::SearchExhausted, "no decomposition within budget " + std::to_string(budget) + " (" +
                                              std::to_string(out.candidates) + " candidates, pool " +
                                              std::to_string(pool.size()) + ")");
}

SymbolSum e_class(const QuadraticForm& f, int n, int height, long budget) {
  if (!f.nonsingular()) throw Error(ErrorKind::SingularInput, "cohomology class of a singular form");
  if (n == 1) return SymbolSum(1, {Symbol{arf(f).reduced, {}}});
  if (n == 2) return clifford(f).as_symbols();
  if (n >= height + 2) return SymbolSum(n);
  if (n == height + 1) {
    // H^n is spanned by c dt_1/t_1 ^ ... ^ dt_m/t_m and I_q^{n+1} = 0, so the class is
    // the c for which f + <<t_1, ..., t_m, c]] is hyperbolic.
    std::vector<Element> ts;
    for (int i = 1; i <= height; ++i) ts.push_back(Element::variable(f.k, i));
    auto pool = coefficient_pool(f.k, height, 256);
    pool.insert(pool.begin(), Element::zero(f.k));
    long tried = 0;
    for (const auto& c : pool) {
      if (++tried > budget) break;
      const QuadraticForm g = c.is_zero() ? f : orth_sum(f, pfister_expand({ts, c}));
      try {
        if (is_hyperbolic(g, budget)) return c.is_zero() ? SymbolSum(n) : SymbolSum(n, {Symbol{c, ts}});
      } catch (const Error&) {
      }
    }
    throw Error(ErrorKind::UndecidableClass, "top-degree class not found in the coefficient pool");
  }
  throw Error(ErrorKind::UndecidableClass, "degree-" + std::to_string(n) + " class needs an explicit presentation");
}

GoodboundResult goodbound_decompose(const QuadraticForm& f, int n, int height, long budget,
                                    const std::optional<SymbolSum>& known) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "n must be at least 2");
  if (!f.nonsingular()) throw Error(ErrorKind::SingularInput, "goodbound_decompose needs a nonsingular form");
  if (!known) {
    const auto member = in_Iqn(f, n, height);
    if (member && !*member) throw Error(ErrorKind::HypothesisViolated, "form is not in I_q^n");
  }
  GoodboundResult out;
  out.target = known ? *known : e_class(f, n, height, budget);
  out.output = SymbolSum(n);

  QuadraticForm kernel = f;
  try {
    kernel = witt_decompose(f, budget).kernel;
  } catch (const Error&) {
  }
  if (kernel.dim() > 0) {
    if (kernel.dim() < (1 << n))
      throw Error(ErrorKind::HypothesisViolated, "anisotropic part of dimension below 2^n in I_q^n");
    const QuadraticForm g = normalize_presentation(kernel).form;
    auto split = split_field_slots(g, n, budget);
    out.slots = split.slots;
    out.proof = std::move(split.proof);

    // Scaling by a unit preserves the class modulo I_q^{n+1}; for n = 2 the raw
    // presentation of g exposes its slots.
    SymbolSum cls = out.target;
    if (n == 2) {
      cls = SymbolSum(2);
      for (const auto& p : g.pairs) cls.symbols.push_back({p.a, {p.b}});
    }
    const auto lk = lagking_decompose(cls, out.slots, budget);
    out.candidates += lk.candidates;

    int inner = 1;
    std::vector<SymbolSum> parts;
    for (const auto& w0 : lk.omegas) {
      const SymbolSum w = simplify(w0);
      if (w.empty()) {
        parts.push_back(SymbolSum(n - 1));
      } else if (n - 1 == 1) {
        Element sum = Element::zero(f.k);
        for (const auto& s : w.symbols) sum += s.coefficient;
        parts.push_back(SymbolSum(1, {Symbol{sum, {}}}));
      } else {
        const auto sub = goodbound_decompose(form_of(w, f.k), n - 1, height, budget, w);
        inner = std::max(inner, sub.length_bound);
        out.candidates += sub.candidates;
        parts.push_back(sub.output);
      }
    }
    out.output = wedge_slots(parts, out.slots);
    out.length_bound = static_cast<int>(out.slots.size()) * inner;
  }
  const auto ok = trivial(out.output + out.target);
  if (!ok) throw Error(ErrorKind::UndecidableClass, "cannot verify the decomposition");
  if (!*ok) throw std::logic_error("goodbound decomposition does not represent the target class");
  if (static_cast<int>(out.output.size()) > out.length_bound) throw std::logic_error("decomposition exceeds its bound");
  return out;
}

long goodbound_value(const std::vector<long>& u_values, int n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "n must be at least 2");
  if (static_cast<int>(u_values.size()) != n - 1)
    throw Error(ErrorKind::InvalidArgument, "expected u^2, ..., u^n");
  long out = 1;
  for (int i = 2; i <= n; ++i) {
    const long u = u_values[i - 2];
    if (u < (1L << i)) throw Error(ErrorKind::HypothesisViolated, "u^" + std::to_string(i) + " < 2^" + std::to_string(i));
    out *= u / 2 + 1 - (1L << (i - 1));
  }
  return out;
}

long prank_bound(int m, int d) {
  if (m < 0 || d < 1) throw Error(ErrorKind::InvalidArgument, "prank_bound needs m >= 0 and d >= 1");
  const int r = d - 1;
  if (r > m) return 0;
  long out = 1;
  for (int i = 1; i <= r; ++i) out = out * (m - r + i) / i;
  return out;
}

}  // namespace qf2::symlen
