#include "qf2/witt.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "qf2/gf2k.hpp"
#include "qf2/linalg.hpp"

namespace qf2 {

const char* to_string(IsoKind kind) {
  switch (kind) {
    case IsoKind::Isotropic:
      return "Isotropic";
    case IsoKind::Anisotropic:
      return "Anisotropic";
    case IsoKind::Undecided:
      return "Undecided";
  }
  return "?";
}

int form_level(const QuadraticForm& f) {
  int j = 0;
  for (const auto& p : f.pairs) j = std::max({j, p.b.level(), p.a.level()});
  for (const auto& c : f.quasilinear) j = std::max(j, c.level());
  return j;
}

QuasilinearReduction reduce_quasilinear(const std::vector<Element>& entries) {
  QuasilinearReduction out;
  if (entries.empty()) return out;
  const unsigned k = entries.front().k();
  int height = 0;
  for (const auto& c : entries) height = std::max(height, c.level());
  const size_t masks = size_t{1} << height;
  std::vector<linalg::Vector> columns;
  for (const auto& c : entries) {
    linalg::Vector v(masks, Element::zero(k));
    for (const auto& [mask, y] : square_components(c)) v[mask] = y;
    columns.push_back(std::move(v));
  }
  for (int i : linalg::independent_subset(columns, k)) out.independent.push_back(entries[i]);
  out.defect = static_cast<int>(entries.size() - out.independent.size());
  if (out.defect > 0) {
    linalg::Matrix m(masks, linalg::Vector(entries.size(), Element::zero(k)));
    for (size_t i = 0; i < entries.size(); ++i)
      for (size_t s = 0; s < masks; ++s) m[s][i] = columns[i][s];
    out.relations = linalg::kernel(m, static_cast<int>(entries.size()), k);
  }
  return out;
}

namespace {

using Vec = std::vector<Element>;

Element t_power(unsigned k, int level, int e) { return Element::monomial(k, level, e, Element::one(k)); }

int floor_div2(int v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

bool all_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Element& x) { return x.is_zero(); });
}

Certificate leaf(const std::string& rule, int level, std::vector<Element> data) {
  return Certificate{rule, level, std::move(data), {}};
}

IsotropyVerdict anisotropic(Certificate c) {
  IsotropyVerdict v;
  v.kind = IsoKind::Anisotropic;
  v.certificate = std::move(c);
  return v;
}

IsotropyVerdict isotropic(Vec w, Vec e = {}) {
  IsotropyVerdict v;
  v.kind = IsoKind::Isotropic;
  v.witness = std::move(w);
  v.lift_direction = std::move(e);
  return v;
}

bool check_isotropic(const QuadraticForm& f, const Vec& w, const Vec& e) {
  if (static_cast<int>(w.size()) != f.dim() || all_zero(w)) return false;
  const Element qw = evaluate(f, w);
  if (e.empty()) return qw.is_zero();
  if (static_cast<int>(e.size()) != f.dim()) return false;
  const Element beta = polar(f, w, e);
  if (beta.is_zero()) return false;
  if (qw.is_zero()) return true;
  return wp_reduce(qw * evaluate(f, e) / beta.square()).is_in_wp;
}

// Exact membership in wp(F) restricted to the cheap cases: valuation >= 1 at the
// top level, or valuation 0 with residue recursively in wp. Negative valuation
// reports false (the caller only uses this as a sufficient test).
bool quick_in_wp(const Element& c) {
  if (c.is_zero()) return true;
  const int level = c.level();
  if (level == 0) return gf2k::trace(c.k(), c.base_bits()) == 0;
  const int v = valuation(c, level);
  if (v >= 1) return true;
  if (v < 0) return false;
  return quick_in_wp(residue(c, level));
}

// Solve b(x^2 + xy + a y^2) = target over a finite field by enumeration.
std::optional<std::pair<uint32_t, uint32_t>> represent(unsigned k, uint32_t b, uint32_t a, uint32_t target) {
  const uint32_t q = gf2k::order(k);
  for (uint32_t x = 0; x < q; ++x)
    for (uint32_t y = 0; y < q; ++y) {
      uint32_t v = gf2k::square(k, x) ^ gf2k::mul(k, x, y) ^ gf2k::mul(k, a, gf2k::square(k, y));
      if (gf2k::mul(k, b, v) == target && (x | y)) return std::make_pair(x, y);
    }
  return std::nullopt;
}

IsotropyVerdict decide_base(const QuadraticForm& f) {
  const unsigned k = f.k;
  const size_t r = f.pairs.size(), s = f.quasilinear.size();
  Vec w(f.dim(), Element::zero(k));
  auto bits = [](const Element& x) { return x.base_bits(); };
  if (r >= 2) {
    const auto sol = represent(k, bits(f.pairs[1].b), bits(f.pairs[1].a), bits(f.pairs[0].b));
    w[0] = Element::one(k);
    w[2] = Element::base(k, sol->first);
    w[3] = Element::base(k, sol->second);
    return isotropic(w);
  }
  if (r == 1) {
    const uint32_t a = bits(f.pairs[0].a);
    if (gf2k::trace(k, a) == 0) {
      w[0] = Element::base(k, gf2k::artin_schreier_root(k, a));
      w[1] = Element::one(k);
      return isotropic(w);
    }
    if (s >= 1) {
      const auto sol = represent(k, bits(f.pairs[0].b), a, bits(f.quasilinear[0]));
      w[0] = Element::base(k, sol->first);
      w[1] = Element::base(k, sol->second);
      w[2] = Element::one(k);
      return isotropic(w);
    }
    return anisotropic(leaf("trace", 0, {f.pairs[0].a}));
  }
  if (s >= 2) {
    w[0] = Element::base(k, gf2k::sqrt(k, bits(f.quasilinear[1])));
    w[1] = Element::base(k, gf2k::sqrt(k, bits(f.quasilinear[0])));
    return isotropic(w);
  }
  if (s == 1) return anisotropic(leaf("quasilinear-independent", 0, f.quasilinear));
  return anisotropic(leaf("empty", 0, {}));
}

// Presentation of f at level j after square scaling and polar wp-shifts:
// entry i is t^parity * u [1, a'] (or t^parity * u <.> for quasilinear entries).
struct Normalized {
  struct Entry {
    Element u;
    int parity = 0;
    int h = 0;
    Element a;  // reduced last slot (pairs only)
    Element s;  // wp-shift used (pairs only)
  };
  std::vector<Entry> pairs, quasi;
  bool wild = false;
};

Normalized::Entry normalize_coefficient(const Element& b, int j) {
  Normalized::Entry e;
  const unsigned k = b.k();
  const int v = b.level() >= j ? valuation(b, j) : 0;
  e.h = floor_div2(v);
  e.parity = v - 2 * e.h;
  e.u = v == 0 ? b : b * t_power(k, j, -v);
  return e;
}

Normalized normalize_at(const QuadraticForm& f, int j) {
  Normalized n;
  const unsigned k = f.k;
  for (const auto& p : f.pairs) {
    auto e = normalize_coefficient(p.b, j);
    e.a = p.a;
    e.s = Element::zero(k);
    if (p.a.level() == j) {
      const auto red = reduce_polar(p.a);
      e.a = red.reduced;
      e.s = red.correction;
      if (red.wild) n.wild = true;
    }
    n.pairs.push_back(e);
  }
  for (const auto& c : f.quasilinear) n.quasi.push_back(normalize_coefficient(c, j));
  return n;
}

// Residue form for one parity class plus the index maps back into the normalized form.
struct ResidueForm {
  QuadraticForm form;
  std::vector<int> pair_index, quasi_index;
};

ResidueForm residue_form(const Normalized& n, int parity, int j, unsigned k) {
  ResidueForm r;
  r.form.k = k;
  for (size_t i = 0; i < n.pairs.size(); ++i) {
    const auto& e = n.pairs[i];
    if (e.parity != parity) continue;
    r.form.pairs.push_back({residue(e.u, j), residue(e.a, j)});
    r.pair_index.push_back(static_cast<int>(i));
  }
  for (size_t i = 0; i < n.quasi.size(); ++i) {
    const auto& e = n.quasi[i];
    if (e.parity != parity) continue;
    r.form.quasilinear.push_back(residue(e.u, j));
    r.quasi_index.push_back(static_cast<int>(i));
  }
  return r;
}

// Map a vector in residue-form coordinates to the original coordinates.
Vec embed(const Vec& w, const ResidueForm& r, const Normalized& n, int j, unsigned k) {
  const size_t npairs = n.pairs.size();
  Vec out(2 * npairs + n.quasi.size(), Element::zero(k));
  for (size_t i = 0; i < r.pair_index.size(); ++i) {
    const int p = r.pair_index[i];
    const auto& e = n.pairs[p];
    const Element scale = t_power(k, j, -e.h);
    const Element& x = w[2 * i];
    const Element& y = w[2 * i + 1];
    out[2 * p] = scale * (x + e.s * y);
    out[2 * p + 1] = scale * y;
  }
  const size_t base = 2 * r.pair_index.size();
  for (size_t i = 0; i < r.quasi_index.size(); ++i) {
    const int q = r.quasi_index[i];
    out[2 * npairs + q] = t_power(k, j, -n.quasi[q].h) * w[base + i];
  }
  return out;
}

// Lift a residue witness to f; nullopt when the residue zero is singular.
std::optional<IsotropyVerdict> lift(const QuadraticForm& f, const IsotropyVerdict& rv, const ResidueForm& r,
                                    const Normalized& n, int j) {
  const unsigned k = f.k;
  Vec e_bar = rv.lift_direction;
  if (e_bar.empty()) {
    const Vec& w = rv.witness;
    for (size_t i = 0; i < r.form.pairs.size() && e_bar.empty(); ++i) {
      if (!w[2 * i + 1].is_zero()) {
        e_bar.assign(w.size(), Element::zero(k));
        e_bar[2 * i] = Element::one(k);
      } else if (!w[2 * i].is_zero()) {
        e_bar.assign(w.size(), Element::zero(k));
        e_bar[2 * i + 1] = Element::one(k);
      }
    }
    if (e_bar.empty()) return std::nullopt;
  }
  Vec w = embed(rv.witness, r, n, j, k);
  Vec e = embed(e_bar, r, n, j, k);
  if (evaluate(f, w).is_zero()) return isotropic(w);
  if (!check_isotropic(f, w, e)) throw std::logic_error("residue witness failed to lift");
  return isotropic(w, e);
}

IsotropyVerdict decide(const QuadraticForm& f, long budget) {
  if (f.dim() == 0) return anisotropic(leaf("empty", 0, {}));
  const unsigned k = f.k;
  if (f.pairs.empty()) {
    auto red = reduce_quasilinear(f.quasilinear);
    if (red.relations.empty()) return anisotropic(leaf("quasilinear-independent", form_level(f), f.quasilinear));
    return isotropic(red.relations.front());
  }
  const int j = form_level(f);
  if (j == 0) return decide_base(f);
  const Normalized n = normalize_at(f, j);
  if (n.wild) {
    if (f.pairs.size() == 1 && f.quasilinear.empty())
      return anisotropic(leaf("wild-pair", j, {n.pairs[0].a}));
    auto v = brute_search(f, budget);
    v.report.note = "wild entries at level " + std::to_string(j) + "; bounded search";
    return v;
  }
  const ResidueForm r0 = residue_form(n, 0, j, k);
  const ResidueForm r1 = residue_form(n, 1, j, k);
  const IsotropyVerdict v0 = decide(r0.form, budget);
  if (v0.kind == IsoKind::Isotropic)
    if (auto lifted = lift(f, v0, r0, n, j)) return *lifted;
  const IsotropyVerdict v1 = decide(r1.form, budget);
  if (v1.kind == IsoKind::Isotropic)
    if (auto lifted = lift(f, v1, r1, n, j)) return *lifted;
  if (v0.kind == IsoKind::Anisotropic && v1.kind == IsoKind::Anisotropic) {
    Certificate c{"residue-split", j, {}, {v0.certificate, v1.certificate}};
    return anisotropic(std::move(c));
  }
  auto v = brute_search(f, budget);
  v.report.note = "residue zero is singular or undecided at level " + std::to_string(j) + "; bounded search";
  return v;
}

// ---------------------------------------------------------------------------
// bounded search

std::vector<Element> search_pool(unsigned k, int height, size_t limit) {
  std::vector<Element> pool{Element::zero(k)};
  const uint32_t units = std::min<uint32_t>(gf2k::order(k) - 1, 3);
  for (uint32_t u = 1; u <= units; ++u) pool.push_back(Element::base(k, u));
  std::vector<Element> monomials;
  for (int s = 1; pool.size() < limit && height > 0 && s <= 8; ++s) {
    // exponent vectors with sum of |e_i| == s
    std::vector<std::vector<int>> exps{{}};
    for (int l = 0; l < height; ++l) {
      std::vector<std::vector<int>> next;
      for (const auto& e : exps) {
        int used = 0;
        for (int x : e) used += std::abs(x);
        for (int x = -(s - used); x <= s - used; ++x) {
          auto ee = e;
          ee.push_back(x);
          next.push_back(ee);
        }
      }
      exps = std::move(next);
    }
    std::vector<Element> shell;
    for (const auto& e : exps) {
      int total = 0;
      for (int x : e) total += std::abs(x);
      if (total != s) continue;
      Element m = Element::one(k);
      for (int l = 0; l < height; ++l)
        if (e[l]) m *= t_power(k, l + 1, e[l]);
      for (uint32_t u = 1; u <= units; ++u) shell.push_back(Element::base(k, u) * m);
    }
    for (const auto& m : shell) pool.push_back(m);
    for (const auto& m : shell) pool.push_back(Element::one(k) + m);
  }
  if (pool.size() > limit) pool.resize(limit);
  return pool;
}

// Rank-m valuation (v[level], top level most significant) and leading base
// coefficient of a nonzero element; c == 0 stands for the zero element.
constexpr int kLeadLevels = 8;

struct Lead {
  std::array<int, kLeadLevels + 1> v{};
  uint32_t c = 0;
};

Lead lead_of(const Element& x0) {
  Lead l;
  Element x = x0;
  while (x.level() > 0) {
    l.v[static_cast<size_t>(x.level())] = x.shift();
    const Element next = x.numerator()[0];
    x = next;
  }
  l.c = x.base_bits();
  return l;
}

Lead lead_mul(const Lead& a, const Lead& b, unsigned k) {
  Lead l;
  for (size_t i = 0; i < l.v.size(); ++i) l.v[i] = a.v[i] + b.v[i];
  l.c = gf2k::mul(k, a.c, b.c);
  return l;
}

Lead lead_square(const Lead& a, unsigned k) {
  Lead l;
  for (size_t i = 0; i < l.v.size(); ++i) l.v[i] = 2 * a.v[i];
  l.c = gf2k::square(k, a.c);
  return l;
}

int lead_cmp(const Lead& a, const Lead& b, int top) {
  for (int i = top; i >= 1; --i)
    if (a.v[static_cast<size_t>(i)] != b.v[static_cast<size_t>(i)])
      return a.v[static_cast<size_t>(i)] < b.v[static_cast<size_t>(i)] ? -1 : 1;
  return 0;
}

// Lead of a sum of nonzero terms; nullopt when the minimal terms cancel.
std::optional<Lead> lead_sum(const Lead* terms, int n, int top) {
  int best = 0;
  for (int i = 1; i < n; ++i)
    if (lead_cmp(terms[i], terms[best], top) < 0) best = i;
  Lead out = terms[best];
  out.c = 0;
  for (int i = 0; i < n; ++i)
    if (lead_cmp(terms[i], terms[best], top) == 0) out.c ^= terms[i].c;
  if (out.c == 0) return std::nullopt;
  return out;
}

// quick_in_wp(q / d) from the leads of q and d.
bool lead_quick_in_wp(const Lead& q, const Lead& d, int top, unsigned k) {
  const int c = lead_cmp(q, d, top);
  if (c != 0) return c > 0;
  return gf2k::trace(k, gf2k::mul(k, q.c, gf2k::inv(k, d.c))) == 0;
}

// (x, y) index pairs ordered by max index.
std::pair<int, int> pair_code(int idx) {
  int m = 0;
  while ((m + 1) * (m + 1) <= idx) ++m;
  const int off = idx - m * m;  // 0 .. 2m
  if (off < m) return {m, off};
  if (off < 2 * m) return {off - m, m};
  return {m, m};
}

}  // namespace

IsotropyVerdict brute_search(const QuadraticForm& f, long budget) {
  IsotropyVerdict out;
  out.kind = IsoKind::Undecided;
  out.report.budget = budget;
  const unsigned k = f.k;
  const int blocks = static_cast<int>(f.pairs.size() + f.quasilinear.size());
  if (blocks == 0 || budget <= 0) {
    out.report.note = "nothing to search";
    return out;
  }
  const auto pool = search_pool(k, form_level(f), 256);
  out.report.pool_size = static_cast<long>(pool.size());
  const int npairs = static_cast<int>(f.pairs.size());
  // Block values: pair block value index idx -> pool pair_code(idx); quasilinear
  // block value idx -> pool[idx]. Index 0 is the zero block.
  const int max_pair_idx = static_cast<int>(pool.size() * pool.size());
  std::vector<std::vector<Element>> values(blocks);
  auto block_value = [&](int b, int idx) -> const Element& {
    auto& cache = values[b];
    while (static_cast<int>(cache.size()) <= idx) {
      const int i = static_cast<int>(cache.size());
      if (b < npairs) {
        auto [xi, yi] = pair_code(i);
        const Element& x = pool[xi];
        const Element& y = pool[yi];
        const auto& p = f.pairs[b];
        cache.push_back(p.b * (x.square() + x * y + p.a * y.square()));
      } else {
        cache.push_back(f.quasilinear[b - npairs] * pool[i].square());
      }
    }
    return cache[idx];
  };
  auto block_limit = [&](int b) { return b < npairs ? max_pair_idx : static_cast<int>(pool.size()); };

  // Lead filter: the wp tests on q only depend on the lead of q, which is known
  // without forming q unless the minimal block leads cancel. A candidate is
  // skipped only when the filter proves the exact tests below would fail.
  const int top = form_level(f);
  bool use_leads = top <= kLeadLevels;
  for (const auto& p : f.pairs) use_leads = use_leads && !p.b.is_zero();
  std::vector<Lead> pool_leads;
  if (use_leads)
    for (const auto& x : pool) pool_leads.push_back(x.is_zero() ? Lead{} : lead_of(x));
  auto lead_or_zero = [](const Element& x) { return x.is_zero() ? Lead{} : lead_of(x); };
  std::vector<Lead> b_leads, a_leads, ql_leads;
  for (const auto& p : f.pairs) {
    b_leads.push_back(lead_or_zero(p.b));
    a_leads.push_back(lead_or_zero(p.a));
  }
  for (const auto& c : f.quasilinear) ql_leads.push_back(lead_or_zero(c));
  std::vector<std::vector<Lead>> leads(blocks);
  std::vector<std::vector<char>> lead_known(blocks);
  auto block_lead = [&](int b, int i) -> const Lead& {
    if (static_cast<int>(leads[b].size()) <= i) {
      leads[b].resize(static_cast<size_t>(i) + 1);
      lead_known[b].resize(static_cast<size_t>(i) + 1, 0);
    }
    if (lead_known[b][i]) return leads[b][i];
    lead_known[b][i] = 1;
    Lead& out = leads[b][i];
    if (b >= npairs) {
      const auto& z = pool_leads[static_cast<size_t>(i)];
      out = z.c == 0 || ql_leads[b - npairs].c == 0 ? Lead{} : lead_mul(ql_leads[b - npairs], lead_square(z, k), k);
      return out;
    }
    const auto [xi, yi] = pair_code(i);
    const Lead& lx = pool_leads[static_cast<size_t>(xi)];
    const Lead& ly = pool_leads[static_cast<size_t>(yi)];
    Lead terms[3];
    int n = 0;
    if (lx.c) terms[n++] = lead_square(lx, k);
    if (lx.c && ly.c) terms[n++] = lead_mul(lx, ly, k);
    if (a_leads[b].c && ly.c) terms[n++] = lead_mul(a_leads[b], lead_square(ly, k), k);
    std::optional<Lead> inner = n ? lead_sum(terms, n, top) : std::optional<Lead>(Lead{});
    if (!inner) {
      const Element& x = pool[xi];
      const Element& y = pool[yi];
      inner = lead_or_zero(x.square() + x * y + f.pairs[b].a * y.square());
    }
    out = inner->c == 0 ? Lead{} : lead_mul(b_leads[b], *inner, k);
    return out;
  };
  std::vector<Lead> terms(blocks);
  auto fast_reject = [&](const std::vector<int>& at) {
    int n = 0;
    for (int b = 0; b < blocks; ++b)
      if (at[b]) {
        const Lead& l = block_lead(b, at[b]);
        if (l.c) terms[n++] = l;
      }
    if (n == 0) return false;
    const auto ql = lead_sum(terms.data(), n, top);
    if (!ql) return false;
    for (int b = 0; b < npairs; ++b) {
      if (!at[b]) continue;
      const auto [xi, yi] = pair_code(at[b]);
      const Lead& lx = pool_leads[static_cast<size_t>(xi)];
      const Lead& ly = pool_leads[static_cast<size_t>(yi)];
      if (ly.c && lead_quick_in_wp(*ql, lead_mul(b_leads[b], lead_square(ly, k), k), top, k)) return false;
      if (lx.c) {
        if (!a_leads[b].c) return false;
        if (lead_quick_in_wp(lead_mul(*ql, a_leads[b], k), lead_mul(b_leads[b], lead_square(lx, k), k), top, k))
          return false;
      }
    }
    return true;
  };

  long tried = 0;
  std::vector<int> idx(blocks, 0);
  for (int L = 1; tried < budget; ++L) {
    bool any_room = false;
    for (int b = 0; b < blocks; ++b) any_room |= L < block_limit(b);
    if (!any_room) break;
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      // Only vectors with some entry equal to L are new at this L; when no higher
      // block sits on L, block 0 must, so jump straight there.
      bool high_top = false;
      for (int b = 1; b < blocks; ++b) high_top |= idx[b] == L;
      if (!high_top && idx[0] < L) idx[0] = std::min(L, block_limit(0) - 1);
      bool has_top = false;
      for (int b = 0; b < blocks; ++b) has_top |= idx[b] == L;
      if (has_top && use_leads && fast_reject(idx)) {
        ++tried;
        if (tried >= budget) break;
      } else if (has_top) {
        ++tried;
        Element q = Element::zero(k);
        for (int b = 0; b < blocks; ++b)
          if (idx[b]) q += block_value(b, idx[b]);
        Vec w(f.dim(), Element::zero(k));
        auto build = [&]() {
          for (int b = 0; b < blocks; ++b) {
            if (b < npairs) {
              auto [xi, yi] = pair_code(idx[b]);
              w[2 * b] = pool[xi];
              w[2 * b + 1] = pool[yi];
            } else {
              w[2 * npairs + (b - npairs)] = pool[idx[b]];
            }
          }
        };
        if (q.is_zero()) {
          build();
          out = isotropic(w);
          break;
        }
        bool found = false;
        for (int b = 0; b < npairs && !found; ++b) {
          if (!idx[b]) continue;
          auto [xi, yi] = pair_code(idx[b]);
          const Element& x = pool[xi];
          const Element& y = pool[yi];
          const auto& p = f.pairs[b];
          Vec e(f.dim(), Element::zero(k));
          if (!y.is_zero() && quick_in_wp(q / (p.b * y.square()))) {
            e[2 * b] = Element::one(k);
          } else if (!x.is_zero() && quick_in_wp(q * p.a / (p.b * x.square()))) {
            e[2 * b + 1] = Element::one(k);
          } else {
            continue;
          }
          build();
          if (check_isotropic(f, w, e)) {
            out = isotropic(w, e);
            found = true;
          }
        }
        if (found) break;
        if (tried >= budget) break;
      }
      int b = 0;
      while (b < blocks) {
        if (idx[b] < std::min(L, block_limit(b) - 1)) {
          ++idx[b];
          break;
        }
        idx[b] = 0;
        ++b;
      }
      if (b == blocks) break;
    }
    if (out.kind == IsoKind::Isotropic) break;
  }
  out.report.budget = budget;
  out.report.candidates = tried;
  out.report.pool_size = static_cast<long>(pool.size());
  if (out.kind != IsoKind::Isotropic) out.report.note = "no witness within budget";
  return out;
}

IsotropyVerdict isotropy(const QuadraticForm& f, long budget) {
  auto v = decide(f, budget);
  if (v.kind == IsoKind::Isotropic && !check_isotropic(f, v.witness, v.lift_direction))
    throw std::logic_error("isotropy witness failed verification");
  return v;
}

bool verify_certificate(const Certificate& c) {
  if (c.rule == "empty") return c.children.empty();
  if (c.rule == "trace")
    return c.data.size() == 1 && c.data[0].level() == 0 && gf2k::trace(c.data[0].k(), c.data[0].base_bits()) == 1;
  if (c.rule == "wild-pair") return c.data.size() == 1 && !wp_reduce(c.data[0]).is_in_wp;
  if (c.rule == "quasilinear-independent") return !c.data.empty() && reduce_quasilinear(c.data).defect == 0;
  if (c.rule == "residue-split")
    return c.children.size() == 2 && verify_certificate(c.children[0]) && verify_certificate(c.children[1]);
  return false;
}

bool verify_verdict(const QuadraticForm& f, const IsotropyVerdict& v) {
  switch (v.kind) {
    case IsoKind::Isotropic:
      return check_isotropic(f, v.witness, v.lift_direction);
    case IsoKind::Anisotropic:
      return verify_certificate(v.certificate);
    case IsoKind::Undecided:
      return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Witt decomposition

namespace {

// Residue route for tame nonsingular forms: i(f) = i(res_0) + i(res_1) and the
// kernel is the constant lift of the residue kernels.
std::optional<std::pair<int, QuadraticForm>> residue_decompose(const QuadraticForm& f) {
  const unsigned k = f.k;
  if (f.dim() == 0) return std::make_pair(0, QuadraticForm{k, {}, {}});
  const int j = form_level(f);
  const int r = static_cast<int>(f.pairs.size());
  if (j == 0) {
    uint32_t arf = 0;
    for (const auto& p : f.pairs) arf ^= p.a.base_bits();
    if (gf2k::trace(k, arf) == 0) return std::make_pair(r, QuadraticForm{k, {}, {}});
    return std::make_pair(r - 1, binary(Element::one(k), Element::base(k, gf2k::trace_one_representative(k))));
  }
  const Normalized n = normalize_at(f, j);
  if (n.wild) return std::nullopt;
  auto d0 = residue_decompose(residue_form(n, 0, j, k).form);
  if (!d0) return std::nullopt;
  auto d1 = residue_decompose(residue_form(n, 1, j, k).form);
  if (!d1) return std::nullopt;
  QuadraticForm kernel = orth_sum(d0->second, d1->second.dim() ? scale(t_power(k, j, 1), d1->second) : d1->second);
  kernel.k = k;
  return std::make_pair(d0->first + d1->first, kernel);
}

// Presentation of the subspace spanned by `basis` (vectors in f's coordinates) as
// pairs plus a quasilinear part, by symplectic reduction of the polar form.
QuadraticForm present(const QuadraticForm& f, std::vector<Vec> basis) {
  const unsigned k = f.k;
  QuadraticForm out{k, {}, {}};
  while (true) {
    int bi = -1, bj = -1;
    Element beta;
    for (size_t i = 0; i < basis.size() && bi < 0; ++i)
      for (size_t j = i + 1; j < basis.size(); ++j) {
        Element b = polar(f, basis[i], basis[j]);
        if (!b.is_zero()) {
          bi = static_cast<int>(i);
          bj = static_cast<int>(j);
          beta = b;
          break;
        }
      }
    if (bi < 0) break;
    const Vec u = basis[bi];
    Vec v = basis[bj];
    const Element inv = beta.inverse();
    for (auto& x : v) x *= inv;
    const Element qu = evaluate(f, u), qv = evaluate(f, v);
    if (!qu.is_zero())
      out.pairs.push_back({qu, qu * qv});
    else if (!qv.is_zero())
      out.pairs.push_back({qv, Element::zero(k)});
    else
      out.pairs.push_back({Element::one(k), Element::zero(k)});
    std::vector<Vec> rest;
    for (size_t i = 0; i < basis.size(); ++i) {
      if (static_cast<int>(i) == bi || static_cast<int>(i) == bj) continue;
      Vec x = basis[i];
      const Element alpha = polar(f, x, v), gamma = polar(f, x, u);
      for (size_t c = 0; c < x.size(); ++c) x[c] += alpha * u[c] + gamma * v[c];
      rest.push_back(std::move(x));
    }
    basis = std::move(rest);
  }
  for (const auto& x : basis) out.quasilinear.push_back(evaluate(f, x));
  return out;
}

// Split the hyperbolic plane spanned by (w, e) off f, returning a presentation of
// the orthogonal complement.
QuadraticForm split_plane(const QuadraticForm& f, const Vec& w, const Vec& e) {
  const unsigned k = f.k;
  const Element beta = polar(f, w, e);
  Vec v = e;
  for (auto& x : v) x /= beta;
  std::vector<Vec> projected;
  for (int i = 0; i < f.dim(); ++i) {
    Vec x(f.dim(), Element::zero(k));
    x[i] = Element::one(k);
    const Element alpha = polar(f, x, v), gamma = polar(f, x, w);
    for (int c = 0; c < f.dim(); ++c) x[c] += alpha * w[c] + gamma * v[c];
    projected.push_back(std::move(x));
  }
  std::vector<Vec> basis;
  for (int i : linalg::independent_subset(projected, k)) basis.push_back(projected[i]);
  return present(f, basis);
}

}  // namespace

WittDecomposition witt_decompose(const QuadraticForm& f, long budget) {
  const unsigned k = f.k;
  WittDecomposition out;
  const std::vector<std::string> names;
  QuadraticForm nonsingular{k, f.pairs, {}};
  if (auto d = residue_decompose(nonsingular)) {
    out.index = d->first;
    nonsingular = d->second;
    out.proof.push_back("residue recursion: " + std::to_string(d->first) + " hyperbolic planes in the nonsingular part");
  }
  auto red = reduce_quasilinear(f.quasilinear);
  if (red.defect) {
    out.index += red.defect;
    out.proof.push_back("quasilinear part: " + std::to_string(red.defect) + " zero directions");
  }
  QuadraticForm current{k, nonsingular.pairs, red.independent};
  while (current.dim() > 0) {
    auto v = isotropy(current, budget);
    if (v.kind == IsoKind::Anisotropic) break;
    if (v.kind == IsoKind::Undecided) throw Error(ErrorKind::UndecidableInstance, "isotropy undecided during Witt decomposition");
    Vec e = v.lift_direction;
    if (e.empty()) {
      for (int i = 0; i < current.dim() && e.empty(); ++i) {
        Vec x(current.dim(), Element::zero(k));
        x[i] = Element::one(k);
        if (!polar(current, v.witness, x).is_zero()) e = x;
      }
    }
    if (e.empty()) throw std::logic_error("isotropic vector in the radical of an anisotropic quasilinear part");
    current = split_plane(current, v.witness, e);
    ++out.index;
    out.proof.push_back("split a hyperbolic plane from an isotropic witness");
    auto cleaned = reduce_quasilinear(current.quasilinear);
    out.index += cleaned.defect;
    current.quasilinear = cleaned.independent;
  }
  out.kernel = current;
  return out;
}

int witt_index(const QuadraticForm& f, long budget) { return witt_decompose(f, budget).index; }

bool is_hyperbolic(const QuadraticForm& f, long budget) {
  if (!f.nonsingular()) return false;
  if (f.dim() == 0) return true;
  Element arf = Element::zero(f.k);
  for (const auto& p : f.pairs) arf += p.a;
  if (!wp_reduce(arf).is_in_wp) return false;
  return 2 * witt_index(f, budget) == f.dim();
}

bool witt_equivalent(const QuadraticForm& f, const QuadraticForm& g, long budget) {
  if (!f.nonsingular() || !g.nonsingular())
    throw Error(ErrorKind::SingularInput, "Witt equivalence is defined here for nonsingular forms");
  return is_hyperbolic(orth_sum(f, g), budget);
}

}  // namespace qf2
