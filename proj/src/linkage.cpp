#include "qf2/linkage.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "qf2/errors.hpp"
#include "qf2/gf2k.hpp"
#include "qf2/invariants.hpp"
#include "qf2/sampling.hpp"
#include "qf2/symlen.hpp"

namespace qf2::linkage {

namespace {

QuadraticForm expand(const QuadraticPfister& p) { return pfister_expand(p); }

QuadraticPfister prepend(const std::vector<Element>& slots, const QuadraticPfister& p) {
  QuadraticPfister out{slots, p.last};
  out.bilinear_slots.insert(out.bilinear_slots.end(), p.bilinear_slots.begin(), p.bilinear_slots.end());
  return out;
}

QuadraticPfister drop_first(const QuadraticPfister& p, size_t count) {
  return {std::vector<Element>(p.bilinear_slots.begin() + static_cast<long>(count), p.bilinear_slots.end()), p.last};
}

std::vector<Element> variables(unsigned k, int height) {
  std::vector<Element> ts;
  for (int i = 1; i <= height; ++i) ts.push_back(Element::variable(k, i));
  return ts;
}

int level_of(const QuadraticPfister& p) {
  int h = p.last.level();
  for (const auto& s : p.bilinear_slots) h = std::max(h, s.level());
  return h;
}

Element trace_one(unsigned k) { return Element::base(k, gf2k::trace_one_representative(k)); }

bool equivalent(const QuadraticForm& f, const QuadraticForm& g, long budget) {
  try {
    return witt_equivalent(f, g, budget);
  } catch (const Error&) {
    return false;
  }
}

/// rho is a subform of the anisotropic Pfister form p iff i_W(p + rho) = dim rho.
bool contains(const QuadraticPfister& p, const QuadraticPfister& rho, long budget) {
  try {
    return witt_index(orth_sum(expand(p), expand(rho)), budget) == expand(rho).dim();
  } catch (const Error&) {
    return false;
  }
}

/// Extends a Pfister subform rho of p to p = <<x_1..x_j>> (x) rho, each x_i a value of
/// the complement of the current subform.
std::optional<std::vector<Element>> complement(const QuadraticPfister& p, const QuadraticPfister& rho, long budget) {
  QuadraticPfister cur = rho;
  std::vector<Element> xs;
  while (cur.fold() < p.fold()) {
    QuadraticForm rest;
    try {
      rest = witt_decompose(orth_sum(expand(p), expand(cur)), budget).kernel;
    } catch (const Error&) {
      return std::nullopt;
    }
    if (rest.pairs.empty()) return std::nullopt;
    const Element x = rest.pairs.front().b;
    cur = prepend({x}, cur);
    if (!contains(p, cur, budget)) return std::nullopt;
    xs.insert(xs.begin(), x);
  }
  return xs;
}

template <class F>
void for_each_subset(const std::vector<Element>& items, int size, F&& visit) {
  std::vector<Element> cur;
  bool stop = false;
  auto rec = [&](auto&& self, size_t start) -> void {
    if (stop) return;
    if (static_cast<int>(cur.size()) == size) {
      if (!visit(cur)) stop = true;
      return;
    }
    for (size_t i = start; i < items.size() && !stop; ++i) {
      cur.push_back(items[i]);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

std::vector<Element> unique(std::vector<Element> xs) {
  std::vector<Element> out;
  for (auto& x : xs)
    if (!x.is_zero() && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  return out;
}

/// Single-symbol 2-basis rewrite of an n-fold over a tower of height n - 1.
std::optional<Element> top_coefficient(const QuadraticPfister& p, int height, long budget) {
  const unsigned k = p.k();
  const auto w = to_differential(SymbolSum(p.fold(), {e_map(p)}), height);
  const auto s = basis_rewrite(w, k);
  if (s.size() > 1) return std::nullopt;
  const Element c = s.empty() ? Element::zero(k) : s.symbols.front().coefficient;
  const auto ts = variables(k, height);
  if (!s.empty() && s.symbols.front().slots != ts) return std::nullopt;
  if (!equivalent(expand(p), expand({ts, c}), budget)) return std::nullopt;
  return c;
}

}  // namespace

const char* to_string(LinkKind kind) { return kind == LinkKind::Separable ? "separable" : "inseparable"; }

int LinkageWitness::order() const {
  return kind == LinkKind::Separable ? common_quadratic.fold() : static_cast<int>(common_bilinear.slots.size());
}

QuadraticPfister LinkageWitness::reassemble_p() const {
  return kind == LinkKind::Separable ? prepend(complement_p, common_quadratic)
                                     : prepend(common_bilinear.slots, quadratic_p);
}

QuadraticPfister LinkageWitness::reassemble_q() const {
  return kind == LinkKind::Separable ? prepend(complement_q, common_quadratic)
                                     : prepend(common_bilinear.slots, quadratic_q);
}

bool verify_witness(const LinkageWitness& w, const QuadraticPfister& p, const QuadraticPfister& q, long budget) {
  const auto rp = w.reassemble_p();
  const auto rq = w.reassemble_q();
  if (rp.fold() != p.fold() || rq.fold() != q.fold()) return false;
  return equivalent(expand(rp), expand(p), budget) && equivalent(expand(rq), expand(q), budget);
}

MaxLinkage max_sep_linkage(const QuadraticPfister& p, const QuadraticPfister& q, long budget, bool want_witness) {
  if (p.fold() != q.fold()) throw Error(ErrorKind::InvalidArgument, "linkage needs Pfister forms of equal fold");
  MaxLinkage out;
  out.witt_index = witt_index(orth_sum(expand(p), expand(q)), budget);
  int r = 0;
  while ((2 << r) <= out.witt_index) ++r;
  out.r = out.witt_index == 0 ? 0 : r;
  out.power_of_two = out.witt_index == 0 || (1 << out.r) == out.witt_index;
  if (want_witness && out.r >= 1) out.witness = separable_witness(p, q, out.r, budget, &out.candidates);
  return out;
}

std::optional<LinkageWitness> separable_witness(const QuadraticPfister& p, const QuadraticPfister& q, int r,
                                                long budget, long* candidates) {
  const int n = p.fold();
  if (q.fold() != n || r < 1 || r > n) return std::nullopt;
  const unsigned k = p.k();
  const int height = std::max(level_of(p), level_of(q));
  long tried = 0;
  std::optional<LinkageWitness> found;

  auto attempt = [&](const QuadraticPfister& rho) {
    if (++tried > budget) return false;
    if (!contains(p, rho, budget) || !contains(q, rho, budget)) return true;
    const auto cp = complement(p, rho, budget);
    const auto cq = cp ? complement(q, rho, budget) : std::nullopt;
    if (!cq) return true;
    LinkageWitness w;
    w.kind = LinkKind::Separable;
    w.common_quadratic = rho;
    w.complement_p = *cp;
    w.complement_q = *cq;
    w.route = "search";
    if (!verify_witness(w, p, q, budget)) return true;
    found = w;
    return false;
  };

  // Sub-Pfister forms of either side first, then pooled slots and last entries.
  bool go = true;
  for (const auto* side : {&p, &q}) {
    if (!go) break;
    for_each_subset(side->bilinear_slots, r - 1, [&](const std::vector<Element>& s) {
      go = attempt({s, side->last});
      return go;
    });
  }
  if (go) {
    std::vector<Element> slots = p.bilinear_slots;
    slots.insert(slots.end(), q.bilinear_slots.begin(), q.bilinear_slots.end());
    for (const auto& t : variables(k, height)) slots.push_back(t);
    for (const auto& s : slot_pool(k, height, 8)) slots.push_back(s);
    slots = unique(slots);
    std::vector<Element> lasts{p.last, q.last, p.last + q.last, trace_one(k)};
    for (const auto& c : coefficient_pool(k, height, 16)) lasts.push_back(c);
    lasts = unique(lasts);
    for_each_subset(slots, r - 1, [&](const std::vector<Element>& s) {
      for (const auto& c : lasts)
        if (!(go = attempt({s, c}))) return false;
      return true;
    });
  }
  if (candidates) *candidates += tried;
  return found;
}

std::optional<LinkageWitness> top_degree_witness(const QuadraticPfister& p, const QuadraticPfister& q, int height,
                                                 long budget) {
  if (p.fold() != height + 1 || q.fold() != height + 1) return std::nullopt;
  const auto cp = top_coefficient(p, height, budget);
  const auto cq = cp ? top_coefficient(q, height, budget) : std::nullopt;
  if (!cq) return std::nullopt;
  LinkageWitness w;
  w.kind = LinkKind::Inseparable;
  w.common_bilinear = {variables(p.k(), height)};
  w.quadratic_p = {{}, *cp};
  w.quadratic_q = {{}, *cq};
  w.route = "top-degree";
  return w;
}

namespace {

/// Keeps the first k bilinear slots common and moves the rest into the complements.
LinkageWitness truncate(LinkageWitness w, int k) {
  const auto& all = w.common_bilinear.slots;
  const std::vector<Element> head(all.begin(), all.begin() + k), tail(all.begin() + k, all.end());
  w.quadratic_p = prepend(tail, w.quadratic_p);
  w.quadratic_q = prepend(tail, w.quadratic_q);
  w.common_bilinear.slots = head;
  return w;
}

std::optional<LinkageWitness> insep_search(const QuadraticPfister& p, const QuadraticPfister& q, int k, long budget) {
  const int n = p.fold();
  const unsigned kk = p.k();
  const int height = std::max(level_of(p), level_of(q));
  std::vector<Element> slots = p.bilinear_slots;
  slots.insert(slots.end(), q.bilinear_slots.begin(), q.bilinear_slots.end());
  for (const auto& t : variables(kk, height)) slots.push_back(t);
  for (const auto& s : slot_pool(kk, height, 8)) slots.push_back(s);
  slots = unique(slots);
  std::vector<Element> lasts{p.last, q.last, p.last + q.last, trace_one(kk)};
  for (const auto& c : coefficient_pool(kk, height, 16)) lasts.push_back(c);
  lasts = unique(lasts);

  long tried = 0;
  // Quadratic complement of `side` over the common bilinear factor B.
  auto fit = [&](const QuadraticPfister& side, const std::vector<Element>& B) -> std::optional<QuadraticPfister> {
    std::optional<QuadraticPfister> hit;
    for_each_subset(slots, n - 1 - k, [&](const std::vector<Element>& s) {
      for (const auto& c : lasts) {
        if (++tried > budget) return false;
        const QuadraticPfister cand{s, c};
        if (equivalent(expand(prepend(B, cand)), expand(side), budget)) {
          hit = cand;
          return false;
        }
      }
      return true;
    });
    return hit;
  };
  std::optional<LinkageWitness> found;
  for_each_subset(slots, k, [&](const std::vector<Element>& B) {
    if (tried > budget) return false;
    const auto fp = fit(p, B);
    const auto fq = fp ? fit(q, B) : std::nullopt;
    if (fq) {
      LinkageWitness w;
      w.kind = LinkKind::Inseparable;
      w.common_bilinear = {B};
      w.quadratic_p = *fp;
      w.quadratic_q = *fq;
      w.route = "search";
      found = w;
      return false;
    }
    return true;
  });
  return found;
}

}  // namespace

InsepResult insep_k_linked(const QuadraticPfister& p, const QuadraticPfister& q, int k, int height, long budget) {
  const int n = p.fold();
  if (q.fold() != n) throw Error(ErrorKind::InvalidArgument, "linkage needs Pfister forms of equal fold");
  if (k < 1 || k > n - 1) throw Error(ErrorKind::InvalidArgument, "inseparable k-linkage needs 1 <= k <= n-1");
  InsepResult out;
  if (p == q) {
    LinkageWitness w;
    w.kind = LinkKind::Inseparable;
    w.common_bilinear = {std::vector<Element>(p.bilinear_slots.begin(), p.bilinear_slots.begin() + k)};
    w.quadratic_p = w.quadratic_q = drop_first(p, k);
    w.route = "identical";
    return {true, w, "identical"};
  }
  if (n == height + 1) {
    if (auto w = top_degree_witness(p, q, height, budget)) return {true, truncate(*w, k), "top-degree"};
  }
  const auto ml = max_sep_linkage(p, q, budget);
  if (ml.r < k) return {false, std::nullopt, "criterion"};  // inseparable k-linkage implies separable
  if (iqn_vanishes(n + 1, height) && k == n - 1) {
    out = {true, std::nullopt, "septoinsep"};
    if (auto w = insep_search(p, q, k, budget); w && verify_witness(*w, p, q, budget)) out.witness = w;
    return out;
  }
  if (auto w = insep_search(p, q, k, budget); w && verify_witness(*w, p, q, budget)) return {true, w, "search"};
  return {std::nullopt, std::nullopt, "exhausted"};
}

SepOracle search_oracle(long budget) {
  return [budget](const QuadraticPfister& a, const QuadraticPfister& b) {
    return separable_witness(a, b, a.fold() - 1, budget);
  };
}

LiftResult lift_linkage(const QuadraticPfister& p, const QuadraticPfister& q, int height, const SepOracle& oracle,
                        long budget) {
  const int n = p.fold() - 1;
  if (q.fold() != n + 1 || n < 2) throw Error(ErrorKind::InvalidArgument, "lift_linkage needs two (n+1)-folds, n >= 2");
  LiftResult out;
  if (p == q) {
    LinkageWitness w;
    w.kind = LinkKind::Separable;
    w.common_quadratic = drop_first(p, 1);
    w.complement_p = w.complement_q = {p.bilinear_slots.front()};
    w.route = "identical";
    out.separable = w;
    out.inseparable = insep_k_linked(p, q, n, height, budget).witness;
    out.chain.push_back("p = q");
    return out;
  }
  if (n == 2) {
    if (!iqn_vanishes(4, height)) throw Error(ErrorKind::HypothesisFailed, "I_q^4 vanishing is not established");
    out.chain.push_back("I_q^4 = 0 on this tower (vanishing table)");
    auto r = insep_k_linked(p, q, n, height, budget);
    if (!r.witness) throw Error(ErrorKind::UndecidableInstance, "no inseparable 2-linkage witness found");
    out.inseparable = r.witness;
    out.chain.push_back("inseparable 2-linkage by " + r.route);
    return out;
  }

  const Element beta_p = p.bilinear_slots.front(), beta_q = q.bilinear_slots.front();
  const auto p1 = drop_first(p, 1), q1 = drop_first(q, 1);
  const auto w1 = oracle(p1, q1);
  if (!w1 || w1->kind != LinkKind::Separable || w1->order() != n - 1)
    throw Error(ErrorKind::OracleFailure, "oracle did not link the n-fold parts");
  out.chain.push_back("peel beta: p = <<beta_p>> (x) p', q = <<beta_q>> (x) q'");
  out.chain.push_back("link p', q' over pi in P_{n-1}");
  const Element gamma_p = w1->complement_p.front(), gamma_q = w1->complement_q.front();
  const auto& pi = w1->common_quadratic;
  const Element delta = pi.bilinear_slots.front();
  const auto pi1 = drop_first(pi, 1);
  const auto a = prepend({beta_p, gamma_p}, pi1), b = prepend({beta_q, gamma_q}, pi1);
  const auto w2 = oracle(a, b);
  if (!w2 || w2->kind != LinkKind::Separable || w2->order() != n - 1)
    throw Error(ErrorKind::OracleFailure, "oracle did not link <<beta, gamma>> (x) pi'");
  out.chain.push_back("link <<beta_p, gamma_p>> (x) pi' and <<beta_q, gamma_q>> (x) pi' over rho");
  LinkageWitness w;
  w.kind = LinkKind::Separable;
  w.common_quadratic = prepend({delta}, w2->common_quadratic);
  w.complement_p = {w2->complement_p.front()};
  w.complement_q = {w2->complement_q.front()};
  w.route = "lift";
  if (!verify_witness(w, p, q, budget)) throw Error(ErrorKind::OracleFailure, "re-wedged witness does not verify");
  out.separable = w;
  out.chain.push_back("re-wedge delta: p = <<alpha_p, delta>> (x) rho, q = <<alpha_q, delta>> (x) rho");
  if (iqn_vanishes(n + 2, height)) {
    out.chain.push_back("I_q^{n+2} = 0, so separable n-linkage is inseparable n-linkage");
    out.inseparable = insep_k_linked(p, q, n, height, budget).witness;
  }
  return out;
}

bool linkage_hypothesis(int n, int height) { return n >= height + 1; }

UEstimate u_n_estimate(const FieldTower& field, int n, long samples, uint64_t seed, long budget) {
  const int m = field.height();
  const unsigned k = field.base_exponent;
  if (m > 3 || !gf2k::supported(k)) throw Error(ErrorKind::UnsupportedField, "u-invariant table covers towers of height <= 3");
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  UEstimate out;
  out.n = n;
  sampling::Rng rng(seed);
  if (n <= m + 1) {
    const QuadraticPfister w{variables(k, m), trace_one(k)};
    out.witness = w;
    out.witness_anisotropic = isotropy(expand(w), budget).kind == IsoKind::Anisotropic;
    out.lower = out.witness_anisotropic ? expand(w).dim() : 0;
    out.claimed = 1L << (m + 1);
    for (long i = 0; i < samples; ++i) {
      const auto f = sampling::tame_form(rng, k, m, static_cast<int>(out.claimed / 2 + 1));
      ++out.samples;
      const auto v = isotropy(f, budget);
      if (v.kind == IsoKind::Isotropic) ++out.isotropic;
      if (v.kind == IsoKind::Undecided) ++out.undecided;
    }
    out.provenance = "derived: anisotropic witness of dim " + std::to_string(out.lower) + "; " +
                     std::to_string(out.isotropic) + "/" + std::to_string(out.samples) +
                     " sampled forms of dim " + std::to_string(out.claimed + 2) + " isotropic";
  } else {
    for (long i = 0; i < samples; ++i) {
      const auto p = sampling::tame_pfister(rng, k, m, n);
      ++out.samples;
      try {
        if (is_hyperbolic(expand(p), budget)) ++out.isotropic;
      } catch (const Error&) {
        ++out.undecided;
      }
    }
    out.provenance = "derived: I_q^n = 0 for n >= m + 2; " + std::to_string(out.isotropic) + "/" +
                     std::to_string(out.samples) + " sampled n-folds hyperbolic";
  }
  return out;
}

LinkageEvidence sample_linkage(const FieldTower& field, int n, long samples, uint64_t seed, long budget) {
  sampling::Rng rng(seed);
  LinkageEvidence out;
  const int m = field.height();
  const unsigned k = field.base_exponent;
  for (long i = 0; i < samples; ++i) {
    const auto p = sampling::anisotropic_pfister(rng, k, m, n);
    const auto q = sampling::anisotropic_pfister(rng, k, m, n);
    if (!p || !q) continue;
    try {
      ++out.tested;
      if (max_sep_linkage(*p, *q, budget).r >= n - 1) ++out.linked;
    } catch (const Error&) {
      ++out.undecided;
    }
  }
  return out;
}

namespace {

QuadraticPfister hyperbolic_pfister(unsigned k, int n) {
  return {std::vector<Element>(n - 1, Element::one(k)), Element::zero(k)};
}

/// The single n-fold carrying a class that is one symbol up to the symbol calculus.
std::optional<QuadraticPfister> as_one_pfister(const SymbolSum& c, unsigned k, long budget) {
  const auto s = simplify(c);
  if (s.empty()) return hyperbolic_pfister(k, c.degree);
  if (s.size() == 1) return symbol_to_pfister(s.symbols.front());
  try {
    const auto len = symbol_length_exact(s, budget);
    if (len.exact && len.value == 1) return symbol_to_pfister(len.expression.symbols.front());
  } catch (const Error&) {
  }
  return std::nullopt;
}

}  // namespace

TheoremUResult theoremu_decompose(const QuadraticForm& f, int n, int height, long budget) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "n must be at least 2");
  if (!linkage_hypothesis(n, height))
    throw Error(ErrorKind::LinkageHypothesisFailed, "I_q^n is not known to be separably linked on this tower");
  if (!f.nonsingular()) throw Error(ErrorKind::SingularInput, "theoremu_decompose needs a nonsingular form");
  if (witt_index(f, budget) != 0) throw Error(ErrorKind::InvalidArgument, "form is isotropic");
  TheoremUResult out;
  out.dim = f.dim();
  const auto pi = as_one_pfister(symlen::e_class(f, n, height, budget), f.k, budget);
  if (!pi) throw Error(ErrorKind::LinkageHypothesisFailed, "class of f is not a single symbol");
  out.pi = *pi;
  out.psi_part = witt_decompose(orth_sum(f, expand(out.pi)), budget).kernel;
  if (out.psi_part.dim() > 0) {
    if (n + 1 != height + 1)
      throw Error(ErrorKind::UndecidableInstance, "psi-part is not hyperbolic and its class is out of reach");
    const auto psi = as_one_pfister(symlen::e_class(out.psi_part, n + 1, height, budget), f.k, budget);
    if (!psi || !equivalent(out.psi_part, expand(*psi), budget))
      throw Error(ErrorKind::UndecidableInstance, "psi-part is not a verified (n+1)-fold");
    out.psi = *psi;
  }
  out.dims_ok = out.dim == (1 << n) || out.dim == (1 << (n + 1));
  return out;
}

DEstimate d_invariant_estimate(const FieldTower& field, int n, long samples, uint64_t seed, long budget) {
  const int m = field.height();
  const unsigned k = field.base_exponent;
  if (m > 3 || !gf2k::supported(k)) throw Error(ErrorKind::UnsupportedField, "d-invariant sampling covers height <= 3");
  sampling::Rng rng(seed);
  DEstimate out;
  out.witness = binary(Element::one(k), trace_one(k));
  out.value = 2;
  const auto alphas = [&] {
    std::vector<Element> a{Element::zero(k), trace_one(k)};
    for (const auto& c : coefficient_pool(k, m, 24)) a.push_back(c);
    return a;
  }();
  for (long i = 0; i < samples; ++i) {
    QuadraticForm phi{k, {}, {}};
    if (!iqn_vanishes(n, m)) {
      const int terms = n == 2 ? 1 + static_cast<int>(rng() % 2) : 1;
      for (int j = 0; j < terms; ++j) {
        const auto p = sampling::anisotropic_pfister(rng, k, m, n);
        phi = orth_sum(phi, scale(sampling::slot(rng, k, m), expand(p ? *p : sampling::tame_pfister(rng, k, m, n))));
      }
    }
    const Element alpha = alphas[rng() % alphas.size()];
    const auto f = orth_sum(phi, binary(Element::one(k), alpha));
    ++out.samples;
    try {
      const auto ker = witt_decompose(f, budget).kernel;
      if (ker.dim() > out.value) {
        out.value = ker.dim();
        out.witness = ker;
      }
    } catch (const Error&) {
      ++out.undecided;
    }
  }
  return out;
}

WittLemmaResult wittindex_lemma_check(const QuadraticPfister& pi, const QuadraticPfister& psi, int height,
                                      long budget) {
  const int n = pi.fold();
  if (n < 2 || psi.fold() != n + 1) throw Error(ErrorKind::HypothesisFailed, "needs pi in P_n and psi in P_{n+1}, n >= 2");
  if (!linkage_hypothesis(n, height))
    throw Error(ErrorKind::HypothesisFailed, "I_q^n is not known to be separably linked on this tower");
  WittLemmaResult out;
  const int target = (1 << (n - 1)) + 1;
  const auto full = orth_sum(orth_sum(expand(psi), expand(pi)), quasilinear_form({Element::one(pi.k())}));

  const auto rho = drop_first(pi, 1);
  const bool shaped = drop_first(psi, 2) == rho;
  if (!shaped) {
    if (is_hyperbolic(expand(psi), budget)) {
      out.chain.push_back("psi hyperbolic: i_W >= 2^n");
      out.structural_lower = 1 << n;
    } else if (witt_index(orth_sum(expand(psi), expand(pi)), budget) == (1 << n)) {
      out.chain.push_back("pi is a subform of psi: i_W >= 2^n");
      out.structural_lower = 1 << n;
    } else {
      throw Error(ErrorKind::HypothesisFailed, "pi and psi are not built over a shared rho");
    }
  } else {
    const Element alpha = pi.bilinear_slots.front();
    const Element beta = psi.bilinear_slots[0], gamma = psi.bilinear_slots[1];
    const auto r = expand(rho);
    const QuadraticForm middle =
        orth_sum(orth_sum(scale(alpha, r), scale(beta, r)), orth_sum(scale(gamma, r), scale(beta * gamma, r)));
    if (!equivalent(orth_sum(expand(psi), expand(pi)), middle, budget))
      throw std::logic_error("psi + pi is not Witt equivalent to <alpha, beta, gamma, beta gamma> (x) rho");
    out.chain.push_back("psi + pi = 2^{n-1} H + <alpha, beta, gamma, beta gamma> (x) rho (rho + rho hyperbolic)");
    const QuadraticPfister big = prepend({alpha, beta, gamma}, rho);
    bool hyperbolic = false;
    try {
      hyperbolic = is_hyperbolic(expand(big), budget);
      out.chain.push_back(hyperbolic ? "<<alpha, beta, gamma>> (x) rho hyperbolic (verified)"
                                     : "<<alpha, beta, gamma>> (x) rho not hyperbolic");
    } catch (const Error&) {
      hyperbolic = iqn_vanishes(n + 2, height);
      out.chain.push_back("<<alpha, beta, gamma>> (x) rho hyperbolic since I_q^{n+2} = 0 (cited)");
    }
    if (!hyperbolic) throw Error(ErrorKind::HypothesisFailed, "the (n+2)-fold is anisotropic");
    out.chain.push_back("<alpha, beta, gamma, beta gamma> (x) rho + <1> is a neighbor of it, hence isotropic");
    out.structural_lower = target;
  }
  try {
    out.direct_index = witt_index(full, budget);
  } catch (const Error&) {
  }
  out.holds = out.structural_lower >= target && (!out.direct_index || *out.direct_index >= target);
  return out;
}

}  // namespace qf2::linkage
