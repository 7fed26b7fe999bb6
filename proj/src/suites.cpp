#include "qf2/suites.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <optional>
#include <thread>

#include "qf2/cohomology.hpp"
#include "qf2/errors.hpp"
#include "qf2/invariants.hpp"
#include "qf2/linkage.hpp"
#include "qf2/sampling.hpp"
#include "qf2/symlen.hpp"
#include "qf2/witt.hpp"

namespace qf2::suites {

std::string Report::value(const std::string& key) const {
  for (const auto& [k, v] : values)
    if (k == key) return v;
  return "";
}

namespace {

enum class Outcome { Pass, Fail, Undecided, Exception, Skip };

struct Result {
  Outcome outcome = Outcome::Pass;
  std::string instance;
  std::string detail;
  std::string category;
};

using Task = std::function<Result()>;

bool undecided_kind(ErrorKind k) {
  switch (k) {
    case ErrorKind::SearchExhausted:
    case ErrorKind::UndecidableInstance:
    case ErrorKind::UndecidableClass:
    case ErrorKind::WildSymbol:
    case ErrorKind::OracleFailure:
      return true;
    default:
      return false;
  }
}

Result guarded(const std::string& instance, const std::function<Result()>& fn) {
  try {
    Result r = fn();
    r.instance = instance;
    return r;
  } catch (const Error& e) {
    return {undecided_kind(e.kind()) ? Outcome::Undecided : Outcome::Exception, instance, e.what(), ""};
  } catch (const std::exception& e) {
    return {Outcome::Exception, instance, e.what(), ""};
  }
}

Result pass() { return {Outcome::Pass, "", "", ""}; }
Result fail(const std::string& why) { return {Outcome::Fail, "", why, ""}; }
Result undecided(const std::string& why) { return {Outcome::Undecided, "", why, ""}; }
Result skip() { return {Outcome::Skip, "", "", ""}; }

std::vector<Result> evaluate(const std::vector<Task>& tasks, int threads) {
  std::vector<Result> out(tasks.size());
  const int workers = std::max(1, std::min<int>(threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency()),
                                                static_cast<int>(tasks.size())));
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i; (i = next++) < tasks.size();) out[i] = tasks[i]();
  };
  if (workers == 1) {
    work();
    return out;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return out;
}

void record(Report& r, const Result& x) {
  switch (x.outcome) {
    case Outcome::Skip:
      return;
    case Outcome::Pass:
      ++r.passed;
      if (!x.category.empty()) ++r.tally[x.category];
      break;
    case Outcome::Fail:
      r.counterexamples.push_back({x.instance, x.detail});
      break;
    case Outcome::Undecided:
      ++r.undecided;
      break;
    case Outcome::Exception:
      ++r.exceptions;
      r.errors.push_back({x.instance, x.detail});
      break;
  }
  ++r.tested;
}

/// Draws tasks in order and records results in order until `target` instances were
/// tested (skips do not count) or `max_draws` tasks were drawn; the outcome does not
/// depend on the thread count.
void run_until(Report& r, const Options& o, long target, long max_draws, const std::function<Task()>& draw) {
  long drawn = 0;
  while (r.tested < target && drawn < max_draws) {
    const long batch = std::min(max_draws - drawn, std::max<long>(target - r.tested, 8));
    std::vector<Task> tasks;
    for (long i = 0; i < batch; ++i) tasks.push_back(draw());
    drawn += batch;
    for (const auto& x : evaluate(tasks, o.threads)) {
      if (r.tested >= target) break;
      record(r, x);
    }
  }
}

Report start(const char* name, const Options& o) {
  Report r;
  r.name = name;
  r.field = o.field.descriptor();
  return r;
}

std::string show(const QuadraticForm& f, const Options& o) { return format_form(f, o.field.variable_names); }
std::string show(const QuadraticPfister& p, const Options& o) { return format_pfister(p, o.field.variable_names); }
std::string show(const SymbolSum& s, const Options& o) { return format_sum(s, o.field.variable_names); }

QuadraticPfister with_front(std::vector<Element> front, const QuadraticPfister& rho) {
  QuadraticPfister p{std::move(front), rho.last};
  p.bilinear_slots.insert(p.bilinear_slots.end(), rho.bilinear_slots.begin(), rho.bilinear_slots.end());
  return p;
}

std::vector<Element> slots(sampling::Rng& rng, unsigned k, int m, int count) {
  std::vector<Element> out;
  for (int i = 0; i < count; ++i) out.push_back(sampling::slot(rng, k, m));
  return out;
}

bool anisotropic(const QuadraticPfister& p, long budget) {
  return isotropy(pfister_expand(p), budget).kind == IsoKind::Anisotropic;
}

long binom(int n, int r) {
  if (r < 0 || r > n) return 0;
  long v = 1;
  for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
  return v;
}

/// Sum of `terms` scaled tame n-folds.
QuadraticForm iqn_element(sampling::Rng& rng, unsigned k, int m, int n, int terms) {
  QuadraticForm f{k, {}, {}};
  for (int j = 0; j < terms; ++j)
    f = orth_sum(f, scale(sampling::slot(rng, k, m), pfister_expand(sampling::tame_pfister(rng, k, m, n))));
  return f;
}

}  // namespace

Report pfister_dichotomy(const Options& o) {
  auto r = start("pfister-dichotomy", o);
  const unsigned k = o.field.base_exponent;
  const int m = o.field.height();
  sampling::Rng rng(o.seed);
  long i = 0;
  run_until(r, o, o.samples, o.samples, [&]() -> Task {
    const auto p = sampling::tame_pfister(rng, k, m, 1 + static_cast<int>(i++ % 3));
    return [p, o] {
      return guarded(show(p, o), [&] {
        const auto f = pfister_expand(p);
        const auto v = isotropy(f, o.budget);
        if (v.kind == IsoKind::Undecided) return undecided("isotropy undecided");
        if (!verify_verdict(f, v)) return fail("verdict does not re-verify");
        const bool hyp = is_hyperbolic(f, o.budget);
        if ((v.kind == IsoKind::Isotropic) != hyp)
          return fail(std::string("isotropy ") + to_string(v.kind) + " but hyperbolic = " + (hyp ? "true" : "false"));
        return Result{Outcome::Pass, "", "", hyp ? "hyperbolic" : "anisotropic"};
      });
    };
  });
  return r;
}

Report invariant_rechain(const Options& o) {
  auto r = start("invariant-rechain", o);
  const unsigned k = o.field.base_exponent;
  const int m = o.field.height();
  sampling::Rng rng(o.seed);
  long i = 0;
  run_until(r, o, o.samples, o.samples, [&]() -> Task {
    const auto f = sampling::tame_form(rng, k, m, 2 + static_cast<int>(i++ % 2));
    const auto g = sampling::rechain(rng, f, m, 4);
    return [f, g, o] {
      return guarded(show(f, o) + "  ~>  " + show(g, o), [&] {
        if (arf(f).reduced != arf(g).reduced) return fail("Arf representatives differ");
        const auto cf = clifford_trivial(clifford(f)), cg = clifford_trivial(clifford(g));
        if (!cf || !cg) return undecided("Clifford triviality undecided");
        if (*cf != *cg) return fail("Clifford triviality differs");
        return pass();
      });
    };
  });
  return r;
}

Report oracle_consistency(const Options& o) {
  auto r = start("oracle-consistency", o);
  const unsigned k = o.field.base_exponent;
  const int m = o.field.height();
  sampling::Rng rng(o.seed);
  long i = 0;
  run_until(r, o, o.samples, o.samples, [&]() -> Task {
    const auto f = sampling::tame_form(rng, k, m, 1 + static_cast<int>(i++ % 3));
    return [f, o] {
      return guarded(show(f, o), [&] {
        const auto v = isotropy(f);
        if (!verify_verdict(f, v)) return fail("verdict does not re-verify");
        if (v.kind != IsoKind::Anisotropic) return pass();
        const auto b = brute_search(f, o.budget);
        if (b.kind == IsoKind::Isotropic) return fail("decider says Anisotropic, brute search found a zero");
        return Result{Outcome::Pass, "", "", "anisotropic"};
      });
    };
  });
  r.note("brute_budget", std::to_string(o.budget));
  return r;
}

Report hauptsatz(const Options& o, int n) {
  auto r = start("hauptsatz", o);
  const unsigned k = o.field.base_exponent;
  const int m = o.field.height();
  sampling::Rng rng(o.seed);
  long i = 0;
  run_until(r, o, o.samples, o.samples, [&]() -> Task {
    const auto f = iqn_element(rng, k, m, n, 1 + static_cast<int>(i++ % 3));
    return [f, n, o] {
      return guarded(show(f, o), [&] {
        const auto ker = witt_decompose(f, o.budget).kernel;
        if (ker.dim() != 0 && ker.dim() < (1 << n))
          return fail("anisotropic kernel of dimension " + std::to_string(ker.dim()) + ": " + show(ker, o));
        return pass();
      });
    };
  });
  r.note("n", std::to_string(n));
  return r;
}

Report wittindex_criterion(const Options& o) {
  auto r = start("wittindex-criterion", o);
  const unsigned k = o.field.base_exponent;
  const int m = o.field.height();
  sampling::Rng rng(o.seed);
  long i = 0;
  run_until(r, o, o.samples, 50 * o.samples, [&]() -> Task {
    const int n = 2 + static_cast<int>(i % 2);
    const int lr = 1 + static_cast<int>((i / 2) % (n - 1));
    ++i;
    const auto rho = sampling::tame_pfister(rng, k, m, lr);
    const auto p = with_front(slots(rng, k, m, n - lr), rho);
    const auto q = with_front(slots(rng, k, m, n - lr), rho);
    return [p, q, lr, n, o] {
      return guarded(show(p, o) + " , " + show(q, o), [&] {
        if (!anisotropic(p, o.budget) || !anisotropic(q, o.budget)) return skip();
        const int iw = witt_index(orth_sum(pfister_expand(p), pfister_expand(q)), o.budget);
        if (iw < (1 << lr)) return fail("i_W = " + std::to_string(iw) + " < 2^" + std::to_string(lr));
        if (iw & (iw - 1)) return fail("i_W = " + std::to_string(iw) + " is not a power of two");
        // Non-n-linkage of two n-folds is non-isometry, which is decidable here.
        if (lr == n - 1 && !witt_equivalent(pfister_expand(p), pfister_expand(q), o.budget)) {
          if (iw != (1 << lr)) return fail("not n-linked but i_W = " + std::to_string(iw));
          return Result{Outcome::Pass, "", "", "equality certified"};
        }
        return pass();
      });
    };
  });
  return r;
}

Report u_witnesses(const Options& o) {
  auto r = start("u-witnesses", o);
  const unsigned k = o.field.base_exponent;
  const int m = o.field.height();
  std::vector<Element> ts;
  for (int l = 1; l <= m; ++l) ts.push_back(Element::variable(k, l));
  const QuadraticPfister w{ts, Element::one(k)};
  const long u = 2L << m;
  r.note("witness", show(w, o));
  r.note("claimed_u", std::to_string(u));
  const auto wv = isotropy(pfister_expand(w), o.budget);
  const bool witness_ok = (m == 0 || wv.kind == IsoKind::Anisotropic) && verify_verdict(pfister_expand(w), wv);
  r.note("witness_verdict", to_string(wv.kind));
  if (m > 0 && !witness_ok) r.counterexamples.push_back({show(w, o), "witness is not anisotropic"});
  sampling::Rng rng(o.seed);
  run_until(r, o, o.samples, o.samples, [&]() -> Task {
    const auto f = sampling::tame_form(rng, k, m, static_cast<int>(u / 2) + 1);
    return [f, o] {
      return guarded(show(f, o), [&] {
        const auto v = isotropy(f, o.budget);
        if (v.kind == IsoKind::Undecided) return undecided("isotropy undecided");
        if (!verify_verdict(f, v)) return fail("verdict does not re-verify");
        if (v.kind == IsoKind::Anisotropic) return fail("anisotropic form above the claimed u");
        return pass();
      });
    };
  });
  r.note("sample_dim", std::to_string(u + 2));
  return r;
}

Report basis_bound(const Options& o, int degree) {
  auto r = start("basis-bound", o);
  const unsigned k = o.field.base_exponent;
  const int m = o.field.height();
  const long bound = binom(m, degree - 1);
  sampling::Rng rng(o.seed);
  long i = 0;
  run_until(r, o, o.samples, o.samples, [&]() -> Task {
    SymbolSum s(degree);
    for (int j = 0; j < 1 + static_cast<int>(i % 4); ++j) {
      Element c = sampling::slot(rng, k, m) + sampling::integral(rng, k, m);
      if (c.is_zero()) c = Element::one(k);
      s.symbols.push_back({c, slots(rng, k, m, degree - 1)});
    }
    ++i;
    return [s, m, k, bound, o] {
      return guarded(show(s, o), [&] {
        const auto out = basis_rewrite(to_differential(s, m), k);
        if (static_cast<long>(out.size()) > bound)
          return fail(std::to_string(out.size()) + " symbols exceed the bound " + std::to_string(bound));
        const auto t = class_trivial(s + out);
        if (!t) return undecided("class triviality undecided");
        if (!*t) return fail("rewrite changed the class: " + show(out, o));
        return pass();
      });
    };
  });
  r.note("degree", std::to_string(degree));
  r.note("bound", std::to_string(bound));
  return r;
}

Report goodbound(const Options& o, int n) {
  auto r = start("goodbound", o);
  const unsigned k = o.field.base_exponent;
  const int m = o.field.height();
  std::vector<long> us;
  for (int i = 2; i <= n; ++i) us.push_back(iqn_vanishes(i, m) ? 0 : 2L << m);
  const long bound = symlen::goodbound_value(us, n);
  r.note("bound", std::to_string(bound));
  sampling::Rng rng(o.seed);
  long i = 0;
  run_until(r, o, o.samples, 20 * o.samples, [&]() -> Task {
    const auto f = iqn_element(rng, k, m, n, 1 + static_cast<int>(i++ % 3));
    return [f, n, m, bound, o] {
      return guarded(show(f, o), [&] {
        // Classes the library cannot compute are not part of the sample.
        std::optional<symlen::GoodboundResult> g;
        try {
          g = symlen::goodbound_decompose(f, n, m, o.budget);
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::UndecidableClass || e.kind() == ErrorKind::WildSymbol) return skip();
          throw;
        }
        const auto t = class_trivial(g->output + g->target);
        if (!t || !*t) return fail("output does not match the class");
        if (static_cast<long>(g->output.size()) > bound)
          return fail(std::to_string(g->output.size()) + " symbols exceed the bound");
        // A hyperbolic form has the zero class and needs no splitting proof.
        if (!g->slots.empty() && !symlen::verify_proof(g->proof, o.budget)) return fail("proof does not re-verify");
        return Result{Outcome::Pass, "", show(g->output, o), "length=" + std::to_string(g->output.size())};
      });
    };
  });
  return r;
}

Report theoremu(const Options& o, int n) {
  auto r = start("theoremu", o);
  const unsigned k = o.field.base_exponent;
  const int m = o.field.height();
  sampling::Rng rng(o.seed);
  long i = 0;
  run_until(r, o, o.samples, 50 * o.samples, [&]() -> Task {
    QuadraticForm f{k, {}, {}};
    const int terms = 1 + static_cast<int>(i++ % 2);
    for (int j = 0; j < terms; ++j) {
      const auto p = sampling::anisotropic_pfister(rng, k, m, n);
      if (p) f = orth_sum(f, scale(sampling::slot(rng, k, m), pfister_expand(*p)));
    }
    return [f, n, m, o] {
      return guarded(show(f, o), [&] {
        const auto ker = witt_decompose(f, o.budget).kernel;
        if (ker.dim() == 0) return skip();
        const auto t = linkage::theoremu_decompose(ker, n, m, o.budget);
        if (!t.dims_ok) return fail("anisotropic dimension " + std::to_string(t.dim) + ": " + show(ker, o));
        std::string detail = "dim " + std::to_string(t.dim) + ", pi = " + show(t.pi, o);
        if (t.psi) detail += ", psi = " + show(*t.psi, o);
        return Result{Outcome::Pass, "", detail, t.psi ? "dim=" + std::to_string(t.dim) + ",psi" : "dim=" + std::to_string(t.dim)};
      });
    };
  });
  return r;
}

Report coru(const Options& o, int n) {
  auto r = start("coru", o);
  const unsigned k = o.field.base_exponent;
  const int m = o.field.height();
  sampling::Rng rng(o.seed);
  run_until(r, o, o.samples, 50 * o.samples, [&]() -> Task {
    const auto p = sampling::anisotropic_pfister(rng, k, m, n), q = sampling::anisotropic_pfister(rng, k, m, n);
    return [p, q, n, m, o] {
      if (!p || !q) return skip();
      return guarded(show(*p, o) + " , " + show(*q, o), [&] {
        const auto x = linkage::insep_k_linked(*p, *q, n - 1, m, o.budget);
        if (!x.linked) return undecided("route " + x.route);
        if (!*x.linked) return fail("not inseparably linked (route " + x.route + ")");
        if (!x.witness || !linkage::verify_witness(*x.witness, *p, *q, o.budget))
          return fail("witness does not re-verify");
        return pass();
      });
    };
  });
  return r;
}

Report wittlemma(const Options& o) {
  auto r = start("wittlemma", o);
  const unsigned k = o.field.base_exponent;
  const int m = o.field.height();
  sampling::Rng rng(o.seed);
  run_until(r, o, o.samples, o.samples, [&]() -> Task {
    const auto rho = sampling::tame_pfister(rng, k, m, 1);
    const auto pi = with_front(slots(rng, k, m, 1), rho);
    const auto psi = with_front(slots(rng, k, m, 2), rho);
    return [pi, psi, m, o] {
      return guarded(show(pi, o) + " , " + show(psi, o), [&] {
        const auto w = linkage::wittindex_lemma_check(pi, psi, m, o.budget);
        const int need = (1 << (pi.fold() - 1)) + 1;
        if (!w.holds) return fail("lower bound fails");
        if (w.direct_index && *w.direct_index < need)
          return fail("direct index " + std::to_string(*w.direct_index) + " below " + std::to_string(need));
        return pass();
      });
    };
  });
  return r;
}

Report theoremd(const Options& o, int n) {
  auto r = start("theoremd", o);
  const auto d = linkage::d_invariant_estimate(o.field, n, o.samples, o.seed, o.budget);
  const auto u = linkage::u_n_estimate(o.field, 1, std::min<long>(o.samples, 50), o.seed, o.budget);
  r.tested = d.samples;
  r.undecided = d.undecided;
  r.passed = d.samples - d.undecided;
  r.note("d", std::to_string(d.value));
  r.note("u", std::to_string(u.claimed));
  r.note("d_witness", show(d.witness, o));
  if (d.value > u.claimed)
    r.counterexamples.push_back({show(d.witness, o), "anisotropic dimension above u"});
  return r;
}

Report lift(const Options& o) {
  auto r = start("lift", o);
  const unsigned k = o.field.base_exponent;
  const int m = o.field.height();
  sampling::Rng rng(o.seed);
  run_until(r, o, o.samples, 50 * o.samples, [&]() -> Task {
    const auto rho = sampling::tame_pfister(rng, k, m, 2);
    const auto p = with_front(slots(rng, k, m, 1), rho);
    const auto q = with_front(slots(rng, k, m, 1), rho);
    return [p, q, m, o] {
      return guarded(show(p, o) + " , " + show(q, o), [&] {
        if (!anisotropic(p, o.budget) || !anisotropic(q, o.budget)) return skip();
        const auto x = linkage::lift_linkage(p, q, m, linkage::search_oracle(o.budget), o.budget);
        if (!x.inseparable) return undecided("no inseparable witness");
        if (x.inseparable->order() < p.fold() - 1) return fail("witness of too small order");
        if (!linkage::verify_witness(*x.inseparable, p, q, o.budget)) return fail("witness does not re-verify");
        return pass();
      });
    };
  });
  return r;
}

}  // namespace qf2::suites
