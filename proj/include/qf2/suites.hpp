#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qf2/field.hpp"

namespace qf2::suites {

struct Options {
  FieldTower field{1, {"t"}};
  long samples = 100;
  uint64_t seed = 1;
  long budget = 20000;
  /// Worker threads for instance evaluation; 0 picks the hardware concurrency.
  int threads = 0;
};

/// A failed check with the instance printed in the field's variable names.
struct Finding {
  std::string instance;
  std::string detail;
};

struct Report {
  std::string name;
  std::string field;
  long tested = 0;
  long passed = 0;
  long undecided = 0;
  long exceptions = 0;
  std::vector<Finding> counterexamples;
  std::vector<Finding> errors;
  std::vector<std::pair<std::string, std::string>> values;
  /// Counts of passing instances by category (e.g. "anisotropic", "dim=4").
  std::map<std::string, long> tally;

  bool clean() const { return counterexamples.empty() && exceptions == 0; }
  void note(const std::string& key, const std::string& value) { values.emplace_back(key, value); }
  std::string value(const std::string& key) const;
};

/// Isotropy verdict against hyperbolicity on tame Pfister forms of folds 1 to 3.
Report pfister_dichotomy(const Options& o);
/// Arf class and Clifford triviality across random elementary-move rechains.
Report invariant_rechain(const Options& o);
/// Residue decider against bounded brute search (budget = o.budget).
Report oracle_consistency(const Options& o);
/// Anisotropic kernels of sums of scaled n-folds have dimension 0 or >= 2^n.
Report hauptsatz(const Options& o, int n);
/// i_W(p + q) >= 2^r for constructed separably r-linked n-folds, with equality
/// when p and q are not isometric and r = n - 1.
Report wittindex_criterion(const Options& o);
/// <<t_1, ..., t_m, 1]] anisotropic and tame forms of dimension 2^{m+1} + 2 isotropic.
Report u_witnesses(const Options& o);
/// basis_rewrite of degree-n sums emits at most binom(m, n - 1) symbols of the same class.
Report basis_bound(const Options& o, int degree);
/// goodbound_decompose on sampled I_q^2 classes, verified and within the bound.
Report goodbound(const Options& o, int n);
/// Anisotropic forms in I_q^n have dimension 2^n or 2^{n+1} and split as pi + psi.
Report theoremu(const Options& o, int n);
/// Anisotropic n-folds are inseparably (n-1)-linked where I_q^{n+1} vanishes.
Report coru(const Options& o, int n);
/// Witt-index lower bound for pi = <<alpha>> rho and psi = <<beta, gamma>> rho.
Report wittlemma(const Options& o);
/// Sampled maximum anisotropic dimension of phi + [1, alpha] against u.
Report theoremd(const Options& o, int n);
/// Inseparable linkage from lift_linkage on constructed 3-folds sharing a 2-fold.
Report lift(const Options& o);

}  // namespace qf2::suites
