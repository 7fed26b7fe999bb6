#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qf2/cohomology.hpp"
#include "qf2/forms.hpp"
#include "qf2/witt.hpp"

namespace qf2::linkage {

enum class LinkKind { Separable, Inseparable };
const char* to_string(LinkKind kind);

/// Separable: p = <<c_1..c_j>> (x) common and q = <<d_1..d_j>> (x) common, with
/// common a quadratic Pfister form. Inseparable: p = common (x) p' and
/// q = common (x) q', with common a bilinear Pfister form and p', q' quadratic.
struct LinkageWitness {
  LinkKind kind = LinkKind::Separable;
  QuadraticPfister common_quadratic;
  BilinearPfister common_bilinear;
  /// Separable: the bilinear complement slots. Inseparable: the quadratic complements.
  std::vector<Element> complement_p, complement_q;
  QuadraticPfister quadratic_p, quadratic_q;
  std::string route;

  int order() const;  ///< the k of k-linkage
  QuadraticPfister reassemble_p() const;
  QuadraticPfister reassemble_q() const;
};

/// Reassembles both sides and compares them with p and q by witt_equivalent.
bool verify_witness(const LinkageWitness& w, const QuadraticPfister& p, const QuadraticPfister& q,
                    long budget = kDefaultSearchBudget);

struct MaxLinkage {
  int r = 0;
  int witt_index = 0;
  bool power_of_two = true;  ///< false would contradict the Witt-index criterion
  std::optional<LinkageWitness> witness;
  long candidates = 0;
};

/// r = log2 i_W(p + q); with want_witness a verified separable r-linkage is searched
/// for (pooled), the numeric r stands either way. Throws UndecidableInstance.
MaxLinkage max_sep_linkage(const QuadraticPfister& p, const QuadraticPfister& q, long budget = kDefaultSearchBudget,
                           bool want_witness = false);

/// Verified separable r-linkage: common r-folds drawn from sub-Pfister forms of p and
/// q and from pools, complements read off the anisotropic part of p + common.
std::optional<LinkageWitness> separable_witness(const QuadraticPfister& p, const QuadraticPfister& q, int r,
                                                long budget, long* candidates = nullptr);

/// Inseparable witness for n-folds over a tower of height n - 1: both forms are
/// <<t_1, ..., t_m, c]] by the 2-basis rewrite of their classes.
std::optional<LinkageWitness> top_degree_witness(const QuadraticPfister& p, const QuadraticPfister& q, int height,
                                                 long budget = kDefaultSearchBudget);

struct InsepResult {
  std::optional<bool> linked;  ///< nullopt: Undecided
  std::optional<LinkageWitness> witness;
  std::string route;  ///< "identical", "septoinsep", "top-degree", "search", "exhausted"
};

InsepResult insep_k_linked(const QuadraticPfister& p, const QuadraticPfister& q, int k, int height, long budget);

/// Separable (n-1)-linkage oracle for two n-folds.
using SepOracle =
    std::function<std::optional<LinkageWitness>(const QuadraticPfister&, const QuadraticPfister&)>;
/// The default oracle: separable_witness at r = n - 1.
SepOracle search_oracle(long budget);

struct LiftResult {
  std::optional<LinkageWitness> separable;  ///< separable n-linkage of the (n+1)-folds
  std::optional<LinkageWitness> inseparable;
  std::vector<std::string> chain;
};

/// Executes the lifting argument for (n+1)-folds p, q. Throws OracleFailure,
/// UndecidableInstance, HypothesisFailed.
LiftResult lift_linkage(const QuadraticPfister& p, const QuadraticPfister& q, int height, const SepOracle& oracle,
                        long budget);

struct UEstimate {
  int n = 0;
  long lower = 0;
  std::optional<QuadraticPfister> witness;
  bool witness_anisotropic = false;
  long claimed = 0;
  std::string provenance;
  long samples = 0;
  long isotropic = 0;
  long undecided = 0;
};

/// u^n of a tower: witness <<t_1..t_m, a]] and sampled isotropy at dimension
/// claimed + 2 (u^n = 2^{m+1} for n <= m + 1 and the group vanishes above).
UEstimate u_n_estimate(const FieldTower& field, int n, long samples, uint64_t seed, long budget);

/// Structural linkage table: every two n-folds share <<t_1..t_m>> when n = m + 1,
/// and I_q^n = 0 above; on the towers I_q^n is otherwise not assumed linked.
bool linkage_hypothesis(int n, int height);

struct LinkageEvidence {
  long tested = 0;
  long linked = 0;
  long undecided = 0;
};
/// Samples pairs of anisotropic n-folds and counts those separably (n-1)-linked.
LinkageEvidence sample_linkage(const FieldTower& field, int n, long samples, uint64_t seed, long budget);

struct TheoremUResult {
  QuadraticPfister pi;
  std::optional<QuadraticPfister> psi;  ///< nullopt: the psi-part is hyperbolic
  QuadraticForm psi_part;
  int dim = 0;
  bool dims_ok = false;  ///< dim in {2^n, 2^{n+1}}; false is a refutation candidate
};

/// f anisotropic in I_q^n: f ~ pi + psi with pi an n-fold and psi an (n+1)-fold.
TheoremUResult theoremu_decompose(const QuadraticForm& f, int n, int height, long budget);

struct DEstimate {
  int value = 0;
  QuadraticForm witness;
  long samples = 0;
  long undecided = 0;
};
/// Sampled maximum anisotropic dimension of phi + [1, alpha], phi in I_q^n.
DEstimate d_invariant_estimate(const FieldTower& field, int n, long samples, uint64_t seed, long budget);

struct WittLemmaResult {
  bool holds = false;
  int structural_lower = 0;
  std::optional<int> direct_index;
  std::vector<std::string> chain;
};

/// i_W(psi + pi + <1>) >= 2^{n-1} + 1 for pi = <<alpha>> (x) rho and
/// psi = <<beta, gamma>> (x) rho. Throws HypothesisFailed.
WittLemmaResult wittindex_lemma_check(const QuadraticPfister& pi, const QuadraticPfister& psi, int height,
                                      long budget);

}  // namespace qf2::linkage
