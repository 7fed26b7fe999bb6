#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qf2/forms.hpp"

namespace qf2 {

enum class IsoKind { Isotropic, Anisotropic, Undecided };
const char* to_string(IsoKind kind);

/// Residue tree proving anisotropy. Leaves:
///   "empty"                   zero-dimensional form
///   "trace"                   base-field pair [1,a] with Tr(a) = 1; data = {a}
///   "wild-pair"               single pair [1,a] with a outside wp(F); data = {a}
///   "quasilinear-independent" entries linearly independent over F^2; data = entries
/// Inner node "residue-split" at `level`: children are the unit and t-parts.
struct Certificate {
  std::string rule;
  int level = 0;
  std::vector<Element> data;
  std::vector<Certificate> children;
};

struct SearchReport {
  long budget = 0;
  long candidates = 0;
  long pool_size = 0;
  std::string note;
};

/// An isotropic witness is either an exact zero `witness`, or a pair
/// (witness, lift_direction) = (w, e) with b(w,e) != 0 and
/// q(w) q(e) / b(w,e)^2 in wp(F): then w + lambda e is a zero for a root lambda of a
/// separable quadratic, which exists in the complete field but need not be rational.
struct IsotropyVerdict {
  IsoKind kind = IsoKind::Undecided;
  std::vector<Element> witness;
  std::vector<Element> lift_direction;
  Certificate certificate;
  SearchReport report;
};

constexpr long kDefaultSearchBudget = 20000;

IsotropyVerdict isotropy(const QuadraticForm& f, long budget = kDefaultSearchBudget);
/// Bounded enumeration over a fixed pool; never returns Anisotropic.
IsotropyVerdict brute_search(const QuadraticForm& f, long budget);

/// Re-checks a witness (Isotropic) or a certificate (Anisotropic) from scratch.
bool verify_verdict(const QuadraticForm& f, const IsotropyVerdict& v);
bool verify_certificate(const Certificate& c);

/// f = index x H + kernel, kernel anisotropic; for singular forms the index also
/// counts the zero directions of the quasilinear part and kernel.quasilinear is its
/// anisotropic part.
struct WittDecomposition {
  int index = 0;
  QuadraticForm kernel;
  std::vector<std::string> proof;
};

WittDecomposition witt_decompose(const QuadraticForm& f, long budget = kDefaultSearchBudget);
int witt_index(const QuadraticForm& f, long budget = kDefaultSearchBudget);
bool is_hyperbolic(const QuadraticForm& f, long budget = kDefaultSearchBudget);
/// Nonsingular forms only: f ~ g iff f + g is hyperbolic (-g = g in characteristic 2).
bool witt_equivalent(const QuadraticForm& f, const QuadraticForm& g, long budget = kDefaultSearchBudget);

/// Largest variable level occurring in the entries of f (0 for base-field forms).
int form_level(const QuadraticForm& f);

/// Anisotropic part and defect of a quasilinear form: entries spanning the same
/// F^2-space, independent; defect = dim - rank.
struct QuasilinearReduction {
  std::vector<Element> independent;
  int defect = 0;
  /// Coefficients z with sum c_i z_i^2 = 0, one per dependency.
  std::vector<std::vector<Element>> relations;
};
QuasilinearReduction reduce_quasilinear(const std::vector<Element>& entries);

}  // namespace qf2
