#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qf2/cohomology.hpp"
#include "qf2/forms.hpp"

namespace qf2::symlen {

/// K = F[sqrt b_1, ..., sqrt b_l]. An element is a vector of 2^l base coordinates;
/// coordinate S (a bitmask) multiplies prod_{i in S} sqrt b_i.
class InseparableExtension {
 public:
  using Value = std::vector<Element>;

  /// Throws InvalidArgument unless the b_i are 2-independent over F of the given
  /// height (each b_i a non-square in the field generated by the previous ones).
  InseparableExtension(std::vector<Element> adjoined, int height);

  unsigned k() const { return k_; }
  int degree() const { return 1 << adjoined_.size(); }
  const std::vector<Element>& adjoined() const { return adjoined_; }

  Value embed(const Element& x) const;
  /// sqrt b_i (0-based i).
  Value root(size_t i) const;
  Value add(const Value& x, const Value& y) const;
  Value mul(const Value& x, const Value& y) const;
  /// x^2 lies in F: (sum c_S e_S)^2 = sum c_S^2 prod_{i in S} b_i.
  Element square(const Value& x) const;
  /// x^{-1} = x * (x^2)^{-1}.
  Value inverse(const Value& x) const;
  bool is_zero(const Value& x) const;
  bool equal(const Value& x, const Value& y) const;

 private:
  unsigned k_ = 1;
  std::vector<Element> adjoined_;
};

struct WittStep {
  QuadraticForm lhs;
  QuadraticForm rhs;
  std::string relation;       ///< "isometric over K" or "Witt equivalent over F"
  std::string justification;
  bool verified = false;      ///< re-checked by computation (otherwise cited)
};

struct HauptsatzStep {
  QuadraticForm form;  ///< the remainder, of dimension 2^n - 2
  int n = 0;
  int dim = 0;
};

struct DecompositionProof {
  std::vector<WittStep> witt_chain;
  HauptsatzStep hauptsatz_step;
};

struct SplitResult {
  std::vector<Element> slots;
  DecompositionProof proof;
};

/// For normalized f = b_1[1,a_1] + ... + b_{m-1}[1,a_{m-1}] + [1, sum a_i] in I_q^n
/// with 2m >= 2^n: the first l = m + 1 - 2^{n-1} coefficients, whose square roots
/// split f.
SplitResult split_field_slots(const QuadraticForm& f, int n, long budget = 20000);
/// Re-checks every computable step of a proof.
bool verify_proof(const DecompositionProof& proof, long budget = 20000);

struct LagKingResult {
  std::vector<SymbolSum> omegas;  ///< one degree n-1 sum per slot
  long candidates = 0;
  int stage = 0;  ///< 0: peeled directly; 1, 2: number of pooled symbols used
  size_t pool_size = 0;
};

/// omega_1, ..., omega_l with C + sum omega_i ^ db_i/b_i trivial, found by a
/// verified pooled search. Throws SearchExhausted.
LagKingResult lagking_decompose(const SymbolSum& c, const std::vector<Element>& slots, long budget);

/// sum omega_i ^ db_i/b_i
SymbolSum wedge_slots(const std::vector<SymbolSum>& omegas, const std::vector<Element>& slots);

struct GoodboundResult {
  SymbolSum output;
  SymbolSum target;         ///< the class that was decomposed
  std::vector<Element> slots;
  DecompositionProof proof;
  int length_bound = 1;     ///< product of the l's met along the recursion
  long candidates = 0;
};

/// Degree-n class of f, from `known` when supplied; otherwise the Clifford class for
/// n = 2, zero above the top degree, and a pooled search c dt_1/t_1 ^ ... in the top
/// degree. Throws UndecidableClass.
SymbolSum e_class(const QuadraticForm& f, int n, int height, long budget);

/// Recursive decomposition of the e^n class of f into at most the product of the
/// l's symbols; output verified against the target class.
GoodboundResult goodbound_decompose(const QuadraticForm& f, int n, int height, long budget,
                                    const std::optional<SymbolSum>& known = std::nullopt);

/// prod_{i=2}^n (u^i / 2 + 1 - 2^{i-1}) for u_values = (u^2, ..., u^n).
long goodbound_value(const std::vector<long>& u_values, int n);
/// binom(m, d - 1)
long prank_bound(int m, int d);

}  // namespace qf2::symlen
