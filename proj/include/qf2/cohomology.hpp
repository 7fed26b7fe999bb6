#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qf2/forms.hpp"

namespace qf2 {

/// a db_1/b_1 ^ ... ^ db_{n-1}/b_{n-1}, a class of degree n = slots + 1.
struct Symbol {
  Element coefficient;
  std::vector<Element> slots;

  int degree() const { return static_cast<int>(slots.size()) + 1; }
  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Formal sum of degree-n symbols; the empty sum is the trivial class.
struct SymbolSum {
  int degree = 1;
  std::vector<Symbol> symbols;

  SymbolSum() = default;
  explicit SymbolSum(int n, std::vector<Symbol> s = {});
  bool empty() const { return symbols.empty(); }
  size_t size() const { return symbols.size(); }
};

/// Sum of classes (subtraction is the same thing in characteristic 2).
SymbolSum operator+(const SymbolSum& x, const SymbolSum& y);
SymbolSum operator+(const SymbolSum& x, const Symbol& s);

/// sum_J c_J dt_J over increasing index lists J (1-based), |J| = degree.
struct DifferentialForm {
  int degree = 0;
  int height = 0;
  std::map<std::vector<int>, Element> coords;

  bool is_zero() const { return coords.empty(); }
  friend bool operator==(const DifferentialForm&, const DifferentialForm&) = default;
};

/// Largest variable level occurring in the sum.
int sum_level(const SymbolSum& s);

DifferentialForm to_differential(const SymbolSum& s, int height);
/// One symbol (c_J prod t_j) dt_J/t_J per nonzero coordinate.
SymbolSum basis_rewrite(const DifferentialForm& w, unsigned k);

/// Graded residue at a level: the tame part of H^n splits as H^n(K) + H^{n-1}(K).
struct ResidueSplit {
  SymbolSum unramified;
  SymbolSum ramified;
};
ResidueSplit symbol_residue(const SymbolSum& s, int level);

/// Drops zero coefficients, square or repeated slots and coefficients in wp(F);
/// merges symbols with equal slot lists.
SymbolSum simplify(const SymbolSum& s);

/// nullopt when a wild symbol blocks the residue recursion.
std::optional<bool> class_trivial(const SymbolSum& s);

QuadraticPfister symbol_to_pfister(const Symbol& s);
Symbol pfister_to_symbol(const QuadraticPfister& p);

struct SymbolLength {
  int value = 0;
  bool exact = false;
  SymbolSum expression;
  long candidates = 0;
};
SymbolLength symbol_length_exact(const SymbolSum& s, long budget);

/// Search pools: coefficients are u * t^e with e in [-2,2]^m (then 1 + those);
/// slots are square-class representatives t^e with e in {0,1}^m, then 1 + monomials.
std::vector<Element> coefficient_pool(unsigned k, int height, size_t limit);
std::vector<Element> slot_pool(unsigned k, int height, size_t limit);

std::string format_symbol(const Symbol& s, const std::vector<std::string>& names);
std::string format_sum(const SymbolSum& s, const std::vector<std::string>& names);

}  // namespace qf2
