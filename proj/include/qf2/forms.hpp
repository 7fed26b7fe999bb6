#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qf2/field.hpp"

namespace qf2 {

/// b * [1, a], the binary form b(x^2 + xy + a y^2).
struct Pair {
  Element b;
  Element a;
  friend bool operator==(const Pair&, const Pair&) = default;
};

/// Presentation of b_1[1,a_1] + ... + b_r[1,a_r] + <c_1, ..., c_s>. Coordinates of a
/// vector are ordered (x_1, y_1, ..., x_r, y_r, z_1, ..., z_s).
struct QuadraticForm {
  unsigned k = 1;
  std::vector<Pair> pairs;
  std::vector<Element> quasilinear;

  int dim() const { return static_cast<int>(2 * pairs.size() + quasilinear.size()); }
  bool nonsingular() const { return quasilinear.empty(); }
  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
};

/// <<b_1, ..., b_{n-1}, a]]
struct QuadraticPfister {
  std::vector<Element> bilinear_slots;
  Element last;

  int fold() const { return static_cast<int>(bilinear_slots.size()) + 1; }
  unsigned k() const { return last.k(); }
  friend bool operator==(const QuadraticPfister&, const QuadraticPfister&) = default;
};

/// <<b_1, ..., b_k>>
struct BilinearPfister {
  std::vector<Element> slots;
  friend bool operator==(const BilinearPfister&, const BilinearPfister&) = default;
};

QuadraticForm binary(const Element& b, const Element& a);
QuadraticForm hyperbolic_form(unsigned k, int planes);
QuadraticForm quasilinear_form(const std::vector<Element>& entries);

QuadraticForm pfister_expand(const QuadraticPfister& p);
QuadraticForm orth_sum(const QuadraticForm& f, const QuadraticForm& g);
QuadraticForm scale(const Element& c, const QuadraticForm& f);
/// f, then f + b_i f for i = k down to 1; the same order pfister_expand uses, so
/// tensor(B, pfister_expand(p)) == pfister_expand(B's slots followed by p's).
QuadraticForm tensor(const BilinearPfister& B, const QuadraticForm& f);

/// q(v) and the polar form b_q(v, w).
Element evaluate(const QuadraticForm& f, const std::vector<Element>& v);
Element polar(const QuadraticForm& f, const std::vector<Element>& v, const std::vector<Element>& w);

// Elementary isometries of a presentation.
enum class MoveKind { WpShift, NormScale, Swap, TwoPair };

struct Move {
  MoveKind kind;
  int i = 0;  ///< pair index
  int j = 0;  ///< second pair index (Swap, TwoPair)
  Element s;  ///< WpShift: a_i += wp(s)
  Element x, y;  ///< NormScale: b_i *= x^2 + xy + a_i y^2
};

QuadraticForm apply_move(const QuadraticForm& f, const Move& m);
std::string describe(const Move& m, const std::vector<std::string>& names);

struct NormalizedPresentation {
  QuadraticForm form;
  /// The input was multiplied by this scalar (nullopt: the result is isometric to
  /// the input itself).
  std::optional<Element> scaled_by;
  /// a_last(before) + sum of the other a_i == wp(arf_witness), up to the Hensel
  /// truncation flagged by arf_witness_exact.
  Element arf_witness;
  bool arf_witness_exact = true;
};

/// b_1[1,a_1] + ... + b_{m-1}[1,a_{m-1}] + [1, a_1 + ... + a_{m-1}].
NormalizedPresentation normalize_presentation(const QuadraticForm& f);
bool is_normalized(const QuadraticForm& f);

std::string format_form(const QuadraticForm& f, const std::vector<std::string>& names);
std::string format_pfister(const QuadraticPfister& p, const std::vector<std::string>& names);

}  // namespace qf2
