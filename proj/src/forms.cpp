#include "qf2/forms.hpp"

#include <sstream>

namespace qf2 {

namespace {

void require_k(unsigned k, const Element& x) {
  if (x.k() != k) throw Error(ErrorKind::FieldMismatch, "entries come from different base fields");
}

void require_nonzero(const Element& x, const char* what) {
  if (x.is_zero()) throw Error(ErrorKind::ZeroScalar, what);
}

}  // namespace

QuadraticForm binary(const Element& b, const Element& a) {
  require_nonzero(b, "pair coefficient must be nonzero");
  require_k(b.k(), a);
  return QuadraticForm{b.k(), {Pair{b, a}}, {}};
}

QuadraticForm hyperbolic_form(unsigned k, int planes) {
  QuadraticForm f{k, {}, {}};
  for (int i = 0; i < planes; ++i) f.pairs.push_back({Element::one(k), Element::zero(k)});
  return f;
}

QuadraticForm quasilinear_form(const std::vector<Element>& entries) {
  QuadraticForm f;
  if (!entries.empty()) f.k = entries.front().k();
  for (const auto& c : entries) {
    require_nonzero(c, "quasilinear entries must be nonzero");
    require_k(f.k, c);
  }
  f.quasilinear = entries;
  return f;
}

QuadraticForm pfister_expand(const QuadraticPfister& p) {
  QuadraticForm f = binary(Element::one(p.k()), p.last);
  return tensor(BilinearPfister{p.bilinear_slots}, f);
}

QuadraticForm orth_sum(const QuadraticForm& f, const QuadraticForm& g) {
  if (f.dim() == 0) return g;
  if (g.dim() == 0) return f;
  if (f.k != g.k) throw Error(ErrorKind::FieldMismatch, "orthogonal sum over different base fields");
  QuadraticForm out = f;
  out.pairs.insert(out.pairs.end(), g.pairs.begin(), g.pairs.end());
  out.quasilinear.insert(out.quasilinear.end(), g.quasilinear.begin(), g.quasilinear.end());
  return out;
}

QuadraticForm scale(const Element& c, const QuadraticForm& f) {
  require_nonzero(c, "scaling factor must be nonzero");
  if (f.dim() > 0) require_k(f.k, c);
  QuadraticForm out = f;
  out.k = c.k();
  for (auto& p : out.pairs) p.b = c * p.b;
  for (auto& q : out.quasilinear) q = c * q;
  return out;
}

QuadraticForm tensor(const BilinearPfister& B, const QuadraticForm& f) {
  QuadraticForm out = f;
  for (auto it = B.slots.rbegin(); it != B.slots.rend(); ++it) out = orth_sum(out, scale(*it, out));
  return out;
}

Element evaluate(const QuadraticForm& f, const std::vector<Element>& v) {
  if (static_cast<int>(v.size()) != f.dim()) throw Error(ErrorKind::InvalidArgument, "vector length does not match the form");
  Element acc = Element::zero(f.k);
  size_t idx = 0;
  for (const auto& p : f.pairs) {
    const Element& x = v[idx++];
    const Element& y = v[idx++];
    if (x.is_zero() && y.is_zero()) continue;
    acc += p.b * (x.square() + x * y + p.a * y.square());
  }
  for (const auto& c : f.quasilinear) {
    const Element& z = v[idx++];
    if (!z.is_zero()) acc += c * z.square();
  }
  return acc;
}

Element polar(const QuadraticForm& f, const std::vector<Element>& v, const std::vector<Element>& w) {
  if (static_cast<int>(v.size()) != f.dim() || static_cast<int>(w.size()) != f.dim())
    throw Error(ErrorKind::InvalidArgument, "vector length does not match the form");
  Element acc = Element::zero(f.k);
  for (size_t i = 0; i < f.pairs.size(); ++i) {
    const Element t = v[2 * i] * w[2 * i + 1] + v[2 * i + 1] * w[2 * i];
    if (!t.is_zero()) acc += f.pairs[i].b * t;
  }
  return acc;
}

QuadraticForm apply_move(const QuadraticForm& f, const Move& m) {
  const int r = static_cast<int>(f.pairs.size());
  auto check = [&](int i) {
    if (i < 0 || i >= r) throw Error(ErrorKind::InvalidArgument, "move refers to a missing pair");
  };
  QuadraticForm out = f;
  switch (m.kind) {
    case MoveKind::WpShift:
      check(m.i);
      out.pairs[m.i].a += wp(m.s);
      break;
    case MoveKind::NormScale: {
      check(m.i);
      const Element nu = m.x.square() + m.x * m.y + f.pairs[m.i].a * m.y.square();
      if (nu.is_zero()) throw Error(ErrorKind::InvalidArgument, "norm-scaling value is zero");
      out.pairs[m.i].b *= nu;
      break;
    }
    case MoveKind::Swap:
      check(m.i);
      check(m.j);
      std::swap(out.pairs[m.i], out.pairs[m.j]);
      break;
    case MoveKind::TwoPair: {
      check(m.i);
      check(m.j);
      if (m.i == m.j) throw Error(ErrorKind::InvalidArgument, "two-pair move needs distinct pairs");
      // b[1,a] + b'[1,a'] = [b, a/b] + [b', a'/b'] and [x,y] + [z,w] = [x+z, y] + [z, y+w].
      const Pair& p = f.pairs[m.i];
      const Pair& q = f.pairs[m.j];
      const Element sum = p.b + q.b;
      const Element ratio = p.a / p.b;
      if (sum.is_zero())
        out.pairs[m.i] = {Element::one(f.k), Element::zero(f.k)};
      else
        out.pairs[m.i] = {sum, sum * ratio};
      out.pairs[m.j] = {q.b, q.b * ratio + q.a};
      break;
    }
  }
  return out;
}

std::string describe(const Move& m, const std::vector<std::string>& names) {
  std::ostringstream os;
  switch (m.kind) {
    case MoveKind::WpShift:
      os << "wp-shift pair " << m.i << " by " << format_element(m.s, names);
      break;
    case MoveKind::NormScale:
      os << "norm-scale pair " << m.i << " by value at (" << format_element(m.x, names) << ", "
         << format_element(m.y, names) << ")";
      break;
    case MoveKind::Swap:
      os << "swap pairs " << m.i << " and " << m.j;
      break;
    case MoveKind::TwoPair:
      os << "two-pair relation on pairs " << m.i << " and " << m.j;
      break;
  }
  return os.str();
}

NormalizedPresentation normalize_presentation(const QuadraticForm& f) {
  if (!f.nonsingular()) throw Error(ErrorKind::SingularInput, "normalization needs a nonsingular form");
  if (f.pairs.size() < 2) throw Error(ErrorKind::DimensionTooSmall, "normalization needs dimension at least 4");
  Element arf = Element::zero(f.k);
  for (const auto& p : f.pairs) arf += p.a;
  const auto red = wp_reduce(arf);
  if (!red.is_in_wp) throw Error(ErrorKind::ArfNontrivial, "Arf invariant is nontrivial");

  NormalizedPresentation out;
  out.form = f;
  auto& pairs = out.form.pairs;
  // A pair with square coefficient d^2 is isometric to [1,a]; use it as the last
  // pair so no scaling is needed.
  std::optional<size_t> square_at;
  for (size_t i = pairs.size(); i-- > 0;) {
    if (is_square(pairs[i].b).is_square) {
      square_at = i;
      break;
    }
  }
  if (square_at) {
    std::swap(pairs[*square_at], pairs.back());
    pairs.back().b = Element::one(f.k);
  } else {
    const Element c = pairs.back().b.inverse();
    out.form = scale(c, out.form);
    out.scaled_by = c;
  }
  Element rest = Element::zero(f.k);
  for (size_t i = 0; i + 1 < out.form.pairs.size(); ++i) rest += out.form.pairs[i].a;
  out.form.pairs.back().a = rest;
  out.arf_witness = red.correction;
  out.arf_witness_exact = red.exact;
  return out;
}

bool is_normalized(const QuadraticForm& f) {
  if (!f.nonsingular() || f.pairs.size() < 2 || !f.pairs.back().b.is_one()) return false;
  Element rest = Element::zero(f.k);
  for (size_t i = 0; i + 1 < f.pairs.size(); ++i) rest += f.pairs[i].a;
  return rest == f.pairs.back().a;
}

std::string format_form(const QuadraticForm& f, const std::vector<std::string>& names) {
  if (f.dim() == 0) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& p : f.pairs) {
    if (!first) os << " + ";
    first = false;
    if (!p.b.is_one()) os << format_element(p.b, names) << "*";
    os << "[1," << format_element(p.a, names) << "]";
  }
  if (!f.quasilinear.empty()) {
    if (!first) os << " + ";
    os << "<";
    for (size_t i = 0; i < f.quasilinear.size(); ++i) os << (i ? "," : "") << format_element(f.quasilinear[i], names);
    os << ">q";
  }
  return os.str();
}

std::string format_pfister(const QuadraticPfister& p, const std::vector<std::string>& names) {
  std::ostringstream os;
  os << "<<";
  for (const auto& b : p.bilinear_slots) os << format_element(b, names) << ",";
  os << format_element(p.last, names) << "]]";
  return os.str();
}

}  // namespace qf2
