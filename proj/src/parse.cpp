#include "qf2/parse.hpp"

#include <cctype>
#include <optional>
#include <variant>

#include "qf2/errors.hpp"
#include "qf2/gf2k.hpp"

namespace qf2::parse {

namespace {

[[noreturn]] void fail(size_t pos, const std::string& what) {
  throw Error(ErrorKind::ParseError, "at column " + std::to_string(pos + 1) + ": " + what);
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

class Parser {
 public:
  Parser(const std::string& src, const FieldTower& field) : src_(src), field_(field), k_(field.base_exponent) {}

  size_t pos() const { return pos_; }
  void seek(size_t p) { pos_ = p; }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip();
    return pos_ >= src_.size();
  }
  char peek() {
    skip();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }
  bool peek_is(const std::string& s) {
    skip();
    return src_.compare(pos_, s.size(), s) == 0;
  }
  bool accept(const std::string& s) {
    if (!peek_is(s)) return false;
    pos_ += s.size();
    return true;
  }
  void expect(const std::string& s) {
    if (!accept(s)) fail(pos_, "expected '" + s + "'");
  }
  void finish() {
    if (!at_end()) fail(pos_, "unexpected '" + std::string(1, src_[pos_]) + "'");
  }

  // expr := term ('+' term)*
  Element expr() {
    Element acc = term();
    for (;;) {
      const size_t save = pos_;
      if (!accept("+") && !accept("-")) break;
      // A '+' followed by form syntax ends the element.
      if (starts_form()) {
        seek(save);
        break;
      }
      acc += term();
    }
    return acc;
  }

  // term := power (('*' | '/' | juxtaposition) power)*
  Element term() {
    Element acc = power();
    for (;;) {
      const size_t save = pos_;
      if (accept("*")) {
        if (starts_form()) {
          seek(save);
          break;
        }
        acc *= power();
      } else if (accept("/")) {
        const size_t at = pos_;
        const Element rhs = power();
        if (rhs.is_zero()) fail(at, "division by zero");
        acc /= rhs;
      } else if (starts_atom()) {
        acc *= power();
      } else {
        break;
      }
    }
    return acc;
  }

  // power := atom ('^' integer)?
  Element power() {
    Element base = atom();
    const size_t save = pos_;
    if (accept("^")) {
      skip();
      size_t p = pos_;
      if (p < src_.size() && src_[p] == '-') ++p;
      if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
        const size_t start = pos_;
        pos_ = p;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const int e = std::stoi(src_.substr(start, pos_ - start));
        if (base.is_zero() && e < 0) fail(start, "negative power of zero");
        return base.pow(e);
      }
      seek(save);  // a wedge '^', not a power
    }
    return base;
  }

  bool starts_form() {
    const char c = peek();
    return c == '[' || c == '<' || is_differential();
  }

  bool starts_atom() {
    const char c = peek();
    if (c == '(' || std::isdigit(static_cast<unsigned char>(c))) return true;
    if (!ident_start(c)) return false;
    return !is_differential();
  }

  bool is_differential() {
    skip();
    return src_.compare(pos_, 2, "d(") == 0;
  }

  Element atom() {
    skip();
    const size_t start = pos_;
    if (pos_ >= src_.size()) fail(pos_, "expected an element");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Element e = expr();
      expect(")");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      const char last = src_[pos_ - 1];
      return Element::base(k_, static_cast<uint32_t>((last - '0') & 1));
    }
    if (ident_start(c)) {
      if (is_differential()) fail(pos_, "expected an element");
      while (pos_ < src_.size() && ident_char(src_[pos_])) ++pos_;
      const std::string name = src_.substr(start, pos_ - start);
      if (name == "z") {
        if (k_ < 2) fail(start, "z is not defined over F2");
        return Element::base(k_, 2);
      }
      for (size_t i = 0; i < field_.variable_names.size(); ++i)
        if (field_.variable_names[i] == name) return Element::variable(k_, static_cast<int>(i) + 1);
      fail(start, "unknown variable '" + name + "'");
    }
    fail(pos_, "expected an element");
  }

  std::vector<Element> element_list(const std::string& close) {
    std::vector<Element> out;
    if (accept(close)) return out;
    for (;;) {
      out.push_back(expr());
      if (accept(",")) continue;
      expect(close);
      return out;
    }
  }

  // Form factors: a scalar, a bilinear Pfister factor, or a quadratic form.
  using Factor = std::variant<Element, BilinearPfister, QuadraticForm>;

  QuadraticForm form_expr() {
    QuadraticForm acc = form_term();
    while (accept("+")) acc = orth_sum(acc, form_term());
    return acc;
  }

  QuadraticForm form_term() {
    const size_t start = pos_;
    std::vector<Factor> factors{form_factor()};
    while (accept("*")) factors.push_back(form_factor());
    std::optional<QuadraticForm> f;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
      if (auto* q = std::get_if<QuadraticForm>(&*it)) {
        if (f) fail(start, "product of two quadratic forms");
        f = *q;
      } else if (!f) {
        if (it == factors.rbegin() && factors.size() == 1 && std::holds_alternative<Element>(*it) &&
            std::get<Element>(*it).is_zero())
          return QuadraticForm{k_, {}, {}};
        fail(start, "a product must end in a quadratic form");
      } else if (auto* e = std::get_if<Element>(&*it)) {
        if (e->is_zero()) fail(start, "scaling by zero");
        f = scale(*e, *f);
      } else {
        f = tensor(std::get<BilinearPfister>(*it), *f);
      }
    }
    return *f;
  }

  Factor form_factor() {
    skip();
    const size_t start = pos_;
    if (accept("<<")) {
      auto entries = element_list("]]");
      if (entries.empty()) fail(start, "empty Pfister form");
      QuadraticPfister p{{}, entries.back()};
      entries.pop_back();
      for (const auto& b : entries)
        if (b.is_zero()) fail(start, "zero Pfister slot");
      p.bilinear_slots = entries;
      return pfister_expand(p);
    }
    if (accept("<")) {
      auto entries = element_list(">");
      for (const auto& b : entries)
        if (b.is_zero()) fail(start, "zero entry");
      if (src_.compare(pos_, 1, "q") == 0 && (pos_ + 1 >= src_.size() || !ident_char(src_[pos_ + 1]))) {
        ++pos_;
        QuadraticForm f{k_, {}, entries};
        return f;
      }
      return BilinearPfister{entries};
    }
    if (accept("[")) {
      const Element b = expr();
      expect(",");
      const Element a = expr();
      expect("]");
      if (b.is_zero()) fail(start, "[0,a] is singular");
      return binary(b, a * b);  // [b, c] = b x^2 + xy + c y^2 = b [1, bc]
    }
    if (peek() == '(') {
      // An element in parentheses, else a parenthesized form.
      if (auto e = try_parse([&] { return term(); })) return *e;
      expect("(");
      QuadraticForm f = form_expr();
      expect(")");
      return f;
    }
    return term();
  }

  template <class F>
  auto try_parse(F&& fn) -> std::optional<decltype(fn())> {
    const size_t save = pos_;
    try {
      return fn();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ParseError) throw;
      seek(save);
      return std::nullopt;
    }
  }

  /// Raw text of a parenthesized group starting at '(' (returned without the parens).
  std::string group_text() {
    skip();
    if (pos_ >= src_.size() || src_[pos_] != '(') fail(pos_, "expected '('");
    int depth = 0;
    const size_t start = pos_;
    do {
      if (pos_ >= src_.size()) fail(start, "unbalanced parenthesis");
      if (src_[pos_] == '(') ++depth;
      if (src_[pos_] == ')') --depth;
      ++pos_;
    } while (depth > 0);
    return src_.substr(start + 1, pos_ - start - 2);
  }

  const std::string& src() const { return src_; }
  unsigned k() const { return k_; }

 private:
  const std::string& src_;
  const FieldTower& field_;
  unsigned k_;
  size_t pos_ = 0;
};

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

std::vector<std::pair<std::string, size_t>> split_top_level(const std::string& s, char sep) {
  std::vector<std::pair<std::string, size_t>> out;
  int depth = 0;
  size_t start = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == sep && depth == 0) {
      out.emplace_back(s.substr(start, i - start), start);
      start = i + 1;
    }
  }
  out.emplace_back(s.substr(start), start);
  return out;
}

Element element_at(const std::string& text, size_t offset, const FieldTower& field) {
  try {
    return element(text, field);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ParseError) throw;
    throw Error(ErrorKind::ParseError, std::string(e.what()).substr(12) + " (in text starting at column " +
                                           std::to_string(offset + 1) + ")");
  }
}

}  // namespace

FieldTower field(const std::string& text) {
  const std::string s = strip_spaces(text);
  size_t pos = 0;
  if (s.compare(0, 1, "F") != 0) fail(0, "field descriptor must start with F");
  pos = 1;
  auto number = [&]() {
    const size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail(start, "expected a number");
    return std::stoul(s.substr(start, pos - start));
  };
  const unsigned long q = number();
  unsigned k = 0;
  if (pos < s.size() && s[pos] == '^') {
    if (q != 2) fail(pos, "only F2^k is supported");
    ++pos;
    k = static_cast<unsigned>(number());
  } else {
    for (unsigned e = 1; e <= 8; ++e)
      if ((1ul << e) == q) k = e;
    if (k == 0) fail(0, "field size must be a power of 2 up to 256");
  }
  if (!gf2k::supported(k)) fail(0, "unsupported base exponent " + std::to_string(k));
  std::vector<std::string> names;
  while (pos < s.size()) {
    if (s.compare(pos, 2, "((") != 0) fail(pos, "expected '((name))'");
    pos += 2;
    const size_t start = pos;
    if (pos >= s.size() || !ident_start(s[pos])) fail(pos, "expected a variable name");
    while (pos < s.size() && ident_char(s[pos])) ++pos;
    const std::string name = s.substr(start, pos - start);
    if (name == "z" || name == "d" || name == "q") fail(start, "reserved variable name '" + name + "'");
    for (const auto& other : names)
      if (other == name) fail(start, "duplicate variable '" + name + "'");
    names.push_back(name);
    if (s.compare(pos, 2, "))") != 0) fail(pos, "expected '))'");
    pos += 2;
  }
  return FieldTower(k, names);
}

Element element(const std::string& text, const FieldTower& field) {
  Parser p(text, field);
  Element e = p.expr();
  p.finish();
  return e;
}

QuadraticForm form(const std::string& text, const FieldTower& field) {
  Parser p(text, field);
  QuadraticForm f = p.form_expr();
  p.finish();
  f.k = field.base_exponent;
  return f;
}

QuadraticPfister pfister(const std::string& text, const FieldTower& field) {
  Parser p(text, field);
  const size_t start = p.pos();
  p.expect("<<");
  auto entries = p.element_list("]]");
  p.finish();
  if (entries.empty()) fail(start, "empty Pfister form");
  QuadraticPfister out{{}, entries.back()};
  entries.pop_back();
  for (const auto& b : entries)
    if (b.is_zero()) fail(start, "zero Pfister slot");
  out.bilinear_slots = entries;
  return out;
}

SymbolSum symbol_sum(const std::string& text, const FieldTower& field, int zero_degree) {
  if (strip_spaces(text) == "0") return SymbolSum(zero_degree);
  if (text.find("d(") == std::string::npos) return SymbolSum(1, {Symbol{element(text, field), {}}});
  SymbolSum out;
  int degree = -1;
  for (const auto& [piece, offset] : split_top_level(text, '+')) {
    Parser p(piece, field);
    Symbol sym{Element::one(field.base_exponent), {}};
    if (!p.is_differential()) {
      sym.coefficient = p.term();
    }
    while (!p.at_end()) {
      if (!sym.slots.empty()) p.expect("^");
      p.expect("d");
      const size_t at = p.pos();
      const std::string inner = p.group_text();
      const Element b = element_at(inner, offset + at, field);
      if (b.is_zero()) fail(offset + at, "slot is zero");
      p.expect("/");
      // The denominator repeats the slot, bare or in parentheses.
      p.skip();
      const std::string want = strip_spaces(inner);
      const std::string rest = p.src().substr(p.pos());
      size_t used = 0, matched = 0;
      const std::string paren = "(" + want + ")";
      auto match = [&](const std::string& target) {
        used = 0;
        matched = 0;
        while (used < rest.size() && matched < target.size()) {
          if (std::isspace(static_cast<unsigned char>(rest[used]))) {
            ++used;
            continue;
          }
          if (rest[used] != target[matched]) return false;
          ++used;
          ++matched;
        }
        return matched == target.size();
      };
      if (!match(paren) && !match(want)) fail(offset + p.pos(), "denominator must repeat the slot " + inner);
      p.seek(p.pos() + used);
      sym.slots.push_back(b);
    }
    if (sym.slots.empty()) fail(offset, "expected d(b)/b");
    if (degree >= 0 && sym.degree() != degree) fail(offset, "symbols of different degrees");
    degree = sym.degree();
    out.symbols.push_back(sym);
  }
  out.degree = degree;
  return out;
}

}  // namespace qf2::parse
