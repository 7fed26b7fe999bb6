#include "qf2/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <functional>
#include <iomanip>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qf2/cohomology.hpp"
#include "qf2/errors.hpp"
#include "qf2/invariants.hpp"
#include "qf2/linkage.hpp"
#include "qf2/parse.hpp"
#include "qf2/suites.hpp"
#include "qf2/symlen.hpp"
#include "qf2/witt.hpp"

namespace qf2::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kVersion = "1.0.0";

struct Global {
  std::string field = "F2((t))";
  std::string format = "text";
  bool no_meta = false;
  uint64_t seed = 1;
  long samples = 100;
  long budget = kDefaultSearchBudget;
  int threads = 0;
  int precision = kDefaultPrecision;
};

enum class Status { Ok, Undecided, Refuted };

struct Outcome {
  json report;
  Status status = Status::Ok;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool undecided_kind(ErrorKind k) {
  return k == ErrorKind::SearchExhausted || k == ErrorKind::UndecidableInstance ||
         k == ErrorKind::UndecidableClass || k == ErrorKind::WildSymbol || k == ErrorKind::OracleFailure;
}

// Re-raises a parse error with the offending argument and a caret under the column.
template <class F>
auto parse_arg(const std::string& what, const std::string& text, F&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ParseError) throw;
    std::string msg = "cannot parse " + what + ": " + e.what();
    std::smatch m;
    const std::string w = e.what();
    if (std::regex_search(w, m, std::regex("column (\\d+)"))) {
      const size_t col = std::stoul(m[1]);
      msg += "\n  " + text + "\n  " + std::string(col > 0 ? col - 1 : 0, ' ') + "^";
    }
    throw UsageError(msg);
  }
}

struct Context {
  const Global& g;
  FieldTower field;

  const std::vector<std::string>& names() const { return field.variable_names; }
  int height() const { return field.height(); }
  unsigned k() const { return field.base_exponent; }

  std::string el(const Element& x) const { return format_element(x, names()); }
  json els(const std::vector<Element>& xs) const {
    json a = json::array();
    for (const auto& x : xs) a.push_back(el(x));
    return a;
  }
  std::string form(const QuadraticForm& f) const { return format_form(f, names()); }
  std::string pf(const QuadraticPfister& p) const { return format_pfister(p, names()); }
  std::string sum(const SymbolSum& s) const { return format_sum(s, names()); }

  QuadraticForm parse_form(const std::string& text, const std::string& what = "form") const {
    return parse_arg(what, text, [&] { return parse::form(text, field); });
  }
  QuadraticPfister parse_pfister(const std::string& text, const std::string& what = "Pfister form") const {
    return parse_arg(what, text, [&] { return parse::pfister(text, field); });
  }
  SymbolSum parse_sum(const std::string& text, int zero_degree) const {
    return parse_arg("symbol sum", text, [&] { return parse::symbol_sum(text, field, zero_degree); });
  }

  json certificate(const Certificate& c) const {
    json j;
    j["rule"] = c.rule;
    j["level"] = c.level;
    j["data"] = els(c.data);
    json kids = json::array();
    for (const auto& child : c.children) kids.push_back(certificate(child));
    j["children"] = kids;
    return j;
  }

  json proof(const symlen::DecompositionProof& p) const {
    json chain = json::array();
    for (const auto& s : p.witt_chain)
      chain.push_back({{"lhs", form(s.lhs)},
                       {"rhs", form(s.rhs)},
                       {"relation", s.relation},
                       {"justification", s.justification},
                       {"verified", s.verified}});
    return {{"witt_chain", chain},
            {"hauptsatz_step",
             {{"form", form(p.hauptsatz_step.form)}, {"n", p.hauptsatz_step.n}, {"dim", p.hauptsatz_step.dim}}}};
  }

  json linkage_witness(const linkage::LinkageWitness& w, const QuadraticPfister& p, const QuadraticPfister& q) const {
    json j;
    j["kind"] = linkage::to_string(w.kind);
    j["order"] = w.order();
    if (w.kind == linkage::LinkKind::Separable) {
      j["common"] = pf(w.common_quadratic);
      j["complement_p"] = els(w.complement_p);
      j["complement_q"] = els(w.complement_q);
    } else {
      j["common"] = els(w.common_bilinear.slots);
      j["quadratic_p"] = pf(w.quadratic_p);
      j["quadratic_q"] = pf(w.quadratic_q);
    }
    j["reassembled_p"] = pf(w.reassemble_p());
    j["reassembled_q"] = pf(w.reassemble_q());
    j["route"] = w.route;
    j["verified"] = linkage::verify_witness(w, p, q, g.budget);
    return j;
  }
};

json skeleton(const std::string& command, const Context& c) {
  json r;
  r["schema"] = 1;
  r["command"] = command;
  r["field"] = c.field.descriptor();
  r["input"] = json::object();
  r["verdict"] = nullptr;
  r["witness"] = nullptr;
  r["certificate"] = nullptr;
  r["evidence"] = json::object();
  return r;
}

json opt_bool(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

// ---------------------------------------------------------------------------
// verbs

Outcome isotropy_verb(const Context& c, const std::string& command, const std::string& text) {
  const auto f = c.parse_form(text);
  Outcome o{skeleton(command, c)};
  o.report["input"] = {{"form", c.form(f)}};
  const auto v = isotropy(f, c.g.budget);
  o.report["verdict"] = to_string(v.kind);
  if (v.kind == IsoKind::Isotropic) {
    json w{{"vector", c.els(v.witness)}};
    if (!v.lift_direction.empty()) w["lift_direction"] = c.els(v.lift_direction);
    w["verified"] = verify_verdict(f, v);
    o.report["witness"] = w;
  } else if (v.kind == IsoKind::Anisotropic) {
    o.report["certificate"] = c.certificate(v.certificate);
    o.report["evidence"]["certificate_verified"] = verify_verdict(f, v);
  } else {
    o.status = Status::Undecided;
  }
  o.report["evidence"]["search"] = {{"budget", v.report.budget},
                                    {"candidates", v.report.candidates},
                                    {"pool_size", v.report.pool_size},
                                    {"note", v.report.note}};
  return o;
}

Outcome invariants_verb(const Context& c, const std::string& text, int max_n) {
  const auto f = c.parse_form(text);
  Outcome o{skeleton("invariants", c)};
  o.report["input"] = {{"form", c.form(f)}};
  const auto a = arf(f, c.g.precision);
  const auto cl = clifford(f);
  const auto simplified = simplify(cl);
  const auto trivial = clifford_trivial(cl);
  o.report["verdict"] = {{"arf", c.el(a.reduced)}, {"arf_trivial", a.is_in_wp}, {"clifford_trivial", opt_bool(trivial)}};
  auto quaternions = [&](const CliffordSum& s) {
    json arr = json::array();
    for (const auto& [x, y] : s.symbols) arr.push_back("[" + c.el(x) + ", " + c.el(y) + ")");
    return arr;
  };
  json membership = json::object();
  const int top = max_n > 0 ? max_n : c.height() + 2;
  for (int n = 1; n <= top; ++n) membership["I_q^" + std::to_string(n)] = opt_bool(in_Iqn(f, n, c.height()));
  o.report["evidence"] = {{"arf_exact", a.exact},
                          {"arf_correction", c.el(a.correction)},
                          {"clifford", quaternions(cl)},
                          {"clifford_simplified", quaternions(simplified)},
                          {"membership", membership}};
  if (!trivial) o.status = Status::Undecided;
  return o;
}

Outcome witt_decompose_verb(const Context& c, const std::string& text) {
  const auto f = c.parse_form(text);
  Outcome o{skeleton("witt decompose", c)};
  o.report["input"] = {{"form", c.form(f)}};
  const auto d = witt_decompose(f, c.g.budget);
  o.report["verdict"] = {{"index", d.index}, {"kernel", c.form(d.kernel)}};
  o.report["evidence"] = {{"kernel_dim", d.kernel.dim()}, {"proof", d.proof}};
  return o;
}

Outcome witt_index_verb(const Context& c, const std::string& text) {
  const auto f = c.parse_form(text);
  Outcome o{skeleton("witt index", c)};
  o.report["input"] = {{"form", c.form(f)}};
  o.report["verdict"] = witt_index(f, c.g.budget);
  return o;
}

Outcome witt_hyperbolic_verb(const Context& c, const std::string& text) {
  const auto f = c.parse_form(text);
  Outcome o{skeleton("witt hyperbolic", c)};
  o.report["input"] = {{"form", c.form(f)}};
  o.report["verdict"] = is_hyperbolic(f, c.g.budget);
  return o;
}

Outcome witt_equivalent_verb(const Context& c, const std::string& a, const std::string& b) {
  const auto f = c.parse_form(a, "first form"), g = c.parse_form(b, "second form");
  Outcome o{skeleton("witt equivalent", c)};
  o.report["input"] = {{"f", c.form(f)}, {"g", c.form(g)}};
  o.report["verdict"] = witt_equivalent(f, g, c.g.budget);
  o.report["evidence"] = {{"kernel_of_sum", c.form(witt_decompose(orth_sum(f, g), c.g.budget).kernel)}};
  return o;
}

Outcome pfister_verb(const Context& c, const std::string& text) {
  const auto p = c.parse_pfister(text);
  Outcome o{skeleton("pfister", c)};
  o.report["input"] = {{"pfister", c.pf(p)}};
  const auto f = pfister_expand(p);
  const auto v = isotropy(f, c.g.budget);
  o.report["verdict"] = to_string(v.kind);
  if (v.kind == IsoKind::Isotropic) o.report["witness"] = {{"vector", c.els(v.witness)}};
  if (!v.lift_direction.empty()) o.report["witness"]["lift_direction"] = c.els(v.lift_direction);
  if (v.kind == IsoKind::Anisotropic) o.report["certificate"] = c.certificate(v.certificate);
  if (v.kind == IsoKind::Undecided) o.status = Status::Undecided;
  o.report["evidence"] = {{"fold", p.fold()},
                          {"dim", f.dim()},
                          {"expansion", c.form(f)},
                          {"symbol", format_symbol(e_map(p), c.names())},
                          {"hyperbolic", is_hyperbolic(f, c.g.budget)}};
  return o;
}

Outcome symbol_verb(const Context& c, const std::string& text, int degree) {
  const auto s = c.parse_sum(text, degree > 0 ? degree : 2);
  if (degree > 0 && s.degree != degree)
    throw UsageError("symbol sum has degree " + std::to_string(s.degree) + ", expected " + std::to_string(degree));
  Outcome o{skeleton("symbol", c)};
  o.report["input"] = {{"sum", c.sum(s)}, {"degree", s.degree}};
  const auto t = class_trivial(s);
  o.report["verdict"] = t ? json(*t ? "trivial" : "nontrivial") : json("Undecided");
  if (!t) o.status = Status::Undecided;
  json ev{{"simplified", c.sum(simplify(s))}};
  if (s.degree >= 2) ev["basis_rewrite"] = c.sum(basis_rewrite(to_differential(s, c.height()), c.k()));
  try {
    const auto l = symbol_length_exact(s, c.g.budget);
    ev["length"] = {{"value", l.value}, {"exact", l.exact}, {"expression", c.sum(l.expression)}};
  } catch (const Error& e) {
    ev["length"] = {{"value", nullptr}, {"reason", e.what()}};
  }
  o.report["evidence"] = ev;
  return o;
}

Outcome symlen_bound_verb(const Context& c, const std::vector<long>& us, int n) {
  Outcome o{skeleton("symlen bound", c)};
  o.report["input"] = {{"u", us}, {"n", n}};
  o.report["verdict"] = symlen::goodbound_value(us, n);
  json factors = json::array();
  for (int i = 2; i <= n; ++i) factors.push_back(us[static_cast<size_t>(i - 2)] / 2 + 1 - (1L << (i - 1)));
  o.report["evidence"] = {{"factors", factors}};
  return o;
}

Outcome symlen_prank_verb(const Context& c, int m, int d) {
  Outcome o{skeleton("symlen prank", c)};
  o.report["input"] = {{"m", m}, {"d", d}};
  o.report["verdict"] = symlen::prank_bound(m, d);
  return o;
}

Outcome symlen_split_verb(const Context& c, const std::string& text, int n) {
  const auto f = c.parse_form(text);
  Outcome o{skeleton("symlen split", c)};
  o.report["input"] = {{"form", c.form(f)}, {"n", n}};
  const auto s = symlen::split_field_slots(f, n, c.g.budget);
  o.report["verdict"] = c.els(s.slots);
  o.report["certificate"] = c.proof(s.proof);
  const bool ok = symlen::verify_proof(s.proof, c.g.budget);
  o.report["evidence"] = {{"l", s.slots.size()}, {"proof_verified", ok}};
  if (!ok) o.status = Status::Refuted;
  return o;
}

Outcome symlen_decompose_verb(const Context& c, const std::string& text, int n) {
  const auto f = c.parse_form(text);
  Outcome o{skeleton("symlen decompose", c)};
  o.report["input"] = {{"form", c.form(f)}, {"n", n}};
  const auto g = symlen::goodbound_decompose(f, n, c.height(), c.g.budget);
  o.report["verdict"] = c.sum(g.output);
  json symbols = json::array();
  for (const auto& s : g.output.symbols) symbols.push_back(format_symbol(s, c.names()));
  o.report["witness"] = {{"symbols", symbols}, {"slots", c.els(g.slots)}};
  o.report["certificate"] = c.proof(g.proof);
  const auto t = class_trivial(g.output + g.target);
  o.report["evidence"] = {{"target", c.sum(g.target)},
                          {"length", g.output.size()},
                          {"length_bound", g.length_bound},
                          {"candidates", g.candidates},
                          {"class_verified", opt_bool(t)},
                          {"proof_verified", symlen::verify_proof(g.proof, c.g.budget)}};
  if (!t) o.status = Status::Undecided;
  else if (!*t || static_cast<int>(g.output.size()) > g.length_bound) o.status = Status::Refuted;
  return o;
}

Outcome linkage_check_verb(const Context& c, const std::string& a, const std::string& b, int k, bool insep) {
  const auto p = c.parse_pfister(a, "first Pfister form"), q = c.parse_pfister(b, "second Pfister form");
  Outcome o{skeleton("linkage check", c)};
  o.report["input"] = {{"p", c.pf(p)}, {"q", c.pf(q)}, {"k", k}, {"kind", insep ? "inseparable" : "separable"}};
  if (insep) {
    const auto r = linkage::insep_k_linked(p, q, k, c.height(), c.g.budget);
    o.report["evidence"] = {{"route", r.route}};
    if (!r.linked) {
      o.report["verdict"] = "Undecided";
      o.status = Status::Undecided;
      return o;
    }
    o.report["verdict"] = *r.linked ? "linked" : "not linked";
    if (r.witness) o.report["witness"] = c.linkage_witness(*r.witness, p, q);
    return o;
  }
  const auto m = linkage::max_sep_linkage(p, q, c.g.budget);
  const bool linked = m.r >= k;
  o.report["verdict"] = linked ? "linked" : "not linked";
  o.report["evidence"] = {{"witt_index", m.witt_index}, {"max_r", m.r}, {"power_of_two", m.power_of_two}};
  if (linked) {
    long cand = 0;
    const auto w = linkage::separable_witness(p, q, k, c.g.budget, &cand);
    o.report["evidence"]["witness_candidates"] = cand;
    if (w) o.report["witness"] = c.linkage_witness(*w, p, q);
  }
  if (!m.power_of_two) o.status = Status::Refuted;
  return o;
}

Outcome linkage_max_verb(const Context& c, const std::string& a, const std::string& b) {
  const auto p = c.parse_pfister(a, "first Pfister form"), q = c.parse_pfister(b, "second Pfister form");
  Outcome o{skeleton("linkage max", c)};
  o.report["input"] = {{"p", c.pf(p)}, {"q", c.pf(q)}};
  const auto m = linkage::max_sep_linkage(p, q, c.g.budget, true);
  o.report["verdict"] = m.r;
  if (m.witness) o.report["witness"] = c.linkage_witness(*m.witness, p, q);
  o.report["evidence"] = {{"witt_index", m.witt_index}, {"power_of_two", m.power_of_two}, {"candidates", m.candidates}};
  if (!m.power_of_two) o.status = Status::Refuted;
  return o;
}

Outcome linkage_lift_verb(const Context& c, const std::string& a, const std::string& b) {
  const auto p = c.parse_pfister(a, "first Pfister form"), q = c.parse_pfister(b, "second Pfister form");
  Outcome o{skeleton("linkage lift", c)};
  o.report["input"] = {{"p", c.pf(p)}, {"q", c.pf(q)}};
  const auto r = linkage::lift_linkage(p, q, c.height(), linkage::search_oracle(c.g.budget), c.g.budget);
  json w = json::object();
  if (r.separable) w["separable"] = c.linkage_witness(*r.separable, p, q);
  if (r.inseparable) w["inseparable"] = c.linkage_witness(*r.inseparable, p, q);
  o.report["verdict"] = r.inseparable ? "inseparably linked" : "Undecided";
  o.report["witness"] = w;
  o.report["evidence"] = {{"chain", r.chain}};
  if (!r.inseparable) o.status = Status::Undecided;
  else if (!o.report["witness"]["inseparable"]["verified"].get<bool>()) o.status = Status::Refuted;
  return o;
}

Outcome u_invariant_verb(const Context& c, int n) {
  Outcome o{skeleton("u-invariant", c)};
  o.report["input"] = {{"n", n}};
  const auto u = linkage::u_n_estimate(c.field, n, c.g.samples, c.g.seed, c.g.budget);
  o.report["verdict"] = u.claimed;
  if (u.witness) o.report["witness"] = {{"pfister", c.pf(*u.witness)}, {"anisotropic", u.witness_anisotropic}};
  const long anisotropic = u.samples - u.isotropic - u.undecided;
  o.report["evidence"] = {{"lower", u.lower},     {"provenance", u.provenance}, {"samples", u.samples},
                          {"isotropic", u.isotropic}, {"undecided", u.undecided},   {"anisotropic", anisotropic}};
  if (anisotropic > 0 || (u.witness && !u.witness_anisotropic)) o.status = Status::Refuted;
  return o;
}

Outcome suite_outcome(const Context& c, const std::string& command, const suites::Report& r, const json& input) {
  Outcome o{skeleton(command, c)};
  o.report["input"] = input;
  json tally = json::object();
  for (const auto& [k, v] : r.tally) tally[k] = v;
  json values = json::object();
  for (const auto& [k, v] : r.values) values[k] = v;
  auto findings = [](const std::vector<suites::Finding>& fs) {
    json a = json::array();
    for (const auto& f : fs) a.push_back({{"instance", f.instance}, {"detail", f.detail}});
    return a;
  };
  o.report["evidence"] = {{"suite", r.name},
                          {"tested", r.tested},
                          {"passed", r.passed},
                          {"undecided", r.undecided},
                          {"exceptions", r.exceptions},
                          {"tally", tally},
                          {"values", values},
                          {"counterexamples", findings(r.counterexamples)},
                          {"errors", findings(r.errors)}};
  if (!r.counterexamples.empty()) {
    o.report["verdict"] = "refuted";
    o.status = Status::Refuted;
  } else if (r.exceptions > 0 || r.tested == 0) {
    o.report["verdict"] = "inconclusive";
    o.status = Status::Undecided;
  } else {
    o.report["verdict"] = "verified";
  }
  return o;
}

suites::Options suite_options(const Context& c) {
  suites::Options s;
  s.field = c.field;
  s.samples = c.g.samples;
  s.seed = c.g.seed;
  s.budget = c.g.budget;
  s.threads = c.g.threads;
  return s;
}

Outcome verify_verb(const Context& c, const std::string& suite, int n) {
  const auto o = suite_options(c);
  const json input{{"suite", suite}, {"n", n}, {"samples", c.g.samples}, {"seed", c.g.seed}};
  static const std::map<std::string, std::function<suites::Report(const suites::Options&, int)>> table{
      {"theoremu", [](const suites::Options& o, int n) { return suites::theoremu(o, n); }},
      {"coru", [](const suites::Options& o, int n) { return suites::coru(o, n); }},
      {"wittlemma", [](const suites::Options& o, int) { return suites::wittlemma(o); }},
      {"theoremd", [](const suites::Options& o, int n) { return suites::theoremd(o, n); }},
      {"lift", [](const suites::Options& o, int) { return suites::lift(o); }},
      {"pfister-dichotomy", [](const suites::Options& o, int) { return suites::pfister_dichotomy(o); }},
      {"rechain", [](const suites::Options& o, int) { return suites::invariant_rechain(o); }},
      {"hauptsatz", [](const suites::Options& o, int n) { return suites::hauptsatz(o, n); }},
      {"wittindex", [](const suites::Options& o, int) { return suites::wittindex_criterion(o); }},
      {"u-witnesses", [](const suites::Options& o, int) { return suites::u_witnesses(o); }},
      {"basis-bound", [](const suites::Options& o, int n) { return suites::basis_bound(o, n); }},
      {"goodbound", [](const suites::Options& o, int n) { return suites::goodbound(o, n); }},
  };
  return suite_outcome(c, "verify " + suite, table.at(suite)(o, n), input);
}

// ---------------------------------------------------------------------------
// rendering

void render_value(std::ostream& out, const std::string& key, const json& v, int indent) {
  const std::string pad(static_cast<size_t>(indent), ' ');
  auto scalar = [](const json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
  if (v.is_object()) {
    if (v.empty()) return;
    out << pad << key << ":\n";
    for (const auto& [k, x] : v.items()) render_value(out, k, x, indent + 2);
  } else if (v.is_array()) {
    if (v.empty()) {
      out << pad << key << ": (none)\n";
      return;
    }
    const bool flat = std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_primitive(); });
    if (flat) {
      std::string line;
      for (const auto& x : v) line += (line.empty() ? "" : ", ") + scalar(x);
      out << pad << key << ": " << line << "\n";
    } else {
      out << pad << key << ":\n";
      for (size_t i = 0; i < v.size(); ++i) render_value(out, "[" + std::to_string(i) + "]", v[i], indent + 2);
    }
  } else if (!v.is_null() && !(v.is_string() && v.get<std::string>().empty())) {
    out << pad << key << ": " << scalar(v) << "\n";
  }
}

void render_text(std::ostream& out, const json& r) {
  const auto& v = r["verdict"];
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) render_value(out, k, x, 0);
  } else {
    out << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
  for (const char* key : {"witness", "certificate", "evidence"}) render_value(out, key, r[key], 0);
}

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

long env_budget() {
  const char* v = std::getenv("QF2_BUDGET");
  if (!v || !*v) return kDefaultSearchBudget;
  try {
    size_t used = 0;
    const long b = std::stol(v, &used);
    if (used != std::string(v).size() || b <= 0) throw std::invalid_argument(v);
    return b;
  } catch (const std::exception&) {
    throw UsageError(std::string("QF2_BUDGET must be a positive integer, got '") + v + "'");
  }
}

std::vector<long> parse_list(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--u expects a comma-separated list of integers, got '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError("--u expects at least one value");
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Global g;
  try {
    g.budget = env_budget();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  CLI::App app{"Quadratic forms and Kato-Milne cohomology in characteristic 2", "qf2"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--field", g.field, "field descriptor, e.g. F2((t1))((t2))")->capture_default_str();
  app.add_option("--format", g.format, "report format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_flag("--no-meta", g.no_meta, "omit timestamps and timings from reports");
  app.add_option("--seed", g.seed, "sampling seed (mt19937_64)")->capture_default_str();
  app.add_option("--samples", g.samples, "number of sampled instances")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--budget", g.budget, "search budget (default from QF2_BUDGET)")->check(CLI::PositiveNumber);
  app.add_option("--threads", g.threads, "worker threads for suites (0: all cores)")->check(CLI::NonNegativeNumber);
  app.add_option("--precision", g.precision, "t-adic precision of Artin-Schreier corrections")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.set_version_flag("--version", kVersion);

  std::string expr, expr2, suite, u_list;
  int n = 2, k = 1, m = -1, d = 2, degree = 0, max_n = 0;
  bool insep = false;
  std::function<Outcome(const Context&)> action;
  std::string command;

  auto* inv = app.add_subcommand("invariants", "Arf and Clifford invariants and I_q^n membership");
  inv->add_option("form", expr, "quadratic form")->required();
  inv->add_option("--max-n", max_n, "largest n for the membership table");
  inv->callback([&] { action = [&](const Context& c) { return invariants_verb(c, expr, max_n); }; });

  auto* iso = app.add_subcommand("isotropy", "isotropy verdict with witness or certificate");
  iso->add_option("form", expr, "quadratic form")->required();
  iso->callback([&] { action = [&](const Context& c) { return isotropy_verb(c, "isotropy", expr); }; });

  auto* witt = app.add_subcommand("witt", "Witt decomposition and equivalence");
  witt->require_subcommand(1);
  auto* wiso = witt->add_subcommand("isotropy", "isotropy verdict");
  wiso->add_option("form", expr)->required();
  wiso->callback([&] { action = [&](const Context& c) { return isotropy_verb(c, "witt isotropy", expr); }; });
  auto* wdec = witt->add_subcommand("decompose", "Witt index and anisotropic kernel");
  wdec->add_option("form", expr)->required();
  wdec->callback([&] { action = [&](const Context& c) { return witt_decompose_verb(c, expr); }; });
  auto* widx = witt->add_subcommand("index", "Witt index");
  widx->add_option("form", expr)->required();
  widx->callback([&] { action = [&](const Context& c) { return witt_index_verb(c, expr); }; });
  auto* whyp = witt->add_subcommand("hyperbolic", "hyperbolicity");
  whyp->add_option("form", expr)->required();
  whyp->callback([&] { action = [&](const Context& c) { return witt_hyperbolic_verb(c, expr); }; });
  auto* weq = witt->add_subcommand("equivalent", "Witt equivalence of two nonsingular forms");
  weq->add_option("f", expr)->required();
  weq->add_option("g", expr2)->required();
  weq->callback([&] { action = [&](const Context& c) { return witt_equivalent_verb(c, expr, expr2); }; });

  auto* pf = app.add_subcommand("pfister", "expand and classify a quadratic Pfister form");
  pf->add_option("pfister", expr, "<<b1,...,a]]")->required();
  pf->callback([&] { action = [&](const Context& c) { return pfister_verb(c, expr); }; });

  auto* sym = app.add_subcommand("symbol", "triviality, basis rewrite and length of a symbol sum");
  sym->add_option("sum", expr, "a d(b1)/b1 ^ ... + ...")->required();
  sym->add_option("--degree", degree, "degree (needed for the sum 0)");
  sym->callback([&] { action = [&](const Context& c) { return symbol_verb(c, expr, degree); }; });

  auto* sl = app.add_subcommand("symlen", "symbol length bounds and decompositions");
  sl->require_subcommand(1);
  auto* slb = sl->add_subcommand("bound", "product bound from u^2, ..., u^n");
  slb->add_option("--u", u_list, "u^2,...,u^n")->required();
  slb->add_option("--n", n)->required();
  slb->callback([&] { action = [&](const Context& c) { return symlen_bound_verb(c, parse_list(u_list), n); }; });
  auto* slp = sl->add_subcommand("prank", "binom(m, d-1) bound from a 2-basis of size m");
  slp->add_option("--m", m, "2-rank (default: the tower height)");
  slp->add_option("--d", d)->required();
  slp->callback([&] {
    action = [&](const Context& c) { return symlen_prank_verb(c, m >= 0 ? m : c.height(), d); };
  });
  auto* sls = sl->add_subcommand("split", "slots whose square roots split a normalized form");
  sls->add_option("form", expr)->required();
  sls->add_option("--n", n)->required();
  sls->callback([&] { action = [&](const Context& c) { return symlen_split_verb(c, expr, n); }; });
  auto* sld = sl->add_subcommand("decompose", "decompose the e^n class into symbols");
  sld->add_option("form", expr)->required();
  sld->add_option("--n", n)->required();
  sld->callback([&] { action = [&](const Context& c) { return symlen_decompose_verb(c, expr, n); }; });

  auto* lk = app.add_subcommand("linkage", "linkage of quadratic Pfister forms");
  lk->require_subcommand(1);
  auto* lkc = lk->add_subcommand("check", "is the pair k-linked");
  lkc->add_option("p", expr)->required();
  lkc->add_option("q", expr2)->required();
  lkc->add_option("--k", k)->required();
  lkc->add_flag("--inseparable", insep, "inseparable instead of separable linkage");
  lkc->callback([&] { action = [&](const Context& c) { return linkage_check_verb(c, expr, expr2, k, insep); }; });
  auto* lkm = lk->add_subcommand("max", "maximal separable linkage");
  lkm->add_option("p", expr)->required();
  lkm->add_option("q", expr2)->required();
  lkm->callback([&] { action = [&](const Context& c) { return linkage_max_verb(c, expr, expr2); }; });
  auto* lkl = lk->add_subcommand("lift", "inseparable linkage by the lifting argument");
  lkl->add_option("p", expr)->required();
  lkl->add_option("q", expr2)->required();
  lkl->callback([&] { action = [&](const Context& c) { return linkage_lift_verb(c, expr, expr2); }; });

  auto* uinv = app.add_subcommand("u-invariant", "u^n of the field with witness and sampled evidence");
  uinv->add_option("--n", n)->capture_default_str();
  uinv->callback([&] { action = [&](const Context& c) { return u_invariant_verb(c, n); }; });

  auto* ver = app.add_subcommand("verify", "run a seeded verification suite");
  ver->add_option("suite", suite, "suite name")
      ->required()
      ->check(CLI::IsMember({"theoremu", "coru", "wittlemma", "theoremd", "lift", "pfister-dichotomy", "rechain",
                             "hauptsatz", "wittindex", "u-witnesses", "basis-bound", "goodbound"}));
  ver->add_option("--n", n, "degree")->capture_default_str();
  ver->callback([&] { action = [&](const Context& c) { return verify_verb(c, suite, n); }; });

  auto* oc = app.add_subcommand("oracle-check", "residue decider against brute search");
  oc->callback([&] {
    action = [&](const Context& c) {
      return suite_outcome(c, "oracle-check", suites::oracle_consistency(suite_options(c)),
                           {{"samples", c.g.samples}, {"seed", c.g.seed}, {"brute_budget", c.g.budget}});
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const auto extra = app.remaining();
    if (app.get_subcommands().empty() && !extra.empty()) {
      err << "error: unknown verb '" << extra.front() << "'\nRun with --help for more information.\n";
      return kUsage;
    }
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    Context c{g, parse_arg("field descriptor", g.field, [&] { return parse::field(g.field); })};
    try {
      outcome = action(c);
    } catch (const Error& e) {
      if (!undecided_kind(e.kind())) throw;
      outcome.report = skeleton(command, c);
      outcome.report["verdict"] = "Undecided";
      outcome.report["evidence"] = {{"reason", e.what()}};
      outcome.status = Status::Undecided;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  auto& r = outcome.report;
  if (r["command"].is_null() || r["command"] == "") {
    std::string name;
    for (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front(); sub;
         sub = sub->get_subcommands().empty() ? nullptr : sub->get_subcommands().front())
      name += (name.empty() ? "" : " ") + sub->get_name();
    r["command"] = name;
  }
  json prov{{"tool", "qf2"},
            {"version", kVersion},
            {"generator", "mt19937_64"},
            {"seed", g.seed},
            {"samples", g.samples},
            {"budget", g.budget},
            {"precision", g.precision}};
  if (!g.no_meta) {
    prov["timestamp"] = utc_now();
    prov["elapsed_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  }
  r["provenance"] = prov;

  if (g.format == "json") {
    out << r.dump(2) << "\n";
  } else {
    render_text(out, r);
  }
  switch (outcome.status) {
    case Status::Ok: return kOk;
    case Status::Undecided: return kUndecided;
    case Status::Refuted: return kRefuted;
  }
  return kOk;
}

}  // namespace qf2::cli
