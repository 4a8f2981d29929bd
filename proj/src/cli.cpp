#include "hdual/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "hdual/forms.hpp"
#include "hdual/hasse.hpp"
#include "hdual/poly_io.hpp"

namespace hdual::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string field = "3";
  std::string modulus;
  std::string vars;
  std::string gens;
  std::string format = "text";
  std::uint64_t budget = 0;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  bool timings = false;
  std::string partial = "hdual-partial.json";

  // verb parameters
  unsigned h = 0;
  unsigned h2 = 0;
  std::string levels;
  std::string keep;
  std::string var;
  std::uint64_t order_n = 0;
  bool order_set = false;
  bool level_set = false;
  std::string ordering = "grevlex";
  std::string poly;
  std::string gens2;
  std::string lambda = "auto";
  bool symmetric = false;
  unsigned hmax = 6;
  long corrupt = -1;
  std::string v, w;
  std::vector<std::string> presets;
};

// ---------------------------------------------------------------- helpers

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

std::vector<unsigned> parse_levels(const std::string& s, unsigned fallback) {
  if (s.empty()) return {fallback};
  std::vector<unsigned> out;
  for (const auto& part : split(s, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      out.push_back(static_cast<unsigned>(v));
    } catch (const std::exception&) {
      throw UsageError("bad level list '" + s + "'");
    }
  }
  return out;
}

std::string read_text(const std::string& arg) {
  std::error_code ec;
  if (!arg.empty() && arg.find('\n') == std::string::npos && std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return arg;
}

RingPtr make_ring(const FieldPtr& k, const std::string& vars) {
  if (vars.empty()) throw UsageError("--vars is required (a count or a comma separated name list)");
  if (std::all_of(vars.begin(), vars.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return Ring::make(k, Ring::indexed_names("x", std::stoul(vars)));
  }
  return Ring::make(k, split(vars, ','));
}

std::size_t var_index(const Ring& r, const std::string& v) {
  if (auto i = r.index_of(v)) return *i;
  if (!v.empty() && std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    const std::size_t i = std::stoul(v);
    if (i < r.nvars()) return i;
  }
  throw UsageError("unknown variable '" + v + "'");
}

Json strings(const std::vector<Polynomial>& gens) {
  Json a = Json::array();
  for (const auto& g : gens) a.push_back(g.to_string());
  return a;
}

Json names(const RingPtr& r) { return Json(r->names()); }

Json level_list(const std::vector<unsigned>& levels) { return Json(levels); }

std::vector<Elem> parse_vector(const FieldPtr& k, const std::string& s) {
  auto r = Ring::make(k, {});
  std::vector<Elem> out;
  for (const auto& part : split(s, ',')) {
    auto c = parse_polynomial(r, part);
    out.push_back(c.is_zero() ? 0 : c.coeff_at(0));
  }
  return out;
}

struct Env {
  FieldPtr k;
  RingPtr ring;
  std::vector<Polynomial> gens;
  GroebnerOptions gopts;
};

Env load(const Options& o) {
  Env e;
  e.k = Field::parse(o.field, o.modulus);
  e.ring = make_ring(e.k, o.vars);
  if (o.gens.empty()) throw UsageError("--gens is required");
  e.gens = parse_polynomial_list(e.ring, read_text(o.gens));
  if (e.gens.empty()) throw UsageError("no generators given");
  if (o.budget) e.gopts.pair_budget = o.budget;
  return e;
}

Json header(const std::string& command, const Env& e) {
  Json j;
  j["command"] = command;
  j["field"] = e.k->spec_string();
  j["variables"] = names(e.ring);
  j["generators"] = strings(e.gens);
  return j;
}

double ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

struct Result {
  Json report;
  int code = 0;
};

// ---------------------------------------------------------------- verbs

Result derive(const Options& o) {
  Env e = load(o);
  if (o.order_set == o.level_set) throw UsageError("derive needs exactly one of --order and --level");
  Json j = header("derive", e);
  std::vector<std::size_t> vars;
  if (o.var.empty()) {
    for (std::size_t i = 0; i < e.ring->nvars(); ++i) vars.push_back(i);
  } else {
    vars.push_back(var_index(*e.ring, o.var));
  }
  if (o.order_set) {
    j["order"] = o.order_n;
  } else {
    j["level"] = o.h;
  }
  Json out = Json::array();
  for (const auto& g : e.gens) {
    Json row = Json::array();
    for (auto v : vars) {
      row.push_back((o.order_set ? hasse_derive(g, v, o.order_n) : hasse_h(g, v, o.h)).to_string());
    }
    out.push_back(std::move(row));
  }
  j["with_respect_to"] = Json::array();
  for (auto v : vars) j["with_respect_to"].push_back(e.ring->name(v));
  j["derivatives"] = std::move(out);
  return {std::move(j)};
}

Result gb(const Options& o) {
  Env e = load(o);
  MonomialOrder ord = MonomialOrder::grevlex(e.ring->nvars());
  if (o.ordering == "lex") {
    ord = MonomialOrder::lex(e.ring->nvars());
  } else if (o.ordering != "grevlex") {
    throw UsageError("--order must be lex or grevlex");
  }
  Json j = header("gb", e);
  j["order"] = o.ordering;
  j["basis"] = strings(basis_in_order(e.gens, ord, e.gopts));
  return {std::move(j)};
}

Result eliminate(const Options& o) {
  Env e = load(o);
  if (o.keep.empty()) throw UsageError("--keep is required");
  std::vector<std::size_t> keep;
  for (const auto& v : split(o.keep, ',')) keep.push_back(var_index(*e.ring, v));
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  Json j = header("eliminate", e);
  auto E = elimination_ideal(Ideal(e.ring, e.gens), keep, e.gopts);
  j["kept"] = names(E.ring());
  j["basis"] = strings(E.generators());
  return {std::move(j)};
}

Result member(const Options& o) {
  Env e = load(o);
  if (o.poly.empty()) throw UsageError("--poly is required");
  auto f = parse_polynomial(e.ring, o.poly);
  Json j = header("member", e);
  j["polynomial"] = f.to_string();
  Ideal I(e.ring, e.gens);
  const auto& G = I.groebner_basis(e.gopts);
  j["member"] = I.contains(f);
  j["remainder"] = normal_form(f, G).to_string();
  return {std::move(j)};
}

Result equal(const Options& o) {
  Env e = load(o);
  if (o.gens2.empty()) throw UsageError("--gens2 is required");
  auto other = parse_polynomial_list(e.ring, read_text(o.gens2));
  Json j = header("equal", e);
  j["generators2"] = strings(other);
  Ideal I(e.ring, e.gens), J(e.ring, other);
  I.groebner_basis(e.gopts);
  J.groebner_basis(e.gopts);
  j["equal"] = ideal_equal(I, J);
  return {std::move(j)};
}

bool lambda_choice(const Options& o, const Ideal& I, const std::vector<unsigned>& levels) {
  if (o.lambda == "auto") return needs_lambda(I, levels);
  if (o.lambda == "on") return true;
  if (o.lambda == "off") return false;
  throw UsageError("--lambda must be auto, on or off");
}

Result conormal(const Options& o) {
  Env e = load(o);
  const auto levels = parse_levels(o.levels, o.h);
  Ideal I(e.ring, e.gens);
  auto C = conormal_ideal(I, levels, lambda_choice(o, I, levels));
  Json j = header("conormal", e);
  j["levels"] = level_list(C.levels());
  j["lambda"] = C.use_lambda();
  j["ring"] = names(C.ring());
  j["conormal"] = strings(C.generators());
  j["cone"] = cone_check(C);
  return {std::move(j)};
}

Json dual_json(const DualVariety& D) {
  Json j;
  j["dual_variables"] = names(D.ideal.ring());
  if (D.intermediate) {
    j["intermediate_variables"] = names(D.intermediate->ring());
    j["intermediate"] = strings(D.intermediate->generators());
  }
  j["dual"] = strings(D.ideal.generators());
  j["provenance"] = D.provenance;
  return j;
}

Result dual(const Options& o) {
  Env e = load(o);
  auto levels = parse_levels(o.levels, o.h);
  if (std::find(levels.begin(), levels.end(), o.h) == levels.end()) levels.push_back(o.h);
  Ideal I(e.ring, e.gens);
  const auto t0 = std::chrono::steady_clock::now();
  auto D = dual_ideal(conormal_ideal(I, levels, lambda_choice(o, I, levels)), o.h, e.gopts);
  Json j = header("dual", e);
  j["h"] = o.h;
  j["levels"] = level_list(levels);
  j.update(dual_json(D));
  if (o.timings) j["timings_ms"] = {{"dual", ms(t0)}};
  return {std::move(j)};
}

Json reflexive_json(const ReflexivityReport& rep, bool timings) {
  Json j;
  j["h"] = rep.h;
  j["h2"] = rep.h2;
  j.update(dual_json(rep.dual));
  j["second_dual"] = strings(rep.second_dual.generators());
  j["verdict"] = rep.equal ? "equal" : "not-equal";
  if (rep.symmetric_equal) j["symmetric_verdict"] = *rep.symmetric_equal ? "equal" : "not-equal";
  j["warnings"] = rep.warnings;
  if (timings) j["timings_ms"] = {{"dual", rep.dual_ms}, {"second_dual", rep.second_ms}};
  return j;
}

Result reflexive(const Options& o, const std::string& verb) {
  Env e = load(o);
  ReflexiveOptions ro;
  ro.h = o.h;
  ro.h2 = o.h2;
  ro.first_levels = o.levels.empty() ? std::vector<unsigned>{} : parse_levels(o.levels, o.h);
  ro.symmetric_check = o.symmetric;
  ro.groebner = e.gopts;
  auto rep = check_reflexive(Ideal(e.ring, e.gens), ro);
  Json j = header(verb, e);
  j.update(reflexive_json(rep, o.timings));
  return {std::move(j), verb == "reflexive" && !rep.equal ? 1 : 0};
}

Result suggest(const Options& o) {
  Env e = load(o);
  Json j = header("suggest-h", e);
  j["hmax"] = o.hmax;
  j["h"] = suggest_h(Ideal(e.ring, e.gens), o.hmax);
  return {std::move(j)};
}

Result h_homog(const Options& o) {
  Env e = load(o);
  Json j = header("h-homog", e);
  j["h"] = o.h;
  Json rows = Json::array();
  for (const auto& g : e.gens) {
    Json row;
    row["generator"] = g.to_string();
    auto d = g.is_zero() ? std::nullopt : is_h_homogeneous(g, o.h);
    row["h_degree"] = d ? Json(*d) : Json(nullptr);
    row["bihomogeneous"] = !g.is_zero() && is_bihomogeneous(g, o.h);
    rows.push_back(std::move(row));
  }
  j["results"] = std::move(rows);
  return {std::move(j)};
}

Json lagrangian_json(const LagrangianCertificate& cert) {
  Json j;
  j["vanishes"] = cert.vanishes;
  j["omega"] = cert.omega.to_string();
  Json pairs = Json::array();
  for (const auto& pr : cert.pairs) {
    pairs.push_back(Json{{"j", pr.j}, {"nu", pr.nu}, {"first", pr.first.to_string()}, {"second", pr.second.to_string()}});
  }
  j["pairs"] = std::move(pairs);
  j["notes"] = cert.notes;
  return j;
}

Result lagrangian(const Options& o) {
  Env e = load(o);
  auto levels = parse_levels(o.levels, o.h);
  if (std::find(levels.begin(), levels.end(), o.h) == levels.end()) levels.push_back(o.h);
  Ideal I(e.ring, e.gens);
  auto C = conormal_ideal(I, levels, lambda_choice(o, I, levels));
  std::optional<std::size_t> corrupt;
  if (o.corrupt >= 0) corrupt = static_cast<std::size_t>(o.corrupt);
  auto cert = lagrangian_check(C, o.h, corrupt);
  Json j = header("lagrangian-check", e);
  j["h"] = o.h;
  j["levels"] = level_list(C.levels());
  j["lambda"] = C.use_lambda();
  j["cone"] = cone_check(C);
  j.update(lagrangian_json(cert));
  return {std::move(j), cert.vanishes ? 0 : 1};
}

Result omega_eval(const Options& o) {
  auto k = Field::parse(o.field, o.modulus);
  auto v = parse_vector(k, o.v), w = parse_vector(k, o.w);
  Json j;
  j["command"] = "omega-eval";
  j["field"] = k->spec_string();
  j["h"] = o.h;
  j["value"] = k->format(omega(*k, v, w, o.h));
  return {std::move(j)};
}

// ---------------------------------------------------------------- presets

struct PresetCall {
  std::string name;
  std::vector<std::string> args;
};

PresetCall parse_preset(const std::string& text) {
  PresetCall call;
  const auto open = text.find('(');
  if (open == std::string::npos) {
    call.name = text;
    return call;
  }
  if (text.back() != ')') throw UsageError("malformed preset '" + text + "'");
  call.name = text.substr(0, open);
  const std::string inner = text.substr(open + 1, text.size() - open - 2);
  int depth = 0;
  std::string cur;
  for (char c : inner) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      call.args.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) call.args.push_back(cur);
  return call;
}

std::uint64_t arg_u(const PresetCall& c, std::size_t i) {
  if (i >= c.args.size()) throw UsageError("preset " + c.name + " is missing argument " + std::to_string(i + 1));
  try {
    return std::stoull(c.args[i]);
  } catch (const std::exception&) {
    throw UsageError("preset " + c.name + ": bad integer '" + c.args[i] + "'");
  }
}

Json preset_header(const std::string& text, const Ideal& I) {
  Json j;
  j["preset"] = text;
  j["field"] = I.ring()->k().spec_string();
  j["variables"] = names(I.ring());
  j["generators"] = strings(I.generators());
  return j;
}

Polynomial power_sum(const RingPtr& r, Exponent e) {
  Polynomial f(r);
  for (std::size_t i = 0; i < r->nvars(); ++i) f += Polynomial::variable(r, i, e);
  return f;
}

Result run_reflexive_preset(const std::string& text, const Ideal& I, ReflexiveOptions ro, const Options& o) {
  if (o.budget) ro.groebner.pair_budget = o.budget;
  auto rep = check_reflexive(I, ro);
  Json j = preset_header(text, I);
  j.update(reflexive_json(rep, o.timings));
  return {std::move(j), rep.equal ? 0 : 1};
}

Result preset(const std::string& text, const Options& o) {
  const auto call = parse_preset(text);
  GroebnerOptions g;
  if (o.budget) g.pair_budget = o.budget;

  if (call.name == "appendix-fermat7" || call.name == "fermat-2p1") {
    const std::uint64_t p = call.name == "fermat-2p1" ? arg_u(call, 0) : 3;
    const std::uint64_t n = call.name == "fermat-2p1" ? arg_u(call, 1) : 2;
    auto r = Ring::make(Field::make(p), Ring::indexed_names("x", n + 1));
    ReflexiveOptions ro;
    ro.h = 1;
    ro.first_levels = {0, 1};
    return run_reflexive_preset(text, Ideal(r, {power_sum(r, static_cast<Exponent>(2 * p + 1))}), ro, o);
  }
  if (call.name == "fermat5-char101") {
    auto r = Ring::make(Field::make(101), Ring::indexed_names("x", 3));
    return run_reflexive_preset(text, Ideal(r, {power_sum(r, 5)}), {}, o);
  }
  if (call.name == "hermitian") {
    const std::uint64_t p = arg_u(call, 0), h = arg_u(call, 1), n = arg_u(call, 2);
    auto r = Ring::make(Field::make(p), Ring::indexed_names("x", n + 1));
    const auto q = checked_pow(p, static_cast<unsigned>(h));
    Ideal I(r, {power_sum(r, static_cast<Exponent>(q + 1))});
    ReflexiveOptions ro;
    ro.h = ro.h2 = static_cast<unsigned>(h);
    auto res = run_reflexive_preset(text, I, ro, o);
    auto cert = lagrangian_check(conormal_ideal(I, {ro.h}, false), ro.h);
    res.report["lagrangian"] = cert.vanishes;
    return res;
  }
  if (call.name == "gen-fermat") {
    const std::uint64_t p = arg_u(call, 0), h = arg_u(call, 1), n = arg_u(call, 2);
    if (n < 3) throw UsageError("gen-fermat needs n >= 3");
    FieldPtr k = o.field == "3" ? Field::make(p) : Field::parse(o.field, o.modulus);
    if (k->characteristic() != p) throw UsageError("--field must have characteristic " + std::to_string(p));
    auto r = Ring::make(k, Ring::indexed_names("x", n + 1));
    auto constants = Ring::make(k, {});
    std::mt19937_64 rng(o.seed);
    std::vector<Elem> lam;
    for (std::size_t i = 0; i + 2 < n; ++i) {
      if (3 + i < call.args.size()) {
        auto c = parse_polynomial(constants, call.args[3 + i]);
        lam.push_back(c.is_zero() ? 0 : c.coeff_at(0));
      } else {
        lam.push_back(1 + rng() % (k->order() - 1));
      }
    }
    const auto e = static_cast<Exponent>(checked_pow(p, static_cast<unsigned>(h)) + 1);
    std::vector<Polynomial> gens{Polynomial::variable(r, 0, e) + Polynomial::variable(r, 1, e) +
                                 Polynomial::variable(r, 2, e)};
    for (std::size_t i = 0; i < lam.size(); ++i) {
      gens.push_back(Polynomial::variable(r, 0, e).scale(lam[i]) + Polynomial::variable(r, 1, e) +
                     Polynomial::variable(r, 3 + i, e));
    }
    Ideal I(r, gens);
    auto C = conormal_ideal(I, {static_cast<unsigned>(h)}, true);
    auto cert = lagrangian_check(C, static_cast<unsigned>(h));
    Json j = preset_header(text, I);
    Json lj = Json::array();
    for (auto l : lam) lj.push_back(k->format(l));
    j["lambda_bar"] = std::move(lj);
    j["h"] = h;
    j["conormal"] = strings(C.generators());
    j["cone"] = cone_check(C);
    j["lagrangian"] = lagrangian_json(cert);
    if (n == 3) {
      j.update(dual_json(dual_ideal(C, static_cast<unsigned>(h), g)));
    } else {
      j["dual"] = "skipped for n > 3";
    }
    return {std::move(j), cert.vanishes ? 0 : 1};
  }
  if (call.name == "quadratic") {
    if (call.args.size() != 2) throw UsageError("quadratic takes a matrix and q");
    const std::uint64_t q = arg_u(call, 1);
    Json rows;
    try {
      rows = Json::parse(call.args[0]);
    } catch (const std::exception&) {
      throw UsageError("quadratic: matrix must look like [[1,0],[0,1]]");
    }
    std::uint64_t p = 2;
    while (q % p != 0) ++p;
    FieldPtr k = o.field == "3" ? Field::make(p) : Field::parse(o.field, o.modulus);
    Matrix a;
    for (const auto& row : rows) {
      std::vector<Elem> out;
      for (const auto& v : row) out.push_back(k->from_int(v.get<std::int64_t>()));
      a.push_back(std::move(out));
    }
    auto Q = quadratic_form_dual(k, a, q);
    unsigned h = 0;
    for (std::uint64_t v = q; v > 1; v /= p) ++h;
    Ideal I(Q.form.ring(), {Q.form});
    auto D = dual_of(I, h, {}, g);
    Json j = preset_header(text, I);
    j["q"] = q;
    j["relation"] = Q.relation.to_string();
    j["closed_form_dual"] = Q.dual.to_string();
    j["substitution_identity"] = Q.substitution_identity;
    j.update(dual_json(D));
    const bool agree = ideal_equal(D.ideal, relabel(Ideal(Q.dual.ring(), {Q.dual}), D.ideal.ring()));
    j["agree"] = agree;
    return {std::move(j), agree ? 0 : 1};
  }
  throw UsageError("unknown preset '" + call.name + "'");
}

Result presets(const Options& o) {
  if (o.presets.empty()) throw UsageError("preset needs at least one name");
  std::vector<Result> results(o.presets.size());
  std::vector<std::string> errors(o.presets.size());
  std::mutex mu;
  std::size_t next = 0;
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard lock(mu);
        if (next == o.presets.size()) return;
        i = next++;
      }
      try {
        results[i] = preset(o.presets[i], o);
      } catch (const UsageError&) {
        throw;
      } catch (const std::exception& ex) {
        errors[i] = ex.what();
      }
    }
  };
  // usage errors surface before any work starts
  for (const auto& name : o.presets) parse_preset(name);
  const unsigned n = std::max(1u, std::min<unsigned>(o.jobs, static_cast<unsigned>(o.presets.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> failures(n);
    for (unsigned t = 0; t < n; ++t) {
      pool.emplace_back([&, t] {
        try {
          worker();
        } catch (...) {
          failures[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i].empty()) throw std::runtime_error(o.presets[i] + ": " + errors[i]);
  }
  if (results.size() == 1) return std::move(results[0]);
  Result all{Json::array()};
  for (auto& r : results) {
    all.report.push_back(std::move(r.report));
    all.code = std::max(all.code, r.code);
  }
  return all;
}

// ---------------------------------------------------------------- output

void render_text(const Json& j, std::ostream& out, const std::string& indent) {
  if (j.is_array()) {
    bool first = true;
    for (const auto& item : j) {
      if (!first) out << "\n";
      first = false;
      render_text(item, out, indent);
    }
    return;
  }
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      out << indent << key << ":\n";
      render_text(value, out, indent + "  ");
    } else if (value.is_array()) {
      if (value.empty()) {
        out << indent << key << ": []\n";
        continue;
      }
      const bool nested = std::any_of(value.begin(), value.end(), [](const Json& v) { return v.is_structured(); });
      const bool numeric = std::all_of(value.begin(), value.end(), [](const Json& v) { return v.is_number(); });
      if (numeric) {
        out << indent << key << ": ";
        for (std::size_t i = 0; i < value.size(); ++i) out << (i ? "," : "") << value[i].dump();
        out << "\n";
        continue;
      }
      out << indent << key << ":\n" << indent << "[\n";
      for (std::size_t i = 0; i < value.size(); ++i) {
        const auto& v = value[i];
        if (nested && v.is_object()) {
          render_text(v, out, indent + "    ");
          if (i + 1 < value.size()) out << "\n";
        } else if (nested && v.is_array()) {
          std::string row;
          for (const auto& x : v) row += (row.empty() ? "" : ", ") + (x.is_string() ? x.get<std::string>() : x.dump());
          out << indent << "    [" << row << "]" << (i + 1 < value.size() ? "," : "") << "\n";
        } else {
          out << indent << "    " << (v.is_string() ? v.get<std::string>() : v.dump())
              << (i + 1 < value.size() ? "," : "") << "\n";
        }
      }
      out << indent << "]\n";
    } else {
      out << indent << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
  }
}

void emit(const Json& j, const Options& o, std::ostream& out) {
  if (o.format == "json") {
    out << j.dump(2) << "\n";
  } else {
    render_text(j, out, "");
  }
}

void write_partial(const Options& o, const BudgetExceeded& ex, std::ostream& err) {
  Json j;
  j["error"] = "budget-exceeded";
  j["message"] = ex.what();
  j["partial"] = strings(ex.partial());
  std::ofstream f(o.partial);
  if (f) {
    f << j.dump(2) << "\n";
    err << "hdual: partial basis (" << ex.partial().size() << " elements) written to " << o.partial << "\n";
  } else {
    err << "hdual: could not write " << o.partial << "\n";
  }
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact h-conormal ideals and dual varieties over finite fields", "hdual"};
  app.set_help_flag("--help", "print this help");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--field", o.field, "field spec p or p^k")->capture_default_str();
  app.add_option("--modulus", o.modulus, "extension modulus, constant term first");
  app.add_option("--vars", o.vars, "variable count or comma separated names");
  app.add_option("--gens", o.gens, "generators inline or a file path (';' or newline separated)");
  app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_option("--budget", o.budget, "Buchberger pair budget (default HDUAL_BUDGET or 2000000)");
  app.add_option("--seed", o.seed, "seed for randomized preset parameters")->capture_default_str();
  app.add_option("--jobs", o.jobs, "worker threads for preset batches")->capture_default_str();
  app.add_flag("--timings", o.timings, "include wall-clock timings");
  app.add_option("--partial", o.partial, "side file for partial bases on budget exhaustion")->capture_default_str();

  auto add_h = [&](CLI::App* sub, const char* help = "level h") {
    sub->add_option("--h", o.h, help);
  };
  auto* d = app.add_subcommand("derive", "Hasse derivatives of the generators");
  d->add_option("--var", o.var, "variable name or index (all when omitted)");
  auto* ord = d->add_option("--order", o.order_n, "derivative order n");
  auto* lvl = d->add_option("--level", o.h, "derivative order p^h");
  ord->excludes(lvl);
  lvl->excludes(ord);
  auto* g = app.add_subcommand("gb", "reduced Groebner basis");
  g->add_option("--order", o.ordering, "lex or grevlex")->capture_default_str();
  auto* el = app.add_subcommand("eliminate", "elimination ideal");
  el->add_option("--keep", o.keep, "variables to keep")->required();
  auto* m = app.add_subcommand("member", "ideal membership");
  m->add_option("--poly", o.poly, "polynomial to test")->required();
  auto* eq = app.add_subcommand("equal", "ideal equality");
  eq->add_option("--gens2", o.gens2, "second generator list")->required();
  auto* cn = app.add_subcommand("conormal", "conormal ideal generators");
  auto* du = app.add_subcommand("dual", "dual variety at level h");
  auto* rf = app.add_subcommand("reflexive", "dual, second dual and verdict (exit 1 when not equal)");
  auto* bd = app.add_subcommand("bidual", "dual and second dual");
  for (auto* sub : {cn, du, rf, bd}) {
    add_h(sub);
    sub->add_option("--levels", o.levels, "conormal levels, comma separated");
    sub->add_option("--lambda", o.lambda, "auto, on or off")->capture_default_str();
  }
  for (auto* sub : {rf, bd}) {
    sub->add_option("--h2", o.h2, "level of the second dual")->capture_default_str();
    sub->add_flag("--symmetric", o.symmetric, "also run the second dual at level h");
  }
  auto* sh = app.add_subcommand("suggest-h", "heuristic level suggestion");
  sh->add_option("--hmax", o.hmax, "largest level tried")->capture_default_str();
  auto* hh = app.add_subcommand("h-homog", "h-degree and bihomogeneity of each generator");
  add_h(hh);
  auto* lg = app.add_subcommand("lagrangian-check", "symbolic Lagrangian check (exit 1 when it fails)");
  add_h(lg);
  lg->add_option("--levels", o.levels, "conormal levels, comma separated");
  lg->add_option("--lambda", o.lambda, "auto, on or off")->capture_default_str();
  lg->add_option("--corrupt", o.corrupt, "flip the sign of one ξ coordinate");
  auto* om = app.add_subcommand("omega-eval", "q-symplectic form value");
  add_h(om);
  om->add_option("--v", o.v, "first vector, comma separated field elements")->required();
  om->add_option("--w", o.w, "second vector")->required();
  auto* pr = app.add_subcommand("preset", "bundled examples");
  pr->add_option("names", o.presets,
                 "appendix-fermat7, fermat5-char101, hermitian(p,h,n), fermat-2p1(p,n), gen-fermat(p,h,n,l...), "
                 "quadratic([[..]],q)")
      ->required();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "hdual: " << e.what() << "\n";
    return 2;
  }
  o.order_set = ord->count() > 0;
  o.level_set = lvl->count() > 0;

  try {
    Result res;
    if (d->parsed()) {
      res = derive(o);
    } else if (g->parsed()) {
      res = gb(o);
    } else if (el->parsed()) {
      res = eliminate(o);
    } else if (m->parsed()) {
      res = member(o);
    } else if (eq->parsed()) {
      res = equal(o);
    } else if (cn->parsed()) {
      res = conormal(o);
    } else if (du->parsed()) {
      res = dual(o);
    } else if (rf->parsed()) {
      res = reflexive(o, "reflexive");
    } else if (bd->parsed()) {
      res = reflexive(o, "bidual");
    } else if (sh->parsed()) {
      res = suggest(o);
    } else if (hh->parsed()) {
      res = h_homog(o);
    } else if (lg->parsed()) {
      res = lagrangian(o);
    } else if (om->parsed()) {
      res = omega_eval(o);
    } else {
      res = presets(o);
    }
    emit(res.report, o, out);
    return res.code;
  } catch (const BudgetExceeded& ex) {
    err << "hdual: " << ex.what() << "\n";
    write_partial(o, ex, err);
  } catch (const ParseError& ex) {
    err << "hdual: " << ex.what() << "\n";
  } catch (const std::exception& ex) {
    err << "hdual: " << ex.what() << "\n";
  }
  return 2;
}

}  // namespace hdual::cli
