#include "hdual/forms.hpp"

#include <algorithm>

#include "hdual/hasse.hpp"

namespace hdual {

Elem PhLinearForm::operator()(const std::vector<Elem>& v) const {
  if (v.size() != coeffs.size()) throw std::invalid_argument("vector length does not match the form");
  Elem s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s = field->add(s, field->mul(coeffs[i], field->frobenius(v[i], h)));
  return s;
}

PhLinearForm PhLinearForm::scaled(Elem c) const {
  PhLinearForm out = *this;
  for (auto& a : out.coeffs) a = field->mul(a, c);
  return out;
}

Elem double_dual(const std::vector<Elem>& v, const PhLinearForm& phi) {
  const Field& k = *phi.field;
  std::vector<Elem> root(v.size());
  const auto h = static_cast<std::int64_t>(phi.h);
  for (std::size_t i = 0; i < v.size(); ++i) root[i] = k.frobenius(v[i], -2 * h);
  return k.frobenius(phi(root), h);
}

Elem omega(const Field& k, const std::vector<Elem>& v, const std::vector<Elem>& w, unsigned h) {
  if (v.size() != w.size() || v.size() % 2 != 0) throw std::invalid_argument("omega needs two vectors of equal even length");
  const std::size_t n = v.size() / 2;
  Elem s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    s = k.add(s, k.mul(k.frobenius(v[i], h), w[n + i]));
    s = k.sub(s, k.mul(v[n + i], k.frobenius(w[i], h)));
  }
  return s;
}

// ---------------------------------------------------------------- forms

namespace {

// Sorts a symbol tuple; the sign of the permutation, or 0 on a repeat.
int canonicalize(DifferentialForm::Key& key) {
  int sign = 1;
  for (std::size_t i = 1; i < key.size(); ++i) {
    for (std::size_t j = i; j > 0 && key[j] < key[j - 1]; --j) {
      std::swap(key[j], key[j - 1]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < key.size(); ++i) {
    if (key[i] == key[i - 1]) return 0;
  }
  return sign;
}

std::string symbol_name(const Ring& ring, const Symbol& s) {
  return (s.level == 0 ? std::string("d") : "d" + std::to_string(s.level)) + ring.name(s.var);
}

}  // namespace

DifferentialForm DifferentialForm::function(const Polynomial& f) {
  DifferentialForm w(f.ring());
  w.add({}, f);
  return w;
}

DifferentialForm DifferentialForm::symbol(const RingPtr& ring, std::size_t var, unsigned level) {
  if (var >= ring->nvars()) throw std::out_of_range("variable index out of range");
  DifferentialForm w(ring);
  w.add({Symbol{static_cast<std::uint32_t>(var), level}}, Polynomial::constant(ring, 1));
  return w;
}

void DifferentialForm::add(Key key, const Polynomial& c) {
  if (c.is_zero()) return;
  const int sign = canonicalize(key);
  if (sign == 0) return;
  auto it = terms_.find(key);
  Polynomial v = sign > 0 ? c : -c;
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), std::move(v));
    return;
  }
  it->second += v;
  if (it->second.is_zero()) terms_.erase(it);
}

Polynomial DifferentialForm::coeff(Key key) const {
  const int sign = canonicalize(key);
  if (sign == 0) return Polynomial(ring_);
  auto it = terms_.find(key);
  if (it == terms_.end()) return Polynomial(ring_);
  return sign > 0 ? it->second : -it->second;
}

DifferentialForm DifferentialForm::operator+(const DifferentialForm& o) const {
  DifferentialForm r = *this;
  for (const auto& [k, c] : o.terms_) r.add(k, c);
  return r;
}

DifferentialForm DifferentialForm::operator-() const {
  DifferentialForm r(ring_);
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

DifferentialForm DifferentialForm::operator-(const DifferentialForm& o) const { return *this + (-o); }

DifferentialForm DifferentialForm::operator*(const Polynomial& f) const {
  DifferentialForm r(ring_);
  for (const auto& [k, c] : terms_) r.add(k, c * f);
  return r;
}

bool DifferentialForm::operator==(const DifferentialForm& o) const { return (*this - o).is_zero(); }

std::string DifferentialForm::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [key, c] : terms_) {
    if (!out.empty()) out += " + ";
    std::string coeff = c.to_string();
    if (c.size() > 1 && !key.empty()) coeff = "(" + coeff + ")";
    std::string syms;
    for (const auto& s : key) syms += (syms.empty() ? "" : "^") + symbol_name(*ring_, s);
    if (syms.empty()) {
      out += coeff;
    } else if (coeff == "1") {
      out += syms;
    } else {
      out += coeff + " " + syms;
    }
  }
  return out;
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
  if (!a.ring()->same_as(*b.ring())) throw RingMismatchError("forms over different rings");
  DifferentialForm r(a.ring());
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      DifferentialForm::Key key = ka;
      key.insert(key.end(), kb.begin(), kb.end());
      r.add(std::move(key), ca * cb);
    }
  }
  return r;
}

DifferentialForm d_h(const DifferentialForm& w, unsigned h, const std::vector<std::size_t>& vars) {
  std::vector<std::size_t> all = vars;
  if (all.empty()) {
    for (std::size_t i = 0; i < w.ring()->nvars(); ++i) all.push_back(i);
  }
  DifferentialForm r(w.ring());
  for (const auto& [key, c] : w.terms()) {
    for (auto i : all) {
      Polynomial d = hasse_h(c, i, h);
      if (d.is_zero()) continue;
      DifferentialForm::Key k2{Symbol{static_cast<std::uint32_t>(i), h}};
      k2.insert(k2.end(), key.begin(), key.end());
      r.add(std::move(k2), d);
    }
  }
  return r;
}

DifferentialForm contract(const VectorField& x, const DifferentialForm& w) {
  DifferentialForm r(w.ring());
  const std::uint64_t p = w.ring()->k().characteristic();
  for (const auto& [key, c] : w.terms()) {
    for (std::size_t m = 0; m < key.size(); ++m) {
      auto it = x.find(key[m]);
      if (it == x.end() || it->second.is_zero()) continue;
      Polynomial a = it->second.pow(checked_pow(p, key[m].level)) * c;
      DifferentialForm::Key rest = key;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(m));
      r.add(std::move(rest), m % 2 == 0 ? a : -a);
    }
  }
  return r;
}

// ---------------------------------------------------------------- Lagrangian

LagrangianCertificate lagrangian_check(const ConormalIdeal& C, unsigned h, std::optional<std::size_t> corrupt) {
  if (!C.has_level(h)) throw ConfigurationError("level " + std::to_string(h) + " is not among the conormal levels");
  const RingPtr& ring = C.ring();
  const std::size_t n = C.num_x();
  std::vector<std::size_t> xs(n);
  for (std::size_t j = 0; j < n; ++j) xs[j] = j;

  std::vector<Polynomial> xi_h, xi_0;
  for (std::size_t j = 0; j < n; ++j) {
    Polynomial v = C.xi_value(j, h);
    if (corrupt && *corrupt == j) v = -v;
    xi_h.push_back(std::move(v));
  }
  const auto& fs = C.base().generators();
  for (std::size_t j = 0; j < n; ++j) {
    if (C.has_level(0)) {
      xi_0.push_back(C.xi_value(j, 0));
      continue;
    }
    Polynomial s(ring);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      Polynomial d = hasse_h(fs[i], j, 0).map_to(ring, xs);
      if (C.use_lambda()) d *= Polynomial::variable(ring, C.lambda_index(i));
      s += d;
    }
    xi_0.push_back(std::move(s));
  }

  LagrangianCertificate cert{false, DifferentialForm(ring), {}, {}};
  for (std::size_t j = 0; j < n; ++j) {
    cert.omega = cert.omega + wedge(DifferentialForm::symbol(ring, j, h), d_h(DifferentialForm::function(xi_h[j]), 0, xs));
    cert.omega = cert.omega + wedge(DifferentialForm::symbol(ring, j, 0), d_h(DifferentialForm::function(xi_0[j]), h, xs));
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t nu = 0; nu < n; ++nu) {
      Polynomial a = hasse_h(xi_h[j], nu, 0);
      Polynomial b = hasse_h(xi_0[nu], j, h);
      if (a.is_zero() && b.is_zero()) continue;
      cert.pairs.push_back({j, nu, std::move(a), std::move(b)});
    }
  }
  cert.vanishes = cert.omega.is_zero();
  cert.notes.push_back("lambda variables are held constant; only x variables are differentiated");
  cert.notes.push_back("the dimension condition dim = n is not verified");
  if (!cone_check(C)) cert.notes.push_back("cone condition fails");
  return cert;
}

bool cone_check(const std::vector<Polynomial>& gens, const std::vector<std::size_t>& lambda_vars,
                const std::vector<std::size_t>& xi_vars, bool use_lambda) {
  std::vector<std::size_t> block = lambda_vars;
  block.insert(block.end(), xi_vars.begin(), xi_vars.end());
  for (const auto& g : gens) {
    std::vector<std::uint64_t> degs;
    for (std::size_t t = 0; t < g.size(); ++t) {
      auto e = g.term_at(t).exps;
      std::uint64_t d = 0;
      for (auto v : block) d += e[v];
      degs.push_back(d);
    }
    if (std::all_of(degs.begin(), degs.end(), [](auto d) { return d == 0; })) continue;
    for (auto d : degs) {
      if (d == 1) continue;
      if (d == 0 && !use_lambda) continue;
      return false;
    }
  }
  return true;
}

bool cone_check(const ConormalIdeal& C) {
  std::vector<std::size_t> lambdas;
  for (std::size_t i = 0; i < C.num_lambda(); ++i) lambdas.push_back(C.lambda_index(i));
  return cone_check(C.generators(), lambdas, C.all_xi(), C.use_lambda());
}

}  // namespace hdual
