#include "hdual/duality.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "hdual/hasse.hpp"

namespace hdual {

namespace {

std::vector<Polynomial> nonzero(const std::vector<Polynomial>& gens) {
  std::vector<Polynomial> out;
  for (const auto& g : gens) {
    if (!g.is_zero()) out.push_back(g);
  }
  return out;
}

std::vector<unsigned> normalize_levels(std::vector<unsigned> levels) {
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  if (levels.empty()) throw ConfigurationError("conormal ideal needs at least one level");
  return levels;
}

RingPtr ambient_ring(const Ideal& base, const std::vector<unsigned>& levels, bool use_lambda, std::size_t r) {
  std::vector<std::string> names = base.ring()->names();
  if (use_lambda) {
    for (std::size_t i = 1; i <= r; ++i) names.push_back("l" + std::to_string(i));
  }
  const std::size_t nx = base.ring()->nvars();
  for (unsigned h : levels) {
    for (std::size_t j = 0; j < nx; ++j) {
      names.push_back("y" + std::to_string(j) + (levels.size() > 1 ? "_" + std::to_string(h) : ""));
    }
  }
  try {
    return Ring::make(base.ring()->field(), std::move(names));
  } catch (const std::invalid_argument& e) {
    throw ConfigurationError(std::string("conormal variable names clash with the input ring: ") + e.what());
  }
}

std::vector<Polynomial> conormal_generators(const Ideal& base, const RingPtr& ring,
                                            const std::vector<unsigned>& levels, bool use_lambda) {
  const auto fs = nonzero(base.generators());
  const std::size_t nx = base.ring()->nvars();
  const std::size_t r = fs.size();
  std::vector<std::size_t> embed(nx);
  for (std::size_t j = 0; j < nx; ++j) embed[j] = j;
  std::vector<Polynomial> gens;
  for (const auto& f : fs) gens.push_back(f.map_to(ring, embed));
  const std::size_t xi_start = nx + (use_lambda ? r : 0);
  for (std::size_t pos = 0; pos < levels.size(); ++pos) {
    for (std::size_t j = 0; j < nx; ++j) {
      Polynomial g = Polynomial::variable(ring, xi_start + pos * nx + j);
      for (std::size_t i = 0; i < r; ++i) {
        Polynomial d = hasse_h(fs[i], j, levels[pos]).map_to(ring, embed);
        if (use_lambda) d *= Polynomial::variable(ring, nx + i);
        g -= d;
      }
      gens.push_back(std::move(g));
    }
  }
  return gens;
}

std::vector<std::uint64_t> sugar_weights(const Ideal& base, const std::vector<unsigned>& levels, bool use_lambda) {
  const auto fs = nonzero(base.generators());
  for (const auto& f : fs) {
    if (!f.is_homogeneous()) return {};
  }
  const std::size_t nx = base.ring()->nvars();
  const std::uint64_t p = base.ring()->k().characteristic();
  std::vector<std::uint64_t> w(nx, 1);
  std::uint64_t top = 0;
  for (const auto& f : fs) top = std::max(top, f.total_degree());
  for (unsigned h : levels) top = std::max(top, checked_pow(p, h));
  if (use_lambda) {
    for (const auto& f : fs) w.push_back(top - f.total_degree() + 1);
  }
  for (unsigned h : levels) {
    const std::uint64_t q = checked_pow(p, h);
    std::uint64_t wx = use_lambda ? top + 1 - q : (fs[0].total_degree() > q ? fs[0].total_degree() - q : 1);
    for (std::size_t j = 0; j < nx; ++j) w.push_back(wx);
  }
  return w;
}

std::string join_levels(const std::vector<unsigned>& levels) {
  std::string s;
  for (unsigned h : levels) s += (s.empty() ? "" : ",") + std::to_string(h);
  return s;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

// ---------------------------------------------------------------- conormal

ConormalIdeal::ConormalIdeal(const Ideal& base, std::vector<unsigned> levels, bool use_lambda)
    : base_(base.ring(), nonzero(base.generators())),
      levels_(normalize_levels(std::move(levels))),
      use_lambda_(use_lambda),
      nx_(base.ring()->nvars()),
      ideal_(base.ring(), {}) {
  const std::size_t r = base_.generators().size();
  if (r == 0) throw ConfigurationError("conormal ideal of the zero ideal");
  if (!use_lambda_ && r > 1) {
    throw ConfigurationError("fixing the multiplier to 1 needs a single generator, got " + std::to_string(r));
  }
  auto ring = ambient_ring(base_, levels_, use_lambda_, r);
  ideal_ = Ideal(ring, conormal_generators(base_, ring, levels_, use_lambda_));
  weights_ = sugar_weights(base_, levels_, use_lambda_);
}

ConormalIdeal conormal_ideal(const Ideal& I, std::vector<unsigned> levels, bool use_lambda) {
  return ConormalIdeal(I, std::move(levels), use_lambda);
}

bool ConormalIdeal::has_level(unsigned level) const {
  return std::binary_search(levels_.begin(), levels_.end(), level);
}

std::size_t ConormalIdeal::xi_index(std::size_t j, unsigned level) const {
  auto it = std::lower_bound(levels_.begin(), levels_.end(), level);
  if (it == levels_.end() || *it != level) throw ConfigurationError("level " + std::to_string(level) + " not present");
  if (j >= nx_) throw std::out_of_range("coordinate index out of range");
  return nx_ + num_lambda() + static_cast<std::size_t>(it - levels_.begin()) * nx_ + j;
}

std::vector<std::size_t> ConormalIdeal::xi_block(unsigned level) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < nx_; ++j) out.push_back(xi_index(j, level));
  return out;
}

std::vector<std::size_t> ConormalIdeal::all_xi() const {
  std::vector<std::size_t> out;
  for (unsigned h : levels_) {
    for (auto v : xi_block(h)) out.push_back(v);
  }
  return out;
}

const Polynomial& ConormalIdeal::xi_generator(std::size_t j, unsigned level) const {
  const std::size_t pos = xi_index(j, level) - nx_ - num_lambda();
  return generators().at(base_.generators().size() + pos);
}

Polynomial ConormalIdeal::xi_value(std::size_t j, unsigned level) const {
  return Polynomial::variable(ring(), xi_index(j, level)) - xi_generator(j, level);
}

// ---------------------------------------------------------------- duals

DualVariety dual_ideal(const ConormalIdeal& C, unsigned level, const GroebnerOptions& opts) {
  if (!C.has_level(level)) {
    throw ConfigurationError("level " + std::to_string(level) + " is not among the conormal levels");
  }
  GroebnerOptions g = opts;
  if (g.weights.empty()) g.weights = C.weights();
  const auto xi = C.all_xi();
  Ideal J = elimination_ideal(C.ideal(), xi, g);
  std::string prov = "conormal levels {" + join_levels(C.levels()) + "}, " +
                     (C.use_lambda() ? "lambda multipliers" : "multiplier 1") +
                     "; eliminated x" + (C.use_lambda() ? " and lambda" : "");
  if (C.levels().size() == 1) {
    return DualVariety{std::move(J), level, std::nullopt, prov + "; block order grevlex > grevlex"};
  }
  GroebnerOptions g2 = opts;
  if (!g.weights.empty()) {
    for (auto v : xi) g2.weights.push_back(g.weights[v]);
  }
  std::vector<std::size_t> keep;
  for (std::size_t t = 0; t < xi.size(); ++t) {
    for (auto v : C.xi_block(level)) {
      if (xi[t] == v) keep.push_back(t);
    }
  }
  Ideal Z = elimination_ideal(J, keep, g2);
  prov += ", then the other levels; block order grevlex > grevlex";
  return DualVariety{std::move(Z), level, std::move(J), prov};
}

bool needs_lambda(const Ideal& I, const std::vector<unsigned>& levels) {
  const auto fs = nonzero(I.generators());
  if (fs.size() > 1) return true;
  for (unsigned h : levels) {
    for (const auto& f : fs) {
      const auto grad = nabla_h(f, h);
      if (std::all_of(grad.begin(), grad.end(), [](const Polynomial& d) { return d.total_degree() == 0; })) return true;
    }
  }
  return false;
}

DualVariety dual_of(const Ideal& I, unsigned level, std::vector<unsigned> levels, const GroebnerOptions& opts) {
  if (levels.empty()) levels = {level};
  const bool lambda = needs_lambda(I, levels);
  return dual_ideal(conormal_ideal(I, std::move(levels), lambda), level, opts);
}

std::vector<Polynomial> lex_basis(const Ideal& I, const GroebnerOptions& opts) {
  return basis_in_order(nonzero(I.generators()), MonomialOrder::lex(I.ring()->nvars()), opts);
}

Ideal relabel(const Ideal& J, const RingPtr& target) {
  if (J.ring()->nvars() != target->nvars()) throw ConfigurationError("relabel needs equal variable counts");
  std::vector<std::size_t> id(target->nvars());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
  std::vector<Polynomial> gens;
  for (const auto& g : J.generators()) gens.push_back(g.map_to(target, id));
  return Ideal(target, std::move(gens));
}

// ---------------------------------------------------------------- points

Matrix h_jacobian(const Ideal& I, const std::vector<Elem>& point, unsigned h) {
  const auto fs = nonzero(I.generators());
  Matrix m;
  for (const auto& f : fs) {
    std::vector<Elem> row;
    for (const auto& d : nabla_h(f, h)) row.push_back(d.evaluate(point));
    m.push_back(std::move(row));
  }
  return m;
}

bool is_h_nonsingular(const Ideal& I, const std::vector<Elem>& point, unsigned h) {
  const auto fs = nonzero(I.generators());
  for (const auto& f : fs) {
    if (f.evaluate(point) != 0) throw NotOnVarietyError("point does not lie on V(I)");
  }
  return matrix_rank(I.ring()->k(), h_jacobian(I, point, h)) == fs.size();
}

std::optional<unsigned> suggest_h_opt(const Ideal& I, unsigned hmax) {
  const auto fs = nonzero(I.generators());
  if (fs.empty()) throw ConfigurationError("suggest_h of the zero ideal");
  const std::uint64_t p = I.ring()->k().characteristic();
  for (unsigned h = 0; h <= hmax; ++h) {
    bool any_nonzero = false, separable = false;
    for (const auto& f : fs) {
      for (const auto& d : nabla_h(f, h)) {
        if (d.is_zero()) continue;
        any_nonzero = true;
        for (auto e : d.raw_exps()) {
          if (e % p != 0) separable = true;
        }
      }
    }
    if (any_nonzero && separable) return h;
  }
  return std::nullopt;
}

unsigned suggest_h(const Ideal& I, unsigned hmax) {
  if (auto h = suggest_h_opt(I, hmax)) return *h;
  throw NoSuggestionError("no level h <= " + std::to_string(hmax) + " gives a separable h-gradient");
}

// ---------------------------------------------------------------- quadratic forms

QuadraticFormDual quadratic_form_dual(const FieldPtr& k, const Matrix& a, std::uint64_t q) {
  const std::uint64_t p = k->characteristic();
  unsigned h = 0;
  for (std::uint64_t v = q; v > 1; v /= p, ++h) {
    if (v % p != 0) throw ConfigurationError("q must be a power of the characteristic");
  }
  if (h == 0) throw ConfigurationError("q must be at least p");
  const std::size_t n = a.size();
  const Matrix a_inv = matrix_inverse(*k, a);
  const Matrix b = matrix_inverse(*k, matrix_transpose(matrix_frobenius(*k, a, h)));

  auto xr = Ring::make(k, Ring::indexed_names("x", n));
  auto yr = Ring::make(k, Ring::indexed_names("y", n));
  auto names = Ring::indexed_names("y", n);
  for (auto& z : Ring::indexed_names("z", n)) names.push_back(z);
  auto rr = Ring::make(k, names);

  Polynomial form(xr), dual(yr), relation(rr);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      form += (Polynomial::variable(xr, i) * Polynomial::variable(xr, j, static_cast<Exponent>(q))).scale(a[i][j]);
      dual += (Polynomial::variable(yr, i) * Polynomial::variable(yr, j, static_cast<Exponent>(q))).scale(b[i][j]);
      relation += (Polynomial::variable(rr, i) * Polynomial::variable(rr, n + j)).scale(a_inv[i][j]);
    }
  }

  // ξ = A x^q, ξ1 = A^t x, and A (A^{(q)t})^{-1} ξ1^q should give back ξ
  const Matrix m = matrix_mul(*k, a, b);
  bool identity = true;
  std::vector<Polynomial> xi1_q;
  for (std::size_t l = 0; l < n; ++l) {
    Polynomial s(xr);
    for (std::size_t i = 0; i < n; ++i) s += Polynomial::variable(xr, i).scale(a[i][l]);
    xi1_q.push_back(s.pow(q));
  }
  for (std::size_t l = 0; l < n; ++l) {
    Polynomial xi(xr), lhs(xr);
    for (std::size_t j = 0; j < n; ++j) {
      xi += Polynomial::variable(xr, j, static_cast<Exponent>(q)).scale(a[l][j]);
      lhs += xi1_q[j].scale(m[l][j]);
    }
    identity = identity && xi == lhs;
  }
  return QuadraticFormDual{std::move(form), std::move(relation), dual.monic(), b, identity};
}

// ---------------------------------------------------------------- reflexivity

ReflexivityReport check_reflexive(const Ideal& I, const ReflexiveOptions& opts) {
  std::vector<std::string> warnings;
  const auto fs = nonzero(I.generators());
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (!is_bihomogeneous(fs[i], opts.h)) {
      warnings.push_back("generator " + std::to_string(i + 1) + " is not bihomogeneous for h=" +
                         std::to_string(opts.h));
    }
  }
  std::vector<unsigned> levels = opts.first_levels.empty() ? std::vector<unsigned>{opts.h} : opts.first_levels;
  if (std::find(levels.begin(), levels.end(), opts.h) == levels.end()) levels.push_back(opts.h);

  auto t0 = std::chrono::steady_clock::now();
  DualVariety dual = dual_of(I, opts.h, levels, opts.groebner);
  const double dual_ms = ms_since(t0);

  const Ideal z = relabel(dual.ideal, I.ring());
  auto second_at = [&](unsigned level) -> Ideal {
    if (z.is_zero()) return Ideal(I.ring(), {});
    return relabel(dual_of(z, level, {}, opts.groebner).ideal, I.ring());
  };

  t0 = std::chrono::steady_clock::now();
  if (z.is_zero()) warnings.push_back("the dual variety fills the space; no second dual");
  Ideal second = second_at(opts.h2);
  const double second_ms = ms_since(t0);
  const bool equal = !z.is_zero() && ideal_equal(second, Ideal(I.ring(), fs));

  std::optional<bool> symmetric;
  if (opts.symmetric_check) {
    if (opts.h == opts.h2) {
      symmetric = equal;
    } else {
      symmetric = !z.is_zero() && ideal_equal(second_at(opts.h), Ideal(I.ring(), fs));
    }
  }
  return ReflexivityReport{Ideal(I.ring(), fs), opts.h,    std::move(dual), opts.h2, std::move(second), equal,
                           symmetric,           warnings,  dual_ms,         second_ms};
}

}  // namespace hdual
