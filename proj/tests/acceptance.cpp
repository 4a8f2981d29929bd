#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>

#include "reference_data.hpp"
#include "hdual/duality.hpp"
#include "hdual/forms.hpp"
#include "hdual/ghost.hpp"
#include "hdual/hasse.hpp"
#include "hdual/poly_io.hpp"
#include "random_poly.hpp"

using namespace hdual;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Records the first failing check with a short reason.
struct Checker {
  Outcome out;
  long cases = 0;
  void check(bool cond, const std::string& what) {
    ++cases;
    if (!cond && out.ok) {
      out.ok = false;
      out.detail = "failed: " + what;
    }
  }
};

Polynomial P(const RingPtr& r, const std::string& s) { return parse_polynomial(r, s); }

std::vector<Polynomial> in_ring(const RingPtr& target, const char* text) {
  auto src = Ring::make(target->field(), Ring::indexed_names("y_", target->nvars()));
  return relabel(Ideal(src, parse_polynomial_list(src, text)), target).generators();
}

Polynomial power_sum(const RingPtr& r, Exponent e) {
  Polynomial f(r);
  for (std::size_t i = 0; i < r->nvars(); ++i) f += Polynomial::variable(r, i, e);
  return f;
}

Ideal fermat7() {
  auto r = Ring::make(Field::make(3), Ring::indexed_names("x", 3));
  return Ideal(r, {power_sum(r, 7)});
}

Ideal hermitian(std::uint64_t p, unsigned h) {
  auto r = Ring::make(Field::make(p), Ring::indexed_names("x", 3));
  return Ideal(r, {power_sum(r, static_cast<Exponent>(checked_pow(p, h) + 1))});
}

std::vector<FieldPtr> hasse_fields() { return {Field::make(3), Field::make(5), Field::parse("3^2")}; }

std::vector<Elem> unit(std::size_t n, std::size_t i) {
  std::vector<Elem> v(n, 0);
  v[i] = 1;
  return v;
}

// Calls fn on every vector of k^n.
void for_each_vector(const Field& k, std::size_t n, const std::function<void(const std::vector<Elem>&)>& fn) {
  std::vector<Elem> v(n, 0);
  for (;;) {
    fn(v);
    std::size_t i = 0;
    while (i < n && ++v[i] == k.order()) v[i++] = 0;
    if (i == n) return;
  }
}

// Random polynomial of total degree at most d.
Polynomial random_low_degree(const RingPtr& r, std::mt19937_64& rng, int terms, unsigned d) {
  std::vector<std::pair<Monomial, Elem>> ts;
  std::uniform_int_distribution<std::size_t> var(0, r->nvars() - 1);
  for (int t = 0; t < terms; ++t) {
    Monomial m = Monomial::one(r->nvars());
    for (unsigned s = rng() % (d + 1); s > 0; --s) ++m.exps[var(rng)];
    ts.emplace_back(std::move(m), test::random_elem(r->k(), rng, true));
  }
  return Polynomial::from_terms(r, std::move(ts));
}

void certificate(Checker& c, const LagrangianCertificate& cert, const std::string& name) {
  c.check(cert.vanishes && cert.omega.is_zero(), name + " omega vanishes");
  c.check(!cert.pairs.empty(), name + " certificate is nonempty");
  for (const auto& pr : cert.pairs) c.check(pr.first == pr.second, name + " pair cancels");
}

// ---------------------------------------------------------------- criteria

Outcome fermat7_first_dual() {
  Checker c;
  auto D = dual_ideal(conormal_ideal(fermat7(), {0, 1}, false), 1);
  c.check(D.intermediate.has_value(), "intermediate ideal present");
  if (!D.intermediate) return c.out;
  const RingPtr& jr = D.intermediate->ring();
  const Ideal listed(jr, in_ring(jr, test::kFermat7Intermediate));
  c.check(listed.generators().size() == 9, "nine reference generators");
  for (const auto& g : listed.generators()) c.check(D.intermediate->contains(g), "member " + g.to_string());
  c.check(ideal_equal(listed, *D.intermediate), "reference generators generate the intermediate ideal");
  c.check(D.ideal.generators().size() == 1, "single dual generator");
  if (D.ideal.generators().size() == 1) {
    auto expected = in_ring(Ring::make(Field::make(3), Ring::indexed_names("y_", 6)), test::kFermat7Dual)[0];
    const std::vector<std::size_t> block{3, 4, 5};
    c.check(D.ideal.generators()[0].map_to(expected.ring(), block) == expected, "degree 28 dual, exactly");
  }
  if (c.out.ok) c.out.detail = "9 listed generators are members and generate the intermediate ideal; dual exact";
  return c.out;
}

Outcome fermat7_bidual() {
  Checker c;
  ReflexiveOptions ro;
  ro.h = 1;
  ro.h2 = 0;
  ro.first_levels = {0, 1};
  auto rep = check_reflexive(fermat7(), ro);
  c.check(rep.equal, "verdict equal");
  c.check(rep.second_dual.generators().size() == 1, "single generator");
  const auto expected = in_ring(rep.second_dual.ring(), test::kFermat7Bidual)[0];
  c.check(rep.second_dual.generators() == std::vector<Polynomial>{expected}, "second dual is x0^7 + x1^7 + x2^7");
  if (c.out.ok) c.out.detail = "second dual <x0^7 + x1^7 + x2^7>, verdict equal";
  return c.out;
}

Outcome quintic_101() {
  Checker c;
  auto r = Ring::make(Field::make(101), Ring::indexed_names("x", 3));
  Ideal I(r, {power_sum(r, 5)});
  auto D = dual_of(I, 0);
  c.check(D.ideal.generators().size() == 1, "single dual generator");
  if (D.ideal.generators().size() == 1) {
    const auto& z = D.ideal.generators()[0];
    c.check(z == in_ring(D.ideal.ring(), test::kFermat5Dual)[0], "dual equals the reduced integer dual");
    c.check(z.total_degree() == 20, "degree 20");
  }
  auto rep = check_reflexive(I, {});
  c.check(rep.equal && rep.second_dual.generators() == I.generators(), "eliminating back recovers the quintic");
  if (c.out.ok) c.out.detail = "degree 20 dual matches coefficients 1, -4, 6, -124 mod 101; quintic recovered";
  return c.out;
}

Outcome fermat7_classical() {
  Checker c;
  ReflexiveOptions ro;
  ro.h = 0;
  ro.h2 = 0;
  auto rep = check_reflexive(fermat7(), ro);
  c.check(!rep.equal, "verdict not-equal");
  if (c.out.ok) c.out.detail = "h = h2 = 0 gives not-equal";
  return c.out;
}

Outcome hermitian_self_dual() {
  Checker c;
  for (auto [p, h] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 1}, {5, 1}, {2, 2}}) {
    const auto tag = "(p,h)=(" + std::to_string(p) + "," + std::to_string(h) + ")";
    auto I = hermitian(p, h);
    auto D = dual_of(I, h);
    const auto q1 = static_cast<Exponent>(checked_pow(p, h) + 1);
    c.check(D.ideal.generators() == std::vector<Polynomial>{power_sum(D.ideal.ring(), q1)}, tag + " dual is the sum");
    auto Q = quadratic_form_dual(I.ring()->field(), matrix_identity(3), checked_pow(p, h));
    c.check(Q.substitution_identity, tag + " substitution identity");
    c.check(ideal_equal(D.ideal, relabel(Ideal(Q.dual.ring(), {Q.dual}), D.ideal.ring())), tag + " closed form agrees");
  }
  if (c.out.ok) c.out.detail = "(3,1), (5,1), (2,2): dual is sum of y_i^(q+1), closed form agrees";
  return c.out;
}

Outcome hasse_axioms() {
  Checker c;
  std::mt19937_64 rng(1001);
  for (const auto& k : hasse_fields()) {
    const std::uint64_t p = k->characteristic();
    auto r = Ring::make(k, Ring::indexed_names("x", 3));
    auto r1 = Ring::make(k, Ring::indexed_names("x", 1));
    for (int it = 0; it < 80; ++it) {
      auto f = test::random_poly(r, rng, 4, 9);
      auto g = test::random_poly(r, rng, 4, 9);
      const std::size_t i = rng() % 3, j = rng() % 3;
      const std::uint64_t n = rng() % 13, m = rng() % 13;

      Polynomial rhs(r);
      for (std::uint64_t a = 0; a <= n; ++a) rhs += hasse_derive(f, i, a) * hasse_derive(g, i, n - a);
      c.check(hasse_derive(f * g, i, n) == rhs, "Leibniz");

      const Elem binom = k->from_int(static_cast<std::int64_t>(lucas_binomial(n + m, n, p)));
      c.check(hasse_derive(hasse_derive(f, i, m), i, n) == hasse_derive(f, i, n + m).scale(binom), "composition");

      const unsigned h = static_cast<unsigned>(1 + rng() % 2);
      c.check(hasse_h(hasse_h(f, j, h), i, 0) == hasse_h(hasse_h(f, i, 0), j, h), "commutation");

      for (unsigned mu = 0; mu < 3; ++mu) {
        const std::uint64_t pm = checked_pow(p, mu);
        if (!hasse_derive(f, i, pm).is_zero()) continue;
        bool ladder = true;
        for (std::uint64_t e = pm; e < pm * p; ++e) ladder = ladder && hasse_derive(f, i, e).is_zero();
        c.check(ladder, "vanishing ladder");
      }

      auto u = test::random_poly(r1, rng, 5, 20);
      const std::uint64_t q = rng() % 2 ? p : p * p;
      c.check(frob_rep_check(u, 0, q, rng() % (3 * q)), "derivative of f(x^q)");
    }
  }
  c.check(c.cases >= 1000, "at least 1000 cases");
  if (c.out.ok) c.out.detail = std::to_string(c.cases) + " cases over GF(3), GF(5), GF(9)";
  return c.out;
}

Outcome ghost_compat() {
  Checker c;
  std::mt19937_64 rng(1002);
  for (std::uint64_t p : {2, 3, 5}) {
    auto base = Ring::make(Field::make(p), Ring::indexed_names("x", 2));
    for (unsigned levels = 1; levels <= 3; ++levels) {
      auto g = GhostRing::make(base, levels);
      for (int it = 0; it < 60; ++it) {
        auto ft = test::random_poly(g.ring, rng, 4, static_cast<Exponent>(p - 1));
        const std::size_t i = rng() % 2;
        const unsigned j = static_cast<unsigned>(rng() % (levels + 1));
        c.check(ghost_project(hasse_derive(ft, g.index(i, j), 1), g) == hasse_h(ghost_project(ft, g), i, j),
                "projection intertwines d/dx^(j) with D^(j)");
        c.check(ghost_project(ghost_lift(ghost_project(ft, g), g), g) == ghost_project(ft, g), "lift then project");
      }
    }
  }
  c.check(c.cases >= 1000, "at least 500 lifted polynomials");
  if (c.out.ok) c.out.detail = std::to_string(c.cases / 2) + " lifted polynomials, p in {2,3,5}, N <= 3";
  return c.out;
}

Outcome h_euler() {
  Checker c;
  std::mt19937_64 rng(1003);
  for (auto [p, h] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 1}, {5, 1}, {3, 2}}) {
    auto r = Ring::make(Field::make(p), Ring::indexed_names("x", 3));
    const std::uint64_t q = checked_pow(p, h);
    for (int it = 0; it < 200; ++it) {
      const unsigned deg = static_cast<unsigned>(rng() % 7);
      Polynomial f(r);
      while (f.is_zero()) {
        auto a = test::random_homogeneous(r, rng, 3, deg);
        for (std::size_t t = 0; t < a.size(); ++t) {
          Monomial m = a.monomial_at(t);
          for (auto& e : m.exps) e *= static_cast<Exponent>(q);
          Monomial extra = test::random_monomial(3, rng, static_cast<Exponent>(q - 1));
          f += Polynomial::term(r, m * extra, a.coeff_at(t));
        }
      }
      c.check(is_h_homogeneous(f, h) == deg, "h-degree");
      Polynomial lhs(r);
      for (std::size_t i = 0; i < 3; ++i) lhs += Polynomial::variable(r, i, static_cast<Exponent>(q)) * hasse_h(f, i, h);
      c.check(lhs == f.scale(r->k().from_int(deg % p)), "Euler identity");
    }
  }
  if (c.out.ok) c.out.detail = "200 h-homogeneous polynomials for each (p,h) in {(3,1),(5,1),(3,2)}";
  return c.out;
}

Outcome semilinear_layer() {
  Checker c;
  std::mt19937_64 rng(1004);
  auto k = Field::parse("3^2");
  const auto scalars = k->elements();
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<PhLinearForm> forms;
    for (std::size_t j = 0; j < n; ++j) forms.push_back(PhLinearForm{k, unit(n, j), 1});
    for (int t = 0; t < 2; ++t) {
      std::vector<Elem> a(n);
      for (auto& e : a) e = rng() % k->order();
      forms.push_back(PhLinearForm{k, a, 1});
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        c.check(double_dual(unit(n, i), forms[j]) == (i == j ? 1u : 0u), "coordinate pairing");
      }
    }
    for_each_vector(*k, n, [&](const std::vector<Elem>& v) {
      std::vector<Elem> w(n);
      for (auto& e : w) e = rng() % k->order();
      std::vector<Elem> vw(n);
      for (std::size_t i = 0; i < n; ++i) vw[i] = k->add(v[i], w[i]);
      for (const auto& phi : forms) {
        const Elem base = double_dual(v, phi);
        c.check(double_dual(vw, phi) == k->add(base, double_dual(w, phi)), "additive in v");
        for (Elem l : scalars) {
          std::vector<Elem> lv(n);
          for (std::size_t i = 0; i < n; ++i) lv[i] = k->mul(l, v[i]);
          c.check(double_dual(lv, phi) == k->mul(l, base), "linear in v");
          c.check(double_dual(v, phi.scaled(l)) == k->mul(k->frobenius(l, 1), base), "semilinear in the form");
        }
      }
    });
    for (unsigned h : {0u, 1u, 2u}) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const auto ei = unit(2 * n, i), ej = unit(2 * n, j), fi = unit(2 * n, n + i), fj = unit(2 * n, n + j);
          c.check(omega(*k, ei, fj, h) == (i == j ? 1u : 0u), "Omega(e_i, f_j)");
          c.check(omega(*k, fi, ej, h) == (i == j ? k->neg(1) : 0u), "Omega(f_i, e_j)");
          c.check(omega(*k, ei, ej, h) == 0, "Omega(e_i, e_j)");
          c.check(omega(*k, fi, fj, h) == 0, "Omega(f_i, f_j)");
        }
      }
    }
  }
  // additivity of Omega in both slots over all triples in GF(9)^2
  for_each_vector(*k, 2, [&](const std::vector<Elem>& u) {
    for_each_vector(*k, 2, [&](const std::vector<Elem>& v) {
      for_each_vector(*k, 2, [&](const std::vector<Elem>& w) {
        const std::vector<Elem> uv{k->add(u[0], v[0]), k->add(u[1], v[1])};
        c.check(omega(*k, uv, w, 1) == k->add(omega(*k, u, w, 1), omega(*k, v, w, 1)), "Omega additive left");
        c.check(omega(*k, w, uv, 1) == k->add(omega(*k, w, u, 1), omega(*k, w, v, 1)), "Omega additive right");
      });
    });
  });
  if (c.out.ok) c.out.detail = std::to_string(c.cases) + " checks, all vectors and scalars of GF(9)^n, n <= 4";
  return c.out;
}

Outcome lagrangian() {
  Checker c;
  certificate(c, lagrangian_check(conormal_ideal(hermitian(3, 1), {1}, false), 1), "Hermitian GF(3)");
  certificate(c, lagrangian_check(conormal_ideal(hermitian(5, 1), {1}, false), 1), "Hermitian GF(5)");
  certificate(c, lagrangian_check(conormal_ideal(fermat7(), {0, 1}, false), 1), "Fermat septic");

  auto r4 = Ring::make(Field::make(3), Ring::indexed_names("x", 4));
  Ideal gf(r4, {P(r4, "x0^4 + x1^4 + x2^4"), P(r4, "2*x0^4 + x1^4 + x3^4")});
  auto C = conormal_ideal(gf, {1}, true);
  c.check(cone_check(C), "generalized Fermat cone condition");
  certificate(c, lagrangian_check(C, 1), "generalized Fermat");

  auto bad = lagrangian_check(conormal_ideal(hermitian(3, 1), {1}, false), 1, 0);
  c.check(!bad.vanishes && !bad.omega.is_zero(), "corrupted sign fails");
  if (c.out.ok) {
    c.out.detail = "Hermitian, Fermat septic, generalized Fermat in P^3 certified; corrupted control gives " +
                   bad.omega.to_string();
  }
  return c.out;
}

Outcome elimination_oracle() {
  Checker c;
  std::mt19937_64 rng(1005);
  int ideals = 0;
  for (std::uint64_t p : {3, 5}) {
    auto k = Field::make(p);
    for (std::size_t n : {2, 3, 4}) {
      auto r = Ring::make(k, Ring::indexed_names("x", n));
      for (int it = 0; it < 20; ++it) {
        // every generator vanishes at a random point so V(I) is never empty
        std::vector<Elem> root(n);
        for (auto& e : root) e = rng() % p;
        std::vector<Polynomial> gens;
        for (int g = 1 + static_cast<int>(rng() % 3); g > 0; --g) {
          auto f = random_low_degree(r, rng, 3, 3);
          gens.push_back(f - Polynomial::constant(r, f.evaluate(root)));
        }
        Ideal I(r, gens);
        int on_points = 0;
        const std::size_t drop = 1 + rng() % (n - 1);
        std::vector<std::size_t> keep;
        for (std::size_t v = drop; v < n; ++v) keep.push_back(v);
        auto E = elimination_ideal(I, keep);
        for (const auto& e : E.generators()) c.check(I.contains(e.map_to(r, keep)), "eliminant is a member of I");
        for_each_vector(*k, n, [&](const std::vector<Elem>& pt) {
          if (!std::all_of(gens.begin(), gens.end(), [&](const Polynomial& g) { return g.evaluate(pt) == 0; })) return;
          ++on_points;
          const std::vector<Elem> proj(pt.begin() + static_cast<std::ptrdiff_t>(drop), pt.end());
          for (const auto& e : E.generators()) c.check(e.evaluate(proj) == 0, "projection lies on the eliminant");
        });
        c.check(on_points > 0, "V(I) has a rational point");
        c.check(!I.contains(Polynomial::constant(r, 1)), "proper ideal");
        ++ideals;
      }
    }
  }
  c.check(ideals >= 100, "at least 100 ideals");
  if (c.out.ok) c.out.detail = std::to_string(ideals) + " ideals, " + std::to_string(c.cases) + " checks";
  return c.out;
}

}  // namespace

int main(int argc, char** argv) {
  // optional argument: run a single criterion
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0: no runtime bound
    Outcome (*run)();
  };
  const std::vector<Criterion> criteria{
      {1, "Fermat septic intermediate ideal and level-1 dual over GF(3)", 300, fermat7_first_dual},
      {2, "Fermat septic bidual with h2 = 0", 600, fermat7_bidual},
      {3, "Fermat quintic over GF(101)", 120, quintic_101},
      {4, "classical reflexivity fails for the Fermat septic", 300, fermat7_classical},
      {5, "Hermitian self-duality", 180, hermitian_self_dual},
      {6, "Hasse derivative axioms", 0, hasse_axioms},
      {7, "ghost compatibility", 0, ghost_compat},
      {8, "h-Euler identity", 0, h_euler},
      {9, "semilinear layer", 0, semilinear_layer},
      {10, "Lagrangian check", 120, lagrangian},
      {11, "elimination oracle", 0, elimination_oracle},
  };
  int failures = 0, ran = 0;
  for (const auto& cr : criteria) {
    if (only && cr.id != only) continue;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && cr.limit_s > 0 && s > cr.limit_s) {
      o = {false, "runtime " + std::to_string(s) + " s over the " + std::to_string(cr.limit_s) + " s bound"};
    }
    if (!o.ok) ++failures;
    std::printf("%s criterion %d: %s (%.2f s) - %s\n", o.ok ? "PASS" : "FAIL", cr.id, cr.name, s, o.detail.c_str());
  }
  if (ran == 0) {
    std::printf("no criterion %d\n", only);
    return 2;
  }
  std::printf("%d/%d criteria passed\n", ran - failures, ran);
  return failures == 0 ? 0 : 1;
}
