#include <doctest.h>

#include <random>

#include "hdual/forms.hpp"
#include "hdual/hasse.hpp"
#include "hdual/poly_io.hpp"
#include "random_poly.hpp"

using namespace hdual;

namespace {

Polynomial P(const RingPtr& r, const char* s) { return parse_polynomial(r, s); }

std::vector<Elem> random_vec(const Field& k, std::size_t n, std::mt19937_64& rng) {
  std::vector<Elem> v(n);
  for (auto& e : v) e = rng() % k.order();
  return v;
}

std::vector<Elem> unit(std::size_t n, std::size_t i) {
  std::vector<Elem> v(n, 0);
  v[i] = 1;
  return v;
}

DifferentialForm random_form(const RingPtr& r, std::mt19937_64& rng, std::size_t degree) {
  DifferentialForm w(r);
  for (int t = 0; t < 3; ++t) {
    DifferentialForm::Key key;
    for (std::size_t s = 0; s < degree; ++s) {
      key.push_back(Symbol{static_cast<std::uint32_t>(rng() % r->nvars()), static_cast<std::uint32_t>(rng() % 2)});
    }
    w.add(key, test::random_poly(r, rng, 2, 3));
  }
  return w;
}

Ideal hermitian(std::uint64_t p, unsigned h) {
  auto r = Ring::make(Field::make(p), Ring::indexed_names("x", 3));
  const auto q = static_cast<Exponent>(checked_pow(p, h));
  Polynomial f(r);
  for (std::size_t i = 0; i < 3; ++i) f += Polynomial::variable(r, i, q + 1);
  return Ideal(r, {f});
}

void require_complete_certificate(const LagrangianCertificate& cert, bool nontrivial = true) {
  REQUIRE(cert.vanishes);
  REQUIRE(cert.omega.is_zero());
  if (nontrivial) REQUIRE_FALSE(cert.pairs.empty());
  for (const auto& pr : cert.pairs) REQUIRE(pr.first == pr.second);
}

}  // namespace

TEST_CASE("p^h-linear forms") {
  auto f3 = Field::make(3);
  PhLinearForm phi{f3, {1, 2}, 1};
  CHECK(phi({1, 1}) == 0);
  CHECK(PhLinearForm{f3, {1, 0, 0}, 1}(unit(3, 1)) == 0);
  CHECK_THROWS(phi({1, 1, 1}));

  std::mt19937_64 rng(89);
  auto k = Field::parse("3^2");
  for (int it = 0; it < 300; ++it) {
    PhLinearForm g{k, random_vec(*k, 3, rng), 1};
    auto v = random_vec(*k, 3, rng), w = random_vec(*k, 3, rng);
    const Elem lam = rng() % k->order();
    std::vector<Elem> lv(3), vw(3);
    for (std::size_t i = 0; i < 3; ++i) {
      lv[i] = k->mul(lam, v[i]);
      vw[i] = k->add(v[i], w[i]);
    }
    REQUIRE(g(lv) == k->mul(k->frobenius(lam, 1), g(v)));
    REQUIRE(g(vw) == k->add(g(v), g(w)));
  }
}

TEST_CASE("double dual over prime fields is evaluation") {
  std::mt19937_64 rng(97);
  auto k = Field::make(5);
  for (int it = 0; it < 100; ++it) {
    PhLinearForm phi{k, random_vec(*k, 4, rng), static_cast<unsigned>(rng() % 3)};
    auto v = random_vec(*k, 4, rng);
    REQUIRE(double_dual(v, phi) == phi(v));
  }
}

TEST_CASE("double dual is linear in v and semilinear in the form") {
  std::mt19937_64 rng(101);
  auto k = Field::parse("3^2");
  for (std::size_t n = 1; n <= 5; ++n) {
    for (int it = 0; it < 100; ++it) {
      PhLinearForm phi{k, random_vec(*k, n, rng), 1};
      auto v1 = random_vec(*k, n, rng), v2 = random_vec(*k, n, rng);
      const Elem l1 = rng() % k->order(), l2 = rng() % k->order();
      std::vector<Elem> mix(n);
      for (std::size_t i = 0; i < n; ++i) mix[i] = k->add(k->mul(l1, v1[i]), k->mul(l2, v2[i]));
      REQUIRE(double_dual(mix, phi) ==
              k->add(k->mul(l1, double_dual(v1, phi)), k->mul(l2, double_dual(v2, phi))));
      REQUIRE(double_dual(v1, phi.scaled(l1)) == k->mul(k->frobenius(l1, 1), double_dual(v1, phi)));
    }
  }
}

TEST_CASE("double dual reproduces the coordinate pairing on a basis") {
  for (auto spec : {"3^2", "2^2"}) {
    auto k = Field::parse(spec);
    for (std::size_t n = 1; n <= 5; ++n) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          REQUIRE(double_dual(unit(n, i), PhLinearForm{k, unit(n, j), 1}) == (i == j ? 1u : 0u));
        }
      }
    }
  }
}

TEST_CASE("q-symplectic basis table and additivity") {
  auto k = Field::parse("3^2");
  const Elem minus_one = k->neg(1);
  for (std::size_t n = 1; n <= 5; ++n) {
    auto e = [&](std::size_t i) { return unit(2 * n, i); };
    auto f = [&](std::size_t i) { return unit(2 * n, n + i); };
    for (unsigned h : {0u, 1u, 2u}) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          REQUIRE(omega(*k, e(i), f(j), h) == (i == j ? 1u : 0u));
          REQUIRE(omega(*k, f(i), e(j), h) == (i == j ? minus_one : 0u));
          REQUIRE(omega(*k, e(i), e(j), h) == 0);
          REQUIRE(omega(*k, f(i), f(j), h) == 0);
        }
      }
    }
  }
  auto f3 = Field::make(3);
  CHECK(omega(*f3, {0, 1, 0, 0, 1, 0}, {0, 1, 0, 0, 1, 0}, 1) == 0);
  CHECK_THROWS(omega(*f3, {1, 0}, {1, 0, 0}, 1));

  std::mt19937_64 rng(103);
  for (int it = 0; it < 300; ++it) {
    auto u = random_vec(*k, 6, rng), v = random_vec(*k, 6, rng), w = random_vec(*k, 6, rng);
    std::vector<Elem> uv(6);
    for (std::size_t i = 0; i < 6; ++i) uv[i] = k->add(u[i], v[i]);
    REQUIRE(omega(*k, uv, w, 1) == k->add(omega(*k, u, w, 1), omega(*k, v, w, 1)));
    REQUIRE(omega(*k, w, uv, 1) == k->add(omega(*k, w, u, 1), omega(*k, w, v, 1)));
  }
}

TEST_CASE("differential examples") {
  auto r = Ring::make(Field::make(3), Ring::indexed_names("x", 2));
  auto dx0 = DifferentialForm::symbol(r, 0, 0), dx1 = DifferentialForm::symbol(r, 1, 0);
  CHECK(d_h(DifferentialForm::function(P(r, "x0*x1")), 0) == dx0 * P(r, "x1") + dx1 * P(r, "x0"));
  CHECK(d_h(DifferentialForm::function(P(r, "x0^3")), 1) == DifferentialForm::symbol(r, 0, 1));
  CHECK(d_h(DifferentialForm::function(P(r, "x0^9")), 2) == DifferentialForm::symbol(r, 0, 2));
  CHECK((wedge(dx0, dx1) + wedge(dx1, dx0)).is_zero());
  CHECK(wedge(dx0, dx0).is_zero());
  CHECK(wedge(DifferentialForm::symbol(r, 0, 1), dx0).to_string() == "2 dx0^d1x0");
  CHECK(DifferentialForm::function(P(r, "x0 + 1")).to_string() == "x0 + 1");
  CHECK_THROWS(DifferentialForm::symbol(r, 2, 0));

  // d^{(1)} d^{(0)} x^{p+1} = d^{(1)}x ∧ dx, so mixed levels do not compose to zero
  auto mixed = d_h(d_h(DifferentialForm::function(P(r, "x0^4")), 0), 1);
  CHECK(mixed == wedge(DifferentialForm::symbol(r, 0, 1), dx0));
  CHECK_FALSE(mixed.is_zero());
}

TEST_CASE("alternation and graded commutativity") {
  std::mt19937_64 rng(107);
  for (std::uint64_t p : {3, 5}) {
    auto r = Ring::make(Field::make(p), Ring::indexed_names("x", 3));
    for (int it = 0; it < 100; ++it) {
      const std::size_t a = 1 + rng() % 3, b = 1 + rng() % 3;
      auto w = random_form(r, rng, a), t = random_form(r, rng, b);
      if (a % 2 == 1) REQUIRE(wedge(w, w).is_zero());
      auto swapped = wedge(t, w);
      REQUIRE(wedge(w, t) == ((a * b) % 2 == 0 ? swapped : -swapped));
      REQUIRE(wedge(wedge(w, t), w) == wedge(w, wedge(t, w)));
    }
  }
}

TEST_CASE("d^(h) squares to zero and distinct levels anticommute") {
  std::mt19937_64 rng(109);
  for (std::uint64_t p : {2, 3, 5}) {
    auto r = Ring::make(Field::make(p), Ring::indexed_names("x", 3));
    for (int it = 0; it < 100; ++it) {
      auto f = DifferentialForm::function(test::random_poly(r, rng, 5, static_cast<Exponent>(p * p * 2)));
      for (unsigned h = 0; h <= 2; ++h) {
        REQUIRE(d_h(d_h(f, h), h).is_zero());
        for (unsigned h2 = 0; h2 <= 2; ++h2) REQUIRE(d_h(d_h(f, h), h2) == -d_h(d_h(f, h2), h));
      }
    }
  }
}

TEST_CASE("contraction") {
  auto k = Field::parse("3^2");
  auto r = Ring::make(k, Ring::indexed_names("x", 3));
  const auto one = Polynomial::constant(r, 1);
  auto d1x1 = DifferentialForm::symbol(r, 1, 1);
  CHECK(contract({{Symbol{1, 1}, one}}, d1x1) == DifferentialForm::function(one));
  const Elem t = k->generator();
  CHECK(contract({{Symbol{1, 1}, Polynomial::constant(r, t)}}, d1x1) ==
        DifferentialForm::function(Polynomial::constant(r, k->frobenius(t, 1))));
  CHECK(contract({{Symbol{1, 1}, one}}, DifferentialForm::symbol(r, 1, 0)).is_zero());
  CHECK(contract({{Symbol{1, 1}, one}}, DifferentialForm::function(P(r, "x0"))).is_zero());

  std::mt19937_64 rng(113);
  auto r5 = Ring::make(Field::make(5), Ring::indexed_names("x", 3));
  for (int it = 0; it < 100; ++it) {
    VectorField X;
    for (int s = 0; s < 3; ++s) {
      X.insert_or_assign(Symbol{static_cast<std::uint32_t>(rng() % 3), static_cast<std::uint32_t>(rng() % 2)},
                         test::random_poly(r5, rng, 2, 2));
    }
    const std::size_t a = 1 + rng() % 2;
    auto w = random_form(r5, rng, a), t = random_form(r5, rng, 1 + rng() % 2);
    auto lhs = contract(X, wedge(w, t));
    auto second = wedge(w, contract(X, t));
    auto rhs = wedge(contract(X, w), t) + (a % 2 == 0 ? second : -second);
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("conormal ideals are Lagrangian") {
  for (auto [p, h] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 1}, {5, 1}, {2, 2}}) {
    auto C = conormal_ideal(hermitian(p, h), {h}, false);
    require_complete_certificate(lagrangian_check(C, h));
  }

  auto r3 = Ring::make(Field::make(3), Ring::indexed_names("x", 3));
  Ideal f7(r3, {P(r3, "x0^7+x1^7+x2^7")});
  require_complete_certificate(lagrangian_check(conormal_ideal(f7, {1}, false), 1));
  require_complete_certificate(lagrangian_check(conormal_ideal(f7, {0, 1}, false), 1));

  // generalized Fermat curve in P^3: k = q + 1 = 4, λ̄ = (2)
  auto r4 = Ring::make(Field::make(3), Ring::indexed_names("x", 4));
  Ideal gf(r4, {P(r4, "x0^4 + x1^4 + x2^4"), P(r4, "2*x0^4 + x1^4 + x3^4")});
  auto C = conormal_ideal(gf, {1}, true);
  CHECK(cone_check(C));
  require_complete_certificate(lagrangian_check(C, 1));
}

TEST_CASE("a corrupted sign breaks the Lagrangian condition") {
  auto C = conormal_ideal(hermitian(3, 1), {1}, false);
  auto cert = lagrangian_check(C, 1, 0);
  CHECK_FALSE(cert.vanishes);
  CHECK(cert.omega.to_string() == "2 dx0^d1x0");

  auto r3 = Ring::make(Field::make(3), Ring::indexed_names("x", 3));
  auto C7 = conormal_ideal(Ideal(r3, {P(r3, "x0^7+x1^7+x2^7")}), {0, 1}, false);
  CHECK_FALSE(lagrangian_check(C7, 1, 2).vanishes);
  CHECK_THROWS_AS(lagrangian_check(conormal_ideal(hermitian(3, 1), {1}, false), 0), ConfigurationError);
}

TEST_CASE("Lagrangian property on random conormal ideals") {
  std::mt19937_64 rng(127);
  for (std::uint64_t p : {3, 5}) {
    auto r = Ring::make(Field::make(p), Ring::indexed_names("x", 3));
    for (int it = 0; it < 20; ++it) {
      std::vector<Polynomial> gens;
      for (int g = 0; g < 2; ++g) {
        Polynomial f(r);
        while (f.is_zero()) f = test::random_homogeneous(r, rng, 3, static_cast<unsigned>(p + 1));
        gens.push_back(f);
      }
      const unsigned h = static_cast<unsigned>(rng() % 2);
      require_complete_certificate(lagrangian_check(conormal_ideal(Ideal(r, gens), {h}, true), h), false);
    }
  }
}

TEST_CASE("cone condition") {
  auto C = conormal_ideal(hermitian(3, 1), {1}, false);
  CHECK(cone_check(C));
  auto gens = C.generators();
  gens.push_back(P(C.ring(), "y0^2 + x0"));
  CHECK_FALSE(cone_check(gens, {}, C.all_xi(), false));

  auto r = Ring::make(Field::make(3), Ring::indexed_names("x", 3));
  auto L = conormal_ideal(Ideal(r, {P(r, "x0^2 + x1*x2"), P(r, "x0 + x1")}), {0}, true);
  CHECK(cone_check(L));
}
