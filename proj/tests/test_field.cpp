#include <doctest.h>

#include <random>

#include "hdual/field.hpp"

using namespace hdual;

namespace {

// Schoolbook product of packed elements reduced by the modulus, written
// independently of the library's table and polynomial paths.
Elem slow_mul(const Field& k, Elem a, Elem b) {
  const std::uint64_t p = k.characteristic();
  const unsigned n = k.degree();
  std::vector<std::uint64_t> ca = k.coeffs(a), cb = k.coeffs(b), prod(2 * n, 0);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
  }
  const auto& m = k.modulus();
  for (unsigned d = 2 * n - 1; d >= n; --d) {
    const std::uint64_t c = prod[d];
    if (c == 0) continue;
    for (unsigned i = 0; i <= n; ++i) {
      prod[d - n + i] = (prod[d - n + i] + (p - c) * m[i]) % p;
    }
  }
  prod.resize(n);
  return k.from_coeffs(prod);
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  auto f3 = Field::make(3);
  CHECK(f3->add(2, 2) == 1);
  CHECK(f3->add(1, 0) == 1);
  CHECK(f3->inv(2) == 2);
  CHECK(f3->frobenius(2, 1) == 2);
  CHECK(f3->from_int(-1) == 2);
  auto f5 = Field::make(5);
  CHECK(f5->inv(3) == 2);
  CHECK_THROWS_AS(f5->inv(0), DivisionByZeroError);
}

TEST_CASE("GF(4) with the default modulus t^2+t+1") {
  auto k = Field::parse("2^2");
  CHECK(k->modulus() == std::vector<std::uint64_t>{1, 1, 1});
  const Elem t = k->generator();
  const Elem t1 = k->add(t, 1);
  CHECK(k->add(t, t1) == 1);
  CHECK(k->mul(t, t1) == 1);
  CHECK(k->frobenius(t, 1) == t1);
  CHECK(k->frobenius(t, -1) == t1);
  CHECK(k->format(t1) == "t+1");
}

TEST_CASE("default moduli are the smallest irreducibles") {
  CHECK(Field::make(3, 2)->modulus() == std::vector<std::uint64_t>{1, 0, 1});
  CHECK(Field::make(2, 3)->modulus() == std::vector<std::uint64_t>{1, 1, 0, 1});
  CHECK(Field::make(5, 2)->modulus() == std::vector<std::uint64_t>{2, 0, 1});
}

TEST_CASE("spec parsing and validation") {
  CHECK(Field::parse("101")->order() == 101);
  CHECK(Field::parse("3^4")->order() == 81);
  CHECK(Field::parse("3^2", "2,2,1")->modulus() == std::vector<std::uint64_t>{2, 2, 1});
  CHECK_THROWS(Field::parse("4"));
  CHECK_THROWS(Field::parse("3^0"));
  CHECK_THROWS(Field::parse("x"));
  CHECK_THROWS(Field::parse("3^2", "1,0,0"));  // t^2 is reducible
  CHECK_THROWS(Field::parse("3^2", "2,1"));
  CHECK_THROWS(Field::make(2147483659ULL));
  CHECK(Field::make(2147483647ULL)->mul(2147483646ULL, 2147483646ULL) == 1);
}

TEST_CASE("mixing fields is rejected") {
  auto a = FieldElement::from_int(Field::make(3), 1);
  auto b = FieldElement::from_int(Field::make(5), 1);
  CHECK_THROWS_AS(a + b, SpecMismatchError);
  CHECK_THROWS_AS(a * b, SpecMismatchError);
}

TEST_CASE("exhaustive inverses for every field of order at most 81") {
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79}) {
    for (unsigned k = 1; ; ++k) {
      std::uint64_t order = 1;
      for (unsigned i = 0; i < k; ++i) order *= p;
      if (order > 81) break;
      auto f = Field::make(p, k);
      for (Elem a = 1; a < f->order(); ++a) {
        REQUIRE(f->mul(f->inv(a), a) == 1);
      }
    }
  }
}

TEST_CASE("table and polynomial multiplication agree with a schoolbook oracle") {
  std::mt19937_64 rng(7);
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 2}, {2, 5}, {3, 4}, {5, 3}, {2, 21}, {7, 8}}) {
    auto f = Field::make(p, k);
    std::uniform_int_distribution<Elem> d(0, f->order() - 1);
    for (int i = 0; i < 300; ++i) {
      Elem a = d(rng), b = d(rng);
      REQUIRE(f->mul(a, b) == slow_mul(*f, a, b));
      if (a != 0) REQUIRE(f->mul(a, f->inv(a)) == 1);
    }
  }
}

TEST_CASE("Frobenius is an automorphism of order dividing k") {
  std::mt19937_64 rng(11);
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 2}, {2, 2}, {5, 3}, {2, 21}}) {
    auto f = Field::make(p, k);
    std::uniform_int_distribution<Elem> d(0, f->order() - 1);
    for (int i = 0; i < 200; ++i) {
      Elem a = d(rng), b = d(rng);
      for (std::int64_t e : {1, 2, -1, -3}) {
        REQUIRE(f->frobenius(f->add(a, b), e) == f->add(f->frobenius(a, e), f->frobenius(b, e)));
        REQUIRE(f->frobenius(f->mul(a, b), e) == f->mul(f->frobenius(a, e), f->frobenius(b, e)));
        REQUIRE(f->frobenius(f->frobenius(a, e), -e) == a);
      }
      REQUIRE(f->frobenius(a, k) == a);
      REQUIRE(f->frobenius(a, 1) == f->pow(a, p));
    }
  }
}

TEST_CASE("irreducibility test against brute-force root and factor search") {
  // degree 2 and 3 over GF(3): irreducible iff no roots
  for (std::uint64_t c0 = 0; c0 < 3; ++c0) {
    for (std::uint64_t c1 = 0; c1 < 3; ++c1) {
      for (std::uint64_t c2 = 0; c2 < 3; ++c2) {
        std::vector<std::uint64_t> f{c0, c1, c2, 1};
        bool has_root = false;
        for (std::uint64_t x = 0; x < 3; ++x) {
          if ((c0 + c1 * x + c2 * x * x + x * x * x) % 3 == 0) has_root = true;
        }
        CHECK(is_irreducible(3, f) == !has_root);
      }
    }
  }
  // x^4 + x^2 + 1 = (x^2+x+1)^2 over GF(2) has no roots but is reducible
  CHECK_FALSE(is_irreducible(2, std::vector<std::uint64_t>{1, 0, 1, 0, 1}));
  CHECK(is_irreducible(2, std::vector<std::uint64_t>{1, 1, 0, 0, 1}));
}
