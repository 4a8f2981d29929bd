#include "hdual/hasse.hpp"

namespace hdual {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  for (a %= p; e; e >>= 1, a = mulmod(a, a, p)) {
    if (e & 1) r = mulmod(r, a, p);
  }
  return r;
}

// C(a, b) mod p for a, b < p.
std::uint64_t small_binomial(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  if (b > a) return 0;
  if (b > a - b) b = a - b;
  std::uint64_t num = 1, den = 1;
  for (std::uint64_t i = 0; i < b; ++i) {
    num = mulmod(num, a - i, p);
    den = mulmod(den, i + 1, p);
  }
  return mulmod(num, powmod(den, p - 2, p), p);
}

}  // namespace

std::uint64_t lucas_binomial(std::uint64_t m, std::uint64_t n, std::uint64_t p) {
  std::uint64_t r = 1;
  while (n != 0 || m != 0) {
    const std::uint64_t a = m % p, b = n % p;
    if (b > a) return 0;
    r = mulmod(r, small_binomial(a, b, p), p);
    m /= p;
    n /= p;
  }
  return r;
}

Polynomial hasse_derive(const Polynomial& f, std::size_t var, std::uint64_t n) {
  if (var >= f.nvars()) throw std::out_of_range("variable index out of range");
  if (n == 0) return f;
  const Field& k = f.k();
  const std::uint64_t p = k.characteristic();
  const std::size_t nv = f.nvars();
  std::vector<Exponent> exps;
  std::vector<Elem> coeffs;
  for (std::size_t t = 0; t < f.size(); ++t) {
    auto view = f.term_at(t);
    const std::uint64_t m = view.exps[var];
    if (m < n) continue;
    const std::uint64_t b = lucas_binomial(m, n, p);
    if (b == 0) continue;
    // dividing every surviving term by x_var^n keeps them sorted
    exps.insert(exps.end(), view.exps.begin(), view.exps.end());
    exps[exps.size() - nv + var] = static_cast<Exponent>(m - n);
    coeffs.push_back(k.mul(view.coeff, k.from_int(static_cast<std::int64_t>(b))));
  }
  return Polynomial::from_sorted(f.ring(), std::move(exps), std::move(coeffs));
}

Polynomial hasse_h(const Polynomial& f, std::size_t var, unsigned h) {
  return hasse_derive(f, var, checked_pow(f.k().characteristic(), h));
}

Polynomial hasse_multi(const Polynomial& f, const std::vector<std::uint64_t>& orders) {
  if (orders.size() != f.nvars()) throw std::invalid_argument("multi-index has wrong length");
  Polynomial g = f;
  for (std::size_t i = 0; i < orders.size(); ++i) g = hasse_derive(g, i, orders[i]);
  return g;
}

std::vector<Polynomial> nabla_h(const Polynomial& f, unsigned h) {
  std::vector<Polynomial> out;
  out.reserve(f.nvars());
  for (std::size_t i = 0; i < f.nvars(); ++i) out.push_back(hasse_h(f, i, h));
  return out;
}

bool frob_rep_check(const Polynomial& f, std::size_t var, std::uint64_t q, std::uint64_t n) {
  std::vector<std::size_t> only{var};
  if (!f.uses_only(only)) throw std::invalid_argument("frob_rep_check expects a univariate polynomial");
  const Polynomial lhs = hasse_derive(f.inflate(var, q), var, n);
  if (n % q != 0) return lhs.is_zero();
  return lhs == hasse_derive(f, var, n / q).inflate(var, q);
}

}  // namespace hdual
