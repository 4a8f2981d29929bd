#include "hdual/field.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace hdual {

namespace {

constexpr std::uint64_t kTableLimit = 1u << 20;

using UPoly = std::vector<std::uint64_t>;  // constant term first, over GF(p)

void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

UPoly upoly_mul(const UPoly& a, const UPoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  trim(r);
  return r;
}

// Remainder of a modulo b (b nonzero); q receives the quotient when given.
UPoly upoly_divmod(UPoly a, const UPoly& b, std::uint64_t p, UPoly* q = nullptr) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint64_t lead_inv = powmod(b.back(), p - 2, p);
  if (q) q->assign(a.size() >= b.size() ? a.size() - db : 0, 0);
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const std::uint64_t c = mulmod(a.back(), lead_inv, p);
    if (q) (*q)[shift] = c;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = (a[shift + i] + p - mulmod(c, b[i], p)) % p;
    }
    trim(a);
  }
  return a;
}

UPoly upoly_sub(UPoly a, const UPoly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

UPoly upoly_gcd(UPoly a, UPoly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = upoly_divmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

UPoly upoly_powmod(UPoly base, std::uint64_t e, const UPoly& mod, std::uint64_t p) {
  UPoly r{1};
  base = upoly_divmod(base, mod, p);
  while (e) {
    if (e & 1) r = upoly_divmod(upoly_mul(r, base, p), mod, p);
    base = upoly_divmod(upoly_mul(base, base, p), mod, p);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t parse_u64(std::string_view s, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument(std::string("invalid ") + what + ": '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible(std::uint64_t p, std::span<const std::uint64_t> monic) {
  UPoly f(monic.begin(), monic.end());
  trim(f);
  if (f.size() < 2) return false;
  const std::uint64_t k = f.size() - 1;
  if (k == 1) return true;
  // x^(p^j) mod f for j = 0..k
  std::vector<UPoly> frob(k + 1);
  frob[0] = upoly_divmod(UPoly{0, 1}, f, p);
  for (std::uint64_t j = 1; j <= k; ++j) frob[j] = upoly_powmod(frob[j - 1], p, f, p);
  const UPoly x = upoly_divmod(UPoly{0, 1}, f, p);
  if (upoly_sub(frob[k], x, p).size() != 0) return false;
  for (std::uint64_t r : prime_factors(k)) {
    UPoly g = upoly_gcd(f, upoly_sub(frob[k / r], x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

Field::Field(std::uint64_t p, unsigned k, std::vector<std::uint64_t> modulus)
    : p_(p), k_(k), order_(1), modulus_(std::move(modulus)) {
  pow_p_.push_back(1);
  for (unsigned i = 0; i < k_; ++i) {
    order_ *= p_;
    pow_p_.push_back(order_);
  }
  if (k_ > 1 && order_ <= kTableLimit) build_tables();
}

std::shared_ptr<const Field> Field::make(std::uint64_t p, unsigned k,
                                         std::vector<std::uint64_t> modulus) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  if (p >= kMaxPrime) throw std::invalid_argument("characteristic must be below 2^31");
  if (k < 1) throw std::invalid_argument("extension degree must be at least 1");
  unsigned __int128 order = 1;
  for (unsigned i = 0; i < k; ++i) {
    order *= p;
    if (order > (static_cast<unsigned __int128>(1) << 62)) {
      throw std::invalid_argument("field order must be below 2^62");
    }
  }
  if (k == 1) {
    if (!modulus.empty() && !(modulus.size() == 2 && modulus[1] == 1)) {
      throw std::invalid_argument("modulus for a prime field must be monic of degree 1");
    }
    return std::shared_ptr<const Field>(new Field(p, 1, {0, 1}));
  }
  if (modulus.empty()) {
    // smallest packed value c_0 + c_1 p + ... over monic degree-k candidates
    std::vector<std::uint64_t> cand(k + 1, 0);
    cand[k] = 1;
    for (std::uint64_t packed = 0;; ++packed) {
      std::uint64_t v = packed;
      for (unsigned i = 0; i < k; ++i) {
        cand[i] = v % p;
        v /= p;
      }
      if (cand[0] != 0 && is_irreducible(p, cand)) break;
    }
    modulus = cand;
  } else {
    if (modulus.size() != k + 1) {
      throw std::invalid_argument("modulus degree must equal the extension degree");
    }
    for (auto c : modulus) {
      if (c >= p) throw std::invalid_argument("modulus coefficients must lie in [0, p)");
    }
    if (modulus.back() != 1) throw std::invalid_argument("modulus must be monic");
    if (!is_irreducible(p, modulus)) throw std::invalid_argument("modulus is not irreducible");
  }
  return std::shared_ptr<const Field>(new Field(p, k, std::move(modulus)));
}

std::shared_ptr<const Field> Field::parse(std::string_view spec, std::string_view modulus) {
  std::uint64_t p = 0;
  unsigned k = 1;
  auto caret = spec.find('^');
  if (caret == std::string_view::npos) {
    p = parse_u64(spec, "field characteristic");
  } else {
    p = parse_u64(spec.substr(0, caret), "field characteristic");
    k = static_cast<unsigned>(parse_u64(spec.substr(caret + 1), "extension degree"));
  }
  std::vector<std::uint64_t> mod;
  if (!modulus.empty()) {
    std::size_t start = 0;
    while (start <= modulus.size()) {
      auto comma = modulus.find(',', start);
      auto tok = modulus.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                       : comma - start);
      while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
      while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
      mod.push_back(parse_u64(tok, "modulus coefficient"));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  return make(p, k, std::move(mod));
}

std::string Field::spec_string() const {
  std::string s = std::to_string(p_);
  if (k_ > 1) s += "^" + std::to_string(k_);
  return s;
}

bool Field::same_as(const Field& other) const {
  return this == &other || (p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_);
}

Elem Field::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += static_cast<std::int64_t>(p_);
  return static_cast<Elem>(r);
}

Elem Field::from_coeffs(std::span<const std::uint64_t> c) const {
  if (c.size() > k_) throw std::invalid_argument("too many coefficients for GF(" + spec_string() + ")");
  Elem r = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] >= p_) throw std::invalid_argument("coefficient out of range [0, p)");
    r += c[i] * pow_p_[i];
  }
  return r;
}

std::vector<std::uint64_t> Field::coeffs(Elem a) const {
  std::vector<std::uint64_t> c(k_);
  for (unsigned i = 0; i < k_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

Elem Field::add_ext(Elem a, Elem b) const {
  if (p_ == 2) return a ^ b;
  Elem r = 0;
  for (unsigned i = 0; i < k_; ++i) {
    std::uint64_t s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    r += s * pow_p_[i];
    a /= p_;
    b /= p_;
  }
  return r;
}

Elem Field::neg_ext(Elem a) const {
  if (p_ == 2) return a;
  Elem r = 0;
  for (unsigned i = 0; i < k_; ++i) {
    std::uint64_t d = a % p_;
    if (d) r += (p_ - d) * pow_p_[i];
    a /= p_;
  }
  return r;
}

Elem Field::mul_poly(Elem a, Elem b) const {
  UPoly pa = coeffs(a), pb = coeffs(b);
  trim(pa);
  trim(pb);
  UPoly prod = upoly_divmod(upoly_mul(pa, pb, p_), modulus_, p_);
  return from_coeffs(prod);
}

Elem Field::mul_ext(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  if (!log_.empty()) {
    std::uint64_t e = static_cast<std::uint64_t>(log_[a]) + log_[b];
    if (e >= order_ - 1) e -= order_ - 1;
    return exp_[e];
  }
  return mul_poly(a, b);
}

void Field::build_tables() {
  const std::uint64_t n = order_ - 1;
  const auto factors = prime_factors(n);
  Elem g = 0;
  for (Elem cand = 2; cand < order_; ++cand) {
    bool primitive = true;
    for (auto r : factors) {
      // cand^(n/r) by square-and-multiply in the polynomial basis
      Elem acc = 1, base = cand;
      std::uint64_t e = n / r;
      while (e) {
        if (e & 1) acc = mul_poly(acc, base);
        base = mul_poly(base, base);
        e >>= 1;
      }
      if (acc == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g = cand;
      break;
    }
  }
  log_.assign(order_, 0);
  exp_.assign(n, 0);
  Elem x = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    exp_[i] = static_cast<std::uint32_t>(x);
    log_[x] = static_cast<std::uint32_t>(i);
    x = mul_poly(x, g);
  }
}

Elem Field::inv_euclid(Elem a) const {
  // extended Euclid: find s with s*a = 1 mod modulus
  UPoly r0 = modulus_, r1 = coeffs(a);
  trim(r1);
  UPoly s0{}, s1{1};
  while (r1.size() > 1) {
    UPoly q;
    UPoly r2 = upoly_divmod(r0, r1, p_, &q);
    trim(q);
    UPoly s2 = upoly_sub(s0, upoly_mul(q, s1, p_), p_);
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r1 is a nonzero constant
  const std::uint64_t c = powmod(r1[0], p_ - 2, p_);
  for (auto& v : s1) v = mulmod(v, c, p_);
  return from_coeffs(upoly_divmod(s1, modulus_, p_));
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw DivisionByZeroError("inverse of zero in GF(" + spec_string() + ")");
  if (k_ == 1) return powmod(a, p_ - 2, p_);
  if (!log_.empty()) {
    const std::uint64_t n = order_ - 1;
    return exp_[(n - log_[a]) % n];
  }
  return inv_euclid(a);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem Field::frobenius(Elem a, std::int64_t e) const {
  if (k_ == 1 || a == 0) return a;
  std::int64_t m = e % static_cast<std::int64_t>(k_);
  if (m < 0) m += k_;
  for (std::int64_t i = 0; i < m; ++i) a = pow(a, p_);
  return a;
}

std::string Field::format(Elem a) const {
  if (k_ == 1) return std::to_string(a);
  auto c = coeffs(a);
  std::string out;
  for (int i = static_cast<int>(k_) - 1; i >= 0; --i) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c[i]);
      continue;
    }
    if (c[i] != 1) out += std::to_string(c[i]) + "*";
    out += "t";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

std::vector<Elem> Field::elements() const {
  std::vector<Elem> out(order_);
  for (std::uint64_t i = 0; i < order_; ++i) out[i] = i;
  return out;
}

FieldElement::FieldElement(FieldPtr field, Elem rep) : field_(std::move(field)), rep_(rep) {
  if (!field_->is_valid(rep_)) throw std::invalid_argument("element out of range for its field");
}

FieldElement FieldElement::from_int(FieldPtr field, std::int64_t v) {
  Elem r = field->from_int(v);
  return FieldElement(std::move(field), r);
}

void FieldElement::check_same(const FieldElement& o) const {
  if (!field_->same_as(*o.field_)) {
    throw SpecMismatchError("GF(" + field_->spec_string() + ") and GF(" + o.field_->spec_string() +
                            ") elements mixed");
  }
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->add(rep_, o.rep_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->sub(rep_, o.rep_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->mul(rep_, o.rep_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->div(rep_, o.rep_)};
}
FieldElement FieldElement::operator-() const { return {field_, field_->neg(rep_)}; }
FieldElement FieldElement::inv() const { return {field_, field_->inv(rep_)}; }
FieldElement FieldElement::pow(std::uint64_t e) const { return {field_, field_->pow(rep_, e)}; }
FieldElement FieldElement::frobenius(std::int64_t e) const {
  return {field_, field_->frobenius(rep_, e)};
}
bool FieldElement::operator==(const FieldElement& o) const {
  return field_->same_as(*o.field_) && rep_ == o.rep_;
}

}  // namespace hdual
