#include "hdual/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace hdual {

std::uint64_t checked_pow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (base != 0 && r > kMaxExponent / base) {
      throw DegreeOverflowError("power " + std::to_string(base) + "^" + std::to_string(e) +
                                " exceeds the exponent bound");
    }
    r *= base;
  }
  return r;
}

// ---------------------------------------------------------------- orders

MonomialOrder::MonomialOrder(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  blocks_.erase(std::remove_if(blocks_.begin(), blocks_.end(), [](const Block& b) { return b.size == 0; }),
                blocks_.end());
  for (const auto& b : blocks_) nvars_ += b.size;
  if (blocks_.empty()) blocks_.push_back({0, OrderKind::grevlex});
  single_ = blocks_.size() == 1;
}

MonomialOrder MonomialOrder::lex(std::size_t n) { return MonomialOrder({{n, OrderKind::lex}}); }
MonomialOrder MonomialOrder::grevlex(std::size_t n) { return MonomialOrder({{n, OrderKind::grevlex}}); }
MonomialOrder MonomialOrder::elimination(std::size_t n, std::size_t split, OrderKind a, OrderKind b) {
  if (split > n) throw std::invalid_argument("elimination split beyond the variable count");
  return MonomialOrder({{split, a}, {n - split, b}});
}

std::string MonomialOrder::describe() const {
  std::string out;
  for (const auto& b : blocks_) {
    if (!out.empty()) out += " > ";
    out += (b.kind == OrderKind::lex ? "lex(" : "grevlex(") + std::to_string(b.size) + ")";
  }
  return out;
}

// ---------------------------------------------------------------- ring

Ring::Ring(FieldPtr field, std::vector<std::string> names, std::optional<MonomialOrder> order)
    : field_(std::move(field)),
      names_(std::move(names)),
      order_(order ? *order : MonomialOrder::grevlex(names_.size())) {
  if (order_.nvars() != names_.size()) {
    throw std::invalid_argument("monomial order arity does not match the variable count");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    for (std::size_t j = i + 1; j < names_.size(); ++j) {
      if (names_[i] == names_[j]) throw std::invalid_argument("duplicate variable name " + names_[i]);
    }
  }
}

RingPtr Ring::make(FieldPtr field, std::vector<std::string> names, std::optional<MonomialOrder> order) {
  return std::make_shared<const Ring>(std::move(field), std::move(names), std::move(order));
}

std::vector<std::string> Ring::indexed_names(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

RingPtr Ring::with_order(MonomialOrder order) const { return make(field_, names_, std::move(order)); }

bool Ring::same_as(const Ring& o) const {
  return this == &o || (field_->same_as(*o.field_) && names_ == o.names_ && order_ == o.order_);
}

// ---------------------------------------------------------------- monomial

std::uint64_t Monomial::degree() const {
  return std::accumulate(exps.begin(), exps.end(), std::uint64_t{0});
}

bool Monomial::divides(const Monomial& o) const {
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] > o.exps[i]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r(exps);
  for (std::size_t i = 0; i < exps.size(); ++i) {
    std::uint64_t s = std::uint64_t{r.exps[i]} + o.exps[i];
    if (s > kMaxExponent) throw DegreeOverflowError("exponent overflow in monomial product");
    r.exps[i] = static_cast<Exponent>(s);
  }
  return r;
}

std::uint64_t h_degree(const Monomial& m, std::uint64_t q) {
  std::uint64_t d = 0;
  for (auto e : m.exps) d += e / q;
  return d;
}

// ---------------------------------------------------------------- polynomial

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

Polynomial Polynomial::constant(RingPtr ring, Elem c) {
  Polynomial r(std::move(ring));
  if (c != 0) {
    r.exps_.assign(r.nvars(), 0);
    r.coeffs_.push_back(c);
  }
  return r;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t i, Exponent e) {
  if (i >= ring->nvars()) throw std::out_of_range("variable index out of range");
  Monomial m = Monomial::one(ring->nvars());
  m.exps[i] = e;
  return term(std::move(ring), m, 1);
}

Polynomial Polynomial::term(RingPtr ring, const Monomial& m, Elem c) {
  if (m.exps.size() != ring->nvars()) throw std::invalid_argument("monomial arity mismatch");
  Polynomial r(std::move(ring));
  if (c != 0) {
    r.exps_ = m.exps;
    r.coeffs_.push_back(c);
  }
  return r;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<std::pair<Monomial, Elem>> terms) {
  const std::size_t n = ring->nvars();
  const auto& ord = ring->order();
  const Field& k = ring->k();
  for (const auto& t : terms) {
    if (t.first.exps.size() != n) throw std::invalid_argument("monomial arity mismatch");
  }
  std::sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
    return ord.compare(a.first.exps.data(), b.first.exps.data()) > 0;
  });
  Polynomial r(std::move(ring));
  for (std::size_t i = 0; i < terms.size();) {
    Elem c = 0;
    std::size_t j = i;
    while (j < terms.size() && terms[j].first.exps == terms[i].first.exps) {
      c = k.add(c, terms[j].second);
      ++j;
    }
    if (c != 0) {
      r.exps_.insert(r.exps_.end(), terms[i].first.exps.begin(), terms[i].first.exps.end());
      r.coeffs_.push_back(c);
    }
    i = j;
  }
  return r;
}

Polynomial Polynomial::from_sorted(RingPtr ring, std::vector<Exponent> exps, std::vector<Elem> coeffs) {
  Polynomial r(std::move(ring));
  r.exps_ = std::move(exps);
  r.coeffs_ = std::move(coeffs);
  return r;
}

bool Polynomial::is_constant() const {
  if (is_zero()) return true;
  if (size() != 1) return false;
  return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
}

Monomial Polynomial::monomial_at(std::size_t i) const {
  auto t = term_at(i);
  return Monomial(std::vector<Exponent>(t.exps.begin(), t.exps.end()));
}

Elem Polynomial::coeff_of(const Monomial& m) const {
  const auto& ord = ring_->order();
  // terms are sorted descending; binary search
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    int c = ord.compare(exps_.data() + mid * nvars(), m.exps.data());
    if (c == 0) return coeffs_[mid];
    if (c > 0) lo = mid + 1;
    else hi = mid;
  }
  return 0;
}

std::uint64_t Polynomial::total_degree() const {
  std::uint64_t d = 0;
  const std::size_t n = nvars();
  for (std::size_t i = 0; i < size(); ++i) {
    std::uint64_t s = 0;
    for (std::size_t v = 0; v < n; ++v) s += exps_[i * n + v];
    d = std::max(d, s);
  }
  return d;
}

std::uint64_t Polynomial::degree_in(std::size_t var) const {
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < size(); ++i) d = std::max<std::uint64_t>(d, exps_[i * nvars() + var]);
  return d;
}

bool Polynomial::is_homogeneous() const {
  if (is_zero()) return true;
  const std::size_t n = nvars();
  std::uint64_t d0 = 0;
  for (std::size_t v = 0; v < n; ++v) d0 += exps_[v];
  for (std::size_t i = 1; i < size(); ++i) {
    std::uint64_t s = 0;
    for (std::size_t v = 0; v < n; ++v) s += exps_[i * n + v];
    if (s != d0) return false;
  }
  return true;
}

bool Polynomial::uses_only(std::span<const std::size_t> allowed) const {
  std::vector<bool> ok(nvars(), false);
  for (auto a : allowed) ok.at(a) = true;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t v = 0; v < nvars(); ++v) {
      if (!ok[v] && exps_[i * nvars() + v] != 0) return false;
    }
  }
  return true;
}

void Polynomial::check_ring(const Polynomial& o) const {
  if (ring_ != o.ring_ && !ring_->same_as(*o.ring_)) {
    throw RingMismatchError("polynomials belong to different rings");
  }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_ring(o);
  const std::size_t n = nvars();
  const auto& ord = ring_->order();
  const Field& k = ring_->k();
  Polynomial r(ring_);
  r.exps_.reserve(exps_.size() + o.exps_.size());
  r.coeffs_.reserve(size() + o.size());
  std::size_t i = 0, j = 0;
  while (i < size() || j < o.size()) {
    int c;
    if (i == size()) c = -1;
    else if (j == o.size()) c = 1;
    else c = ord.compare(exps_.data() + i * n, o.exps_.data() + j * n);
    if (c > 0) {
      r.exps_.insert(r.exps_.end(), exps_.begin() + i * n, exps_.begin() + (i + 1) * n);
      r.coeffs_.push_back(coeffs_[i++]);
    } else if (c < 0) {
      r.exps_.insert(r.exps_.end(), o.exps_.begin() + j * n, o.exps_.begin() + (j + 1) * n);
      r.coeffs_.push_back(o.coeffs_[j++]);
    } else {
      Elem s = k.add(coeffs_[i], o.coeffs_[j]);
      if (s != 0) {
        r.exps_.insert(r.exps_.end(), exps_.begin() + i * n, exps_.begin() + (i + 1) * n);
        r.coeffs_.push_back(s);
      }
      ++i;
      ++j;
    }
  }
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& c : r.coeffs_) c = k().neg(c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::scale(Elem c) const {
  if (c == 0) return Polynomial(ring_);
  Polynomial r(*this);
  for (auto& v : r.coeffs_) v = k().mul(v, c);
  return r;
}

Polynomial Polynomial::mul_term(const Monomial& m, Elem c) const {
  if (c == 0) return Polynomial(ring_);
  Polynomial r(*this);
  const std::size_t n = nvars();
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t v = 0; v < n; ++v) {
      std::uint64_t s = std::uint64_t{r.exps_[i * n + v]} + m.exps[v];
      if (s > kMaxExponent) throw DegreeOverflowError("exponent overflow in product");
      r.exps_[i * n + v] = static_cast<Exponent>(s);
    }
    r.coeffs_[i] = k().mul(r.coeffs_[i], c);
  }
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_ring(o);
  if (is_zero() || o.is_zero()) return Polynomial(ring_);
  const Polynomial& small = size() <= o.size() ? *this : o;
  const Polynomial& big = size() <= o.size() ? o : *this;
  // accumulate row by row: each shifted copy of `big` is already sorted
  Polynomial acc(ring_);
  for (std::size_t i = 0; i < small.size(); ++i) {
    acc += big.mul_term(small.monomial_at(i), small.coeffs_[i]);
  }
  return acc;
}

Polynomial Polynomial::pow(std::uint64_t e) const {
  if (e == 0) return constant(ring_, 1);
  const std::uint64_t p = k().characteristic();
  if (e % p == 0) {
    // Frobenius: (sum c m)^p = sum c^p m^p, and m -> m^p preserves the order
    Polynomial r(*this);
    for (auto& x : r.exps_) {
      std::uint64_t s = std::uint64_t{x} * p;
      if (s > kMaxExponent) throw DegreeOverflowError("exponent overflow in power");
      x = static_cast<Exponent>(s);
    }
    for (auto& c : r.coeffs_) c = k().pow(c, p);
    return r.pow(e / p);
  }
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scale(k().inv(leading_coeff()));
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (ring_ != o.ring_ && !ring_->same_as(*o.ring_)) return false;
  return exps_ == o.exps_ && coeffs_ == o.coeffs_;
}

Elem Polynomial::evaluate(std::span<const Elem> point) const {
  if (point.size() != nvars()) throw std::invalid_argument("evaluation point has wrong length");
  const Field& f = k();
  Elem acc = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    Elem t = coeffs_[i];
    for (std::size_t v = 0; v < nvars() && t != 0; ++v) {
      Exponent e = exps_[i * nvars() + v];
      if (e) t = f.mul(t, f.pow(point[v], e));
    }
    acc = f.add(acc, t);
  }
  return acc;
}

FieldElement Polynomial::evaluate(std::span<const FieldElement> point) const {
  std::vector<Elem> raw;
  raw.reserve(point.size());
  for (const auto& x : point) {
    if (!x.field()->same_as(k())) throw SpecMismatchError("evaluation point over a different field");
    raw.push_back(x.rep());
  }
  return FieldElement(ring_->field(), evaluate(std::span<const Elem>(raw)));
}

Polynomial Polynomial::map_to(RingPtr target, std::span<const std::size_t> var_map) const {
  if (var_map.size() != nvars()) throw std::invalid_argument("variable map has wrong length");
  if (!target->field()->same_as(k())) throw RingMismatchError("target ring has a different field");
  const std::size_t m = target->nvars();
  std::vector<std::pair<Monomial, Elem>> terms;
  terms.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    Monomial mm = Monomial::one(m);
    for (std::size_t v = 0; v < nvars(); ++v) {
      Exponent e = exps_[i * nvars() + v];
      if (e == 0) continue;
      std::uint64_t s = std::uint64_t{mm.exps.at(var_map[v])} + e;
      if (s > kMaxExponent) throw DegreeOverflowError("exponent overflow in substitution");
      mm.exps[var_map[v]] = static_cast<Exponent>(s);
    }
    terms.emplace_back(std::move(mm), coeffs_[i]);
  }
  return from_terms(std::move(target), std::move(terms));
}

Polynomial Polynomial::reorder(RingPtr target) const {
  if (target->names() != ring_->names() || !target->field()->same_as(k())) {
    throw RingMismatchError("reorder requires the same variables and field");
  }
  std::vector<std::size_t> id(nvars());
  std::iota(id.begin(), id.end(), 0);
  return map_to(std::move(target), id);
}

Polynomial Polynomial::inflate(std::optional<std::size_t> var, std::uint64_t factor) const {
  std::vector<std::pair<Monomial, Elem>> terms;
  for (std::size_t i = 0; i < size(); ++i) {
    Monomial m = monomial_at(i);
    for (std::size_t v = 0; v < nvars(); ++v) {
      if (var && *var != v) continue;
      std::uint64_t s = std::uint64_t{m.exps[v]} * factor;
      if (s > kMaxExponent) throw DegreeOverflowError("exponent overflow in substitution");
      m.exps[v] = static_cast<Exponent>(s);
    }
    terms.emplace_back(std::move(m), coeffs_[i]);
  }
  return from_terms(ring_, std::move(terms));
}

Polynomial Polynomial::frobenius_coeffs(std::int64_t e) const {
  Polynomial r(*this);
  for (auto& c : r.coeffs_) c = k().frobenius(c, e);
  return r;
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  const Field& f = k();
  std::ostringstream os;
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) os << " + ";
    auto t = term_at(i);
    bool is_one = std::all_of(t.exps.begin(), t.exps.end(), [](Exponent e) { return e == 0; });
    std::string c = f.format(t.coeff);
    bool composite = c.find('+') != std::string::npos;
    if (is_one) {
      os << (composite ? "(" + c + ")" : c);
      continue;
    }
    bool first = true;
    if (t.coeff != 1) {
      os << (composite ? "(" + c + ")" : c);
      first = false;
    }
    for (std::size_t v = 0; v < t.exps.size(); ++v) {
      if (t.exps[v] == 0) continue;
      if (!first) os << "*";
      first = false;
      os << ring_->name(v);
      if (t.exps[v] != 1) os << "^" << t.exps[v];
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- predicates

std::optional<std::uint64_t> is_h_homogeneous(const Polynomial& f, unsigned h) {
  if (f.is_zero()) throw std::domain_error("h-degree of the zero polynomial is undefined");
  const std::uint64_t q = checked_pow(f.k().characteristic(), h);
  std::optional<std::uint64_t> deg;
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::uint64_t d = 0;
    for (auto e : f.term_at(i).exps) d += e / q;
    if (!deg) deg = d;
    else if (*deg != d) return std::nullopt;
  }
  return deg;
}

bool is_bihomogeneous(const Polynomial& f, unsigned h) {
  if (f.is_zero()) throw std::domain_error("bihomogeneity of the zero polynomial is undefined");
  return f.is_homogeneous() && is_h_homogeneous(f, h).has_value();
}

}  // namespace hdual
