#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hdual {

class SpecMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DivisionByZeroError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raw element representation. For GF(p) this is the residue in [0, p);
// for GF(p^k) it is the packed coefficient vector sum c_i p^i of the
// polynomial-basis representative (c_0 is the constant term).
using Elem = std::uint64_t;

/// Finite field GF(p^k) given by a monic irreducible modulus over GF(p).
///
/// Instances are immutable and shared through FieldPtr; the arithmetic
/// members are pure and safe to call concurrently. The characteristic is
/// bounded by 2^31 and the field order by 2^62 so that packed elements and
/// intermediate products fit in 64 (or 128) bits.
class Field {
 public:
  static constexpr std::uint64_t kMaxPrime = (1ULL << 31);

  /// Builds GF(p^k). An empty modulus selects the smallest monic irreducible
  /// polynomial of degree k, ordered by the packed value sum c_i p^i.
  static std::shared_ptr<const Field> make(std::uint64_t p, unsigned k = 1,
                                           std::vector<std::uint64_t> modulus = {});

  /// Parses "p" or "p^k". The optional modulus is a comma separated
  /// coefficient list, constant term first, including the leading 1.
  static std::shared_ptr<const Field> parse(std::string_view spec,
                                            std::string_view modulus = {});

  std::uint64_t characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  std::uint64_t order() const { return order_; }
  bool is_prime_field() const { return k_ == 1; }
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }

  /// "p" or "p^k".
  std::string spec_string() const;
  bool same_as(const Field& other) const;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t v) const;
  Elem from_coeffs(std::span<const std::uint64_t> coeffs) const;
  std::vector<std::uint64_t> coeffs(Elem a) const;
  /// The class of t in GF(p)[t]/(modulus); 0 for prime fields.
  Elem generator() const { return k_ > 1 ? p_ : 0; }

  Elem add(Elem a, Elem b) const {
    if (k_ == 1) {
      Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    return add_ext(a, b);
  }
  Elem neg(Elem a) const {
    if (k_ == 1) return a == 0 ? 0 : p_ - a;
    return neg_ext(a);
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (k_ == 1) return (a * b) % p_;
    return mul_ext(a, b);
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  /// a^(p^e); negative e applies the inverse Frobenius (p-th roots).
  Elem frobenius(Elem a, std::int64_t e) const;

  bool is_valid(Elem a) const { return a < order_; }

  /// Prints prime-field elements as integers and extension elements as a
  /// polynomial in t, e.g. "2*t+1".
  std::string format(Elem a) const;

  /// Enumerates every element, 0 first. Only meaningful for small fields.
  std::vector<Elem> elements() const;

 private:
  Field(std::uint64_t p, unsigned k, std::vector<std::uint64_t> modulus);

  Elem add_ext(Elem a, Elem b) const;
  Elem neg_ext(Elem a) const;
  Elem mul_ext(Elem a, Elem b) const;
  Elem mul_poly(Elem a, Elem b) const;
  Elem inv_euclid(Elem a) const;
  void build_tables();

  std::uint64_t p_;
  unsigned k_;
  std::uint64_t order_;
  std::vector<std::uint64_t> modulus_;  // length k+1, monic
  std::vector<std::uint64_t> pow_p_;    // p^i for i <= k
  // log/antilog tables for extension fields of order <= kTableLimit
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;
};

using FieldPtr = std::shared_ptr<const Field>;

bool is_prime(std::uint64_t n);

/// Irreducibility of a monic polynomial over GF(p) (coefficients constant
/// term first), by Rabin's test.
bool is_irreducible(std::uint64_t p, std::span<const std::uint64_t> monic);

/// Value type pairing a raw element with its field.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Elem rep);
  static FieldElement from_int(FieldPtr field, std::int64_t v);

  const FieldPtr& field() const { return field_; }
  Elem rep() const { return rep_; }
  std::vector<std::uint64_t> coeffs() const { return field_->coeffs(rep_); }
  bool is_zero() const { return rep_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inv() const;
  FieldElement pow(std::uint64_t e) const;
  FieldElement frobenius(std::int64_t e) const;

  bool operator==(const FieldElement& o) const;
  std::string to_string() const { return field_->format(rep_); }

 private:
  void check_same(const FieldElement& o) const;
  FieldPtr field_;
  Elem rep_;
};

}  // namespace hdual
