#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hdual/field.hpp"

namespace hdual {

using Exponent = std::uint32_t;

// Exponents are kept below this bound; larger results are a hard error.
inline constexpr std::uint64_t kMaxExponent = (1ULL << 31) - 1;

class RingMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegreeOverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

enum class OrderKind { lex, grevlex };

/// Monomial order made of consecutive variable blocks. A monomial with a
/// larger first block compares larger regardless of later blocks, so a two
/// block order eliminates the first block.
class MonomialOrder {
 public:
  struct Block {
    std::size_t size;
    OrderKind kind;
    bool operator==(const Block&) const = default;
  };

  static MonomialOrder lex(std::size_t nvars);
  static MonomialOrder grevlex(std::size_t nvars);
  /// Variables [0, split) form the eliminated block, [split, nvars) the
  /// retained one.
  static MonomialOrder elimination(std::size_t nvars, std::size_t split,
                                   OrderKind inner_eliminated = OrderKind::grevlex,
                                   OrderKind inner_retained = OrderKind::grevlex);
  explicit MonomialOrder(std::vector<Block> blocks);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Block>& blocks() const { return blocks_; }

  /// Three-way comparison of exponent vectors of length nvars().
  int compare(const Exponent* a, const Exponent* b) const {
    if (single_) {
      return blocks_[0].kind == OrderKind::lex ? cmp_lex(a, b, nvars_) : cmp_grevlex(a, b, nvars_);
    }
    std::size_t off = 0;
    for (const auto& blk : blocks_) {
      int c = blk.kind == OrderKind::lex ? cmp_lex(a + off, b + off, blk.size)
                                         : cmp_grevlex(a + off, b + off, blk.size);
      if (c != 0) return c;
      off += blk.size;
    }
    return 0;
  }

  std::string describe() const;
  bool operator==(const MonomialOrder& o) const { return blocks_ == o.blocks_; }

 private:
  static int cmp_lex(const Exponent* a, const Exponent* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    }
    return 0;
  }
  static int cmp_grevlex(const Exponent* a, const Exponent* b, std::size_t n) {
    std::uint64_t da = 0, db = 0;
    for (std::size_t i = 0; i < n; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = n; i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
  }

  std::vector<Block> blocks_;
  std::size_t nvars_ = 0;
  bool single_ = true;
};

/// Polynomial ring k[v_0, ..., v_{n-1}] with a fixed monomial order.
class Ring {
 public:
  Ring(FieldPtr field, std::vector<std::string> names, std::optional<MonomialOrder> order = {});

  static std::shared_ptr<const Ring> make(FieldPtr field, std::vector<std::string> names,
                                          std::optional<MonomialOrder> order = {});
  /// Variables named prefix0 .. prefix{n-1}.
  static std::vector<std::string> indexed_names(const std::string& prefix, std::size_t n);

  const FieldPtr& field() const { return field_; }
  const Field& k() const { return *field_; }
  std::size_t nvars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  const MonomialOrder& order() const { return order_; }

  /// Same field and variables under a different order.
  std::shared_ptr<const Ring> with_order(MonomialOrder order) const;

  bool same_as(const Ring& o) const;

 private:
  FieldPtr field_;
  std::vector<std::string> names_;
  MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const Ring>;

/// Exponent vector; its length equals the ambient ring's variable count.
struct Monomial {
  std::vector<Exponent> exps;

  Monomial() = default;
  explicit Monomial(std::vector<Exponent> e) : exps(std::move(e)) {}
  static Monomial one(std::size_t nvars) { return Monomial(std::vector<Exponent>(nvars, 0)); }

  std::uint64_t degree() const;
  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& o) const;
  bool operator==(const Monomial&) const = default;
};

/// Sum of floor(m_i / q): the degree of the q-part in the unique split
/// m = q*a + b with every b_i < q.
std::uint64_t h_degree(const Monomial& m, std::uint64_t q);

struct TermView {
  std::span<const Exponent> exps;
  Elem coeff;
};

/// Sparse multivariate polynomial. Terms are stored flat, sorted by the
/// ring's monomial order (descending), with no zero coefficients and no
/// repeated monomials.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring);

  static Polynomial constant(RingPtr ring, Elem c);
  static Polynomial variable(RingPtr ring, std::size_t i, Exponent e = 1);
  static Polynomial term(RingPtr ring, const Monomial& m, Elem c);
  /// Canonicalizes an arbitrary list of terms (sorts, merges, drops zeros).
  static Polynomial from_terms(RingPtr ring, std::vector<std::pair<Monomial, Elem>> terms);
  /// Trusted constructor: exps/coeffs already sorted and canonical.
  static Polynomial from_sorted(RingPtr ring, std::vector<Exponent> exps, std::vector<Elem> coeffs);

  const RingPtr& ring() const { return ring_; }
  const Field& k() const { return ring_->k(); }
  std::size_t nvars() const { return ring_->nvars(); }
  std::size_t size() const { return coeffs_.size(); }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const;

  TermView term_at(std::size_t i) const {
    return {std::span<const Exponent>(exps_.data() + i * nvars(), nvars()), coeffs_[i]};
  }
  Monomial monomial_at(std::size_t i) const;
  Elem coeff_at(std::size_t i) const { return coeffs_[i]; }
  std::span<const Exponent> raw_exps() const { return exps_; }
  std::span<const Elem> raw_coeffs() const { return coeffs_; }

  /// Leading term under the ring order; undefined for zero.
  Monomial leading_monomial() const { return monomial_at(0); }
  Elem leading_coeff() const { return coeffs_.at(0); }

  /// Coefficient of m, zero when absent.
  Elem coeff_of(const Monomial& m) const;

  std::uint64_t total_degree() const;
  std::uint64_t degree_in(std::size_t var) const;
  bool is_homogeneous() const;
  /// True when no term involves any variable outside `allowed`.
  bool uses_only(std::span<const std::size_t> allowed) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial scale(Elem c) const;
  Polynomial mul_term(const Monomial& m, Elem c) const;
  Polynomial pow(std::uint64_t e) const;
  Polynomial monic() const;

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Elem evaluate(std::span<const Elem> point) const;
  FieldElement evaluate(std::span<const FieldElement> point) const;

  /// Re-expresses the polynomial in `target`, sending variable i to
  /// variable var_map[i] of the target ring.
  Polynomial map_to(RingPtr target, std::span<const std::size_t> var_map) const;
  /// Same variables, ring with another order (re-sorts the terms).
  Polynomial reorder(RingPtr target) const;
  /// Substitutes x_var -> x_var^factor for one variable (all when var is
  /// empty).
  Polynomial inflate(std::optional<std::size_t> var, std::uint64_t factor) const;
  /// Applies the field Frobenius a -> a^(p^e) to every coefficient.
  Polynomial frobenius_coeffs(std::int64_t e) const;

  std::string to_string() const;

 private:
  void check_ring(const Polynomial& o) const;

  RingPtr ring_;
  std::vector<Exponent> exps_;
  std::vector<Elem> coeffs_;
};

/// Some(deg_h) when every monomial of f has the same h_degree for q = p^h.
std::optional<std::uint64_t> is_h_homogeneous(const Polynomial& f, unsigned h);
/// Homogeneous and h-homogeneous.
bool is_bihomogeneous(const Polynomial& f, unsigned h);

std::uint64_t checked_pow(std::uint64_t base, unsigned e);

}  // namespace hdual
