#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hdual/duality.hpp"

namespace hdual {

/// φ(v) = Σ a_i v_i^{p^h}.
struct PhLinearForm {
  FieldPtr field;
  std::vector<Elem> coeffs;
  unsigned h = 0;

  Elem operator()(const std::vector<Elem>& v) const;
  PhLinearForm scaled(Elem c) const;
};

/// F(v)(φ) = φ(v^{1/p^{2h}})^{p^h}.
Elem double_dual(const std::vector<Elem>& v, const PhLinearForm& phi);

/// Ω(v, w) = Σ (λ_i^{p^h} μ'_i - μ_i λ'_i^{p^h}) with v = (λ | μ), w = (λ' | μ').
Elem omega(const Field& k, const std::vector<Elem>& v, const std::vector<Elem>& w, unsigned h);

/// The formal symbol d^{(level)} x_var.
struct Symbol {
  std::uint32_t var;
  std::uint32_t level;
  auto operator<=>(const Symbol&) const = default;
};

/// Element of the exterior algebra on the symbols d^{(h)}x_i with polynomial
/// coefficients. Each key is a strictly increasing tuple of symbols.
class DifferentialForm {
 public:
  using Key = std::vector<Symbol>;

  explicit DifferentialForm(RingPtr ring) : ring_(std::move(ring)) {}
  static DifferentialForm function(const Polynomial& f);
  static DifferentialForm symbol(const RingPtr& ring, std::size_t var, unsigned level);

  const RingPtr& ring() const { return ring_; }
  const std::map<Key, Polynomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Coefficient of a key (given in any order; sign applied), zero if absent.
  Polynomial coeff(Key key) const;
  /// Adds c times the wedge of the symbols in `key`, in the given order.
  void add(Key key, const Polynomial& c);

  DifferentialForm operator+(const DifferentialForm& o) const;
  DifferentialForm operator-(const DifferentialForm& o) const;
  DifferentialForm operator-() const;
  DifferentialForm operator*(const Polynomial& f) const;
  bool operator==(const DifferentialForm& o) const;

  /// "coeff d{h}x^..." terms joined by " + ", level 0 written "d".
  std::string to_string() const;

 private:
  RingPtr ring_;
  std::map<Key, Polynomial> terms_;
};

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);

/// d^{(h)}: c dS -> Σ_i D^{(h)}_{x_i}(c) d^{(h)}x_i ∧ dS. Only the variables
/// in `vars` are differentiated (all when empty).
DifferentialForm d_h(const DifferentialForm& w, unsigned h, const std::vector<std::size_t>& vars = {});

/// X = Σ a_{h,i} D^{(h)}_{x_i}.
using VectorField = std::map<Symbol, Polynomial>;

/// i_X as a degree -1 signed derivation; on 1-forms Σ a_{h,i}^{p^h} b_{h,i}.
DifferentialForm contract(const VectorField& x, const DifferentialForm& w);

struct CancellationPair {
  std::size_t j;
  std::size_t nu;
  Polynomial first;   // D^{(0)}_{x_nu} ξ_j^{(h)}
  Polynomial second;  // D^{(h)}_{x_j} ξ_nu^{(0)}
};

struct LagrangianCertificate {
  bool vanishes = false;
  DifferentialForm omega;
  std::vector<CancellationPair> pairs;
  std::vector<std::string> notes;
};

/// Evaluates ω = Σ_j d^{(h)}x_j ∧ dξ_j^{(h)} + Σ_j dx_j ∧ d^{(h)}ξ_j^{(0)} with
/// ξ^{(h)} read from the conormal generators and ξ^{(0)} = Σ λ_i D_{x_j} f_i,
/// λ held constant. `corrupt` flips the sign of ξ_j^{(h)} for one j.
LagrangianCertificate lagrangian_check(const ConormalIdeal& C, unsigned h,
                                       std::optional<std::size_t> corrupt = std::nullopt);

/// Every generator involving λ or ξ has joint (λ, ξ)-degree 1 in each term;
/// without λ, terms free of ξ are allowed too.
bool cone_check(const std::vector<Polynomial>& gens, const std::vector<std::size_t>& lambda_vars,
                const std::vector<std::size_t>& xi_vars, bool use_lambda);
bool cone_check(const ConormalIdeal& C);

}  // namespace hdual
