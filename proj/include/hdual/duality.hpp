#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdual/groebner.hpp"
#include "hdual/linalg.hpp"

namespace hdual {

class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotOnVarietyError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NoSuggestionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ideal of k[x, λ, ξ^{(h)} : h in levels] generated by I and
/// ξ_j^{(h)} - Σ_i λ_i D^{(h)}_{x_j} f_i. Without λ (one generator only)
/// the multiplier is fixed to 1.
///
/// Variable layout: x_0..x_n (names from I's ring), then λ_1..λ_r named
/// l1..lr when present, then one block of ξ per level in increasing level
/// order, named y{j} for a single level and y{j}_{h} otherwise.
class ConormalIdeal {
 public:
  ConormalIdeal(const Ideal& base, std::vector<unsigned> levels, bool use_lambda);

  const Ideal& base() const { return base_; }
  const std::vector<unsigned>& levels() const { return levels_; }
  bool use_lambda() const { return use_lambda_; }
  const RingPtr& ring() const { return ideal_.ring(); }
  const Ideal& ideal() const { return ideal_; }
  const std::vector<Polynomial>& generators() const { return ideal_.generators(); }

  std::size_t num_x() const { return nx_; }
  std::size_t num_lambda() const { return use_lambda_ ? base_.generators().size() : 0; }
  std::size_t x_index(std::size_t j) const { return j; }
  std::size_t lambda_index(std::size_t i) const { return nx_ + i; }
  std::size_t xi_index(std::size_t j, unsigned level) const;
  std::vector<std::size_t> xi_block(unsigned level) const;
  std::vector<std::size_t> all_xi() const;
  bool has_level(unsigned level) const;

  /// The generator ξ_j^{(h)} - (...) for (j, h), i.e. the substitution
  /// ξ_j^{(h)} = xi_value(j, h).
  const Polynomial& xi_generator(std::size_t j, unsigned level) const;
  Polynomial xi_value(std::size_t j, unsigned level) const;

  /// Sugar weights making the generators weighted homogeneous when every
  /// generator of I is homogeneous; empty otherwise.
  const std::vector<std::uint64_t>& weights() const { return weights_; }

 private:
  Ideal base_;
  std::vector<unsigned> levels_;
  bool use_lambda_;
  std::size_t nx_;
  Ideal ideal_;
  std::vector<std::uint64_t> weights_;
};

ConormalIdeal conormal_ideal(const Ideal& I, std::vector<unsigned> levels, bool use_lambda);

struct DualVariety {
  Ideal ideal;  // in the ring of the selected ξ block
  unsigned level;
  /// After eliminating x and λ only, when more than one level was present.
  std::optional<Ideal> intermediate;
  std::string provenance;
};

DualVariety dual_ideal(const ConormalIdeal& C, unsigned level, const GroebnerOptions& opts = {});

/// λ multipliers are needed when I has more than one generator or some
/// h-gradient is constant (fixing λ = 1 would then pin the covector).
bool needs_lambda(const Ideal& I, const std::vector<unsigned>& levels);

/// Convenience: conormal ideal with the given levels (default {level}),
/// λ multipliers per needs_lambda.
DualVariety dual_of(const Ideal& I, unsigned level, std::vector<unsigned> levels = {},
                    const GroebnerOptions& opts = {});

/// Reduced lex basis (variables in ring order) of the ideal.
std::vector<Polynomial> lex_basis(const Ideal& I, const GroebnerOptions& opts = {});

/// Matrix [D^{(h)}_{x_j} f_i(P)].
Matrix h_jacobian(const Ideal& I, const std::vector<Elem>& point, unsigned h);
bool is_h_nonsingular(const Ideal& I, const std::vector<Elem>& point, unsigned h);

std::optional<unsigned> suggest_h_opt(const Ideal& I, unsigned hmax = 6);
unsigned suggest_h(const Ideal& I, unsigned hmax = 6);

struct QuadraticFormDual {
  Polynomial form;      // x^t A x^q over the x ring
  Polynomial relation;  // ξ1^t A^{-1} ξ over k[ξ1, ξ]
  Polynomial dual;      // monic ξ1^t B ξ1^q over the ξ1 ring, B = ((A^{(q)})^t)^{-1}
  Matrix b;
  bool substitution_identity;  // A (A^{(q)t})^{-1} ξ1^q == ξ after ξ = A x^q, ξ1 = A^t x
};

/// Closed-form dual of x^t A x^q, q = p^h with h >= 1. The x ring uses
/// names x0..xn, the ξ1 ring y0..yn, the relation ring y0..yn, z0..zn
/// (y = ξ1, z = ξ).
QuadraticFormDual quadratic_form_dual(const FieldPtr& k, const Matrix& a, std::uint64_t q);

struct ReflexiveOptions {
  unsigned h = 0;
  unsigned h2 = 0;
  /// Levels of the first conormal ideal; empty means {h}.
  std::vector<unsigned> first_levels;
  /// Also run the second dual at level h and record its verdict.
  bool symmetric_check = false;
  GroebnerOptions groebner;
};

struct ReflexivityReport {
  Ideal original;
  unsigned h;
  DualVariety dual;
  unsigned h2;
  Ideal second_dual;  // relabelled into the original ring
  bool equal;
  std::optional<bool> symmetric_equal;
  std::vector<std::string> warnings;
  double dual_ms = 0;
  double second_ms = 0;
};

ReflexivityReport check_reflexive(const Ideal& I, const ReflexiveOptions& opts);

/// Moves an ideal whose ring has as many variables as `target` into
/// `target`, variable i to variable i.
Ideal relabel(const Ideal& J, const RingPtr& target);

}  // namespace hdual
