#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hdual/poly.hpp"

namespace hdual {

inline constexpr std::uint64_t kDefaultPairBudget = 2'000'000;

/// The pair budget from HDUAL_BUDGET when set, else kDefaultPairBudget.
std::uint64_t default_pair_budget();

struct GroebnerOptions {
  std::uint64_t pair_budget = default_pair_budget();
  /// Per-variable weights for the sugar degree used in pair selection;
  /// empty means all ones. Does not affect the monomial order.
  std::vector<std::uint64_t> weights;
};

struct GroebnerStats {
  std::uint64_t pairs_reduced = 0;
  std::uint64_t pairs_discarded = 0;
  std::uint64_t zero_reductions = 0;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t budget, std::vector<Polynomial> partial);
  /// The basis elements found before the budget ran out (not a Gröbner
  /// basis in general).
  const std::vector<Polynomial>& partial() const { return partial_; }

 private:
  std::vector<Polynomial> partial_;
};

struct DivisionResult {
  Polynomial remainder;
  std::vector<Polynomial> quotients;
};

/// Multivariate division: f = sum q_i g_i + r, no term of r divisible by a
/// leading term of G. Deterministic: the first divisor in G is used.
DivisionResult reduce(const Polynomial& f, const std::vector<Polynomial>& G);

/// Remainder only, via a heap-based division.
Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& G);

/// Reduced Gröbner basis under the ring's order: monic, sorted by leading
/// monomial descending. The zero ideal gives an empty basis.
std::vector<Polynomial> buchberger(const RingPtr& ring, const std::vector<Polynomial>& gens,
                                   const GroebnerOptions& opts = {}, GroebnerStats* stats = nullptr);

/// S-polynomial of two nonzero polynomials.
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g);

/// True when every S-polynomial of G reduces to zero.
bool is_groebner_basis(const std::vector<Polynomial>& G);

class Ideal {
 public:
  Ideal(RingPtr ring, std::vector<Polynomial> gens);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  bool is_zero() const;

  /// Reduced basis under the ring's order, computed once and cached.
  const std::vector<Polynomial>& groebner_basis(const GroebnerOptions& opts = {}) const;
  bool has_cached_basis() const;

  bool contains(const Polynomial& f) const;
  std::string to_string() const;

 private:
  struct Cache {
    std::mutex mu;
    std::optional<std::vector<Polynomial>> basis;
  };
  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

/// I ∩ k[keep], as an ideal of the subring on the kept variables (names
/// and relative order preserved, grevlex). Uses a block order with the
/// eliminated variables grevlex above the kept ones grevlex.
Ideal elimination_ideal(const Ideal& I, const std::vector<std::size_t>& keep, const GroebnerOptions& opts = {},
                        GroebnerStats* stats = nullptr);

/// Equal reduced bases under I's ring order.
bool ideal_equal(const Ideal& I, const Ideal& J);
bool ideal_member(const Polynomial& f, const Ideal& I);

/// Reduced basis of the same ideal under another order on the same ring.
std::vector<Polynomial> basis_in_order(const std::vector<Polynomial>& gens, const MonomialOrder& order,
                                       const GroebnerOptions& opts = {});

}  // namespace hdual
