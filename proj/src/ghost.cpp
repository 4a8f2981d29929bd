#include "hdual/ghost.hpp"

namespace hdual {

GhostRing GhostRing::make(RingPtr base, unsigned levels) {
  std::vector<std::string> names;
  for (unsigned j = 0; j <= levels; ++j) {
    for (const auto& n : base->names()) names.push_back(j == 0 ? n : n + "_" + std::to_string(j));
  }
  auto ring = Ring::make(base->field(), std::move(names));
  return GhostRing{std::move(base), std::move(ring), levels};
}

Polynomial ghost_lift(const Polynomial& f, const GhostRing& g) {
  if (!f.ring()->same_as(*g.base)) throw RingMismatchError("polynomial is not over the ghost base ring");
  const std::uint64_t p = f.k().characteristic();
  const std::size_t n = g.base->nvars();
  std::vector<std::pair<Monomial, Elem>> terms;
  for (std::size_t t = 0; t < f.size(); ++t) {
    auto view = f.term_at(t);
    Monomial m = Monomial::one(g.ring->nvars());
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t e = view.exps[i];
      for (unsigned j = 0; e != 0; ++j, e /= p) {
        if (j > g.levels) {
          throw LevelOverflowError("exponent " + std::to_string(view.exps[i]) + " needs more than " +
                                   std::to_string(g.levels) + " ghost levels");
        }
        m.exps[g.index(i, j)] = static_cast<Exponent>(e % p);
      }
    }
    terms.emplace_back(std::move(m), view.coeff);
  }
  return Polynomial::from_terms(g.ring, std::move(terms));
}

Polynomial ghost_project(const Polynomial& lifted, const GhostRing& g) {
  if (!lifted.ring()->same_as(*g.ring)) throw RingMismatchError("polynomial is not over the ghost ring");
  const std::uint64_t p = lifted.k().characteristic();
  const std::size_t n = g.base->nvars();
  std::vector<std::pair<Monomial, Elem>> terms;
  for (std::size_t t = 0; t < lifted.size(); ++t) {
    auto view = lifted.term_at(t);
    Monomial m = Monomial::one(n);
    for (unsigned j = 0; j <= g.levels; ++j) {
      const std::uint64_t q = checked_pow(p, j);
      for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t e = std::uint64_t{m.exps[i]} + q * view.exps[g.index(i, j)];
        if (e > kMaxExponent) throw DegreeOverflowError("exponent overflow in ghost projection");
        m.exps[i] = static_cast<Exponent>(e);
      }
    }
    terms.emplace_back(std::move(m), view.coeff);
  }
  return Polynomial::from_terms(g.base, std::move(terms));
}

}  // namespace hdual
