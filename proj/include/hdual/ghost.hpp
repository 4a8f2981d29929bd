#pragma once

#include "hdual/poly.hpp"

namespace hdual {

class LevelOverflowError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// k[x_i^{(j)} : 0 <= i < n, 0 <= j <= N]. Variable x_i^{(j)} sits at index
/// j*n + i and is named "<base name>_<j>", level 0 keeping the base name.
struct GhostRing {
  RingPtr base;
  RingPtr ring;
  unsigned levels;  // N

  static GhostRing make(RingPtr base, unsigned levels);
  std::size_t index(std::size_t var, unsigned level) const { return level * base->nvars() + var; }
};

/// Replaces each x_i^{e} by prod_j (x_i^{(j)})^{e_j} where e = sum e_j p^j.
Polynomial ghost_lift(const Polynomial& f, const GhostRing& g);
/// x_i^{(j)} -> x_i^{p^j}.
Polynomial ghost_project(const Polynomial& lifted, const GhostRing& g);

}  // namespace hdual
