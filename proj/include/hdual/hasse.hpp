#pragma once

#include <vector>

#include "hdual/poly.hpp"

namespace hdual {

/// C(m, n) mod p by Lucas' theorem.
std::uint64_t lucas_binomial(std::uint64_t m, std::uint64_t n, std::uint64_t p);

/// D_i^n f: x^m -> C(m_i, n) x^(m - n e_i).
Polynomial hasse_derive(const Polynomial& f, std::size_t var, std::uint64_t n);
/// D^{(h)}_{x_i} = D_i^{p^h}.
Polynomial hasse_h(const Polynomial& f, std::size_t var, unsigned h);
/// Composition of D_i^{n_i} over all variables.
Polynomial hasse_multi(const Polynomial& f, const std::vector<std::uint64_t>& orders);
/// (D^{(h)}_{x_0} f, ..., D^{(h)}_{x_n} f).
std::vector<Polynomial> nabla_h(const Polynomial& f, unsigned h);

/// For f univariate in `var`, compares D^n(f(x^q)) with (D^{n/q} f)(x^q)
/// when q | n and with 0 otherwise.
bool frob_rep_check(const Polynomial& f, std::size_t var, std::uint64_t q, std::uint64_t n);

}  // namespace hdual
