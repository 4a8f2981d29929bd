#include "hdual/groebner.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <queue>

namespace hdual {

std::uint64_t default_pair_budget() {
  if (const char* env = std::getenv("HDUAL_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultPairBudget;
}

BudgetExceeded::BudgetExceeded(std::uint64_t budget, std::vector<Polynomial> partial)
    : std::runtime_error("Buchberger pair budget of " + std::to_string(budget) + " exhausted"),
      partial_(std::move(partial)) {}

namespace {

std::uint64_t divmask(std::span<const Exponent> e) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i]) m |= 1ULL << (i % 64);
  }
  return m;
}

bool divides(std::span<const Exponent> a, std::span<const Exponent> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

struct Reducer {
  const Polynomial* poly;
  std::span<const Exponent> lead;
  std::uint64_t mask;
};

const Reducer* find_reducer(const std::vector<Reducer>& rs, std::span<const Exponent> m, std::uint64_t mask) {
  for (const auto& r : rs) {
    if ((r.mask & ~mask) == 0 && divides(r.lead, m)) return &r;
  }
  return nullptr;
}

// Heap-based division in the style of Monagan and Pearce. The dividend is
// a sum of streams c * x^mult * g[idx..]; quotient terms open new streams.
class HeapDivider {
 public:
  explicit HeapDivider(const RingPtr& ring) : ring_(ring), k_(ring->k()), n_(ring->nvars()) {}

  void add_stream(const Polynomial* g, Elem c, std::span<const Exponent> mult, std::size_t start) {
    if (c == 0 || start >= g->size()) return;
    const std::uint32_t id = static_cast<std::uint32_t>(streams_.size());
    streams_.push_back({g, c, static_cast<std::uint32_t>(start)});
    mult_.insert(mult_.end(), mult.begin(), mult.end());
    cur_.resize(cur_.size() + n_);
    set_cur(id);
    push(id);
  }

  Polynomial run(const std::vector<Reducer>& reducers) {
    std::vector<Exponent> out_exps;
    std::vector<Elem> out_coeffs;
    std::vector<Exponent> m(n_);
    const auto& ord = ring_->order();
    while (!heap_.empty()) {
      const std::uint32_t top = heap_.front();
      std::copy_n(cur_.begin() + top * n_, n_, m.begin());
      Elem c = 0;
      while (!heap_.empty() && ord.compare(cur_.data() + heap_.front() * n_, m.data()) == 0) {
        const std::uint32_t s = pop();
        Stream& st = streams_[s];
        c = k_.add(c, k_.mul(st.coeff, st.poly->coeff_at(st.idx)));
        if (++st.idx < st.poly->size()) {
          set_cur(s);
          push(s);
        }
      }
      if (c == 0) continue;
      const std::span<const Exponent> ms(m);
      if (const Reducer* r = find_reducer(reducers, ms, divmask(ms))) {
        std::vector<Exponent> q(n_);
        for (std::size_t v = 0; v < n_; ++v) q[v] = m[v] - r->lead[v];
        add_stream(r->poly, k_.neg(k_.div(c, r->poly->leading_coeff())), q, 1);
      } else {
        out_exps.insert(out_exps.end(), m.begin(), m.end());
        out_coeffs.push_back(c);
      }
    }
    return Polynomial::from_sorted(ring_, std::move(out_exps), std::move(out_coeffs));
  }

 private:
  struct Stream {
    const Polynomial* poly;
    Elem coeff;
    std::uint32_t idx;
  };

  void set_cur(std::uint32_t s) {
    const Stream& st = streams_[s];
    auto e = st.poly->term_at(st.idx).exps;
    for (std::size_t v = 0; v < n_; ++v) cur_[s * n_ + v] = mult_[s * n_ + v] + e[v];
  }
  bool less(std::uint32_t a, std::uint32_t b) const {
    return ring_->order().compare(cur_.data() + a * n_, cur_.data() + b * n_) < 0;
  }
  void push(std::uint32_t s) {
    heap_.push_back(s);
    std::push_heap(heap_.begin(), heap_.end(), [this](auto a, auto b) { return less(a, b); });
  }
  std::uint32_t pop() {
    std::pop_heap(heap_.begin(), heap_.end(), [this](auto a, auto b) { return less(a, b); });
    std::uint32_t s = heap_.back();
    heap_.pop_back();
    return s;
  }

  const RingPtr& ring_;
  const Field& k_;
  std::size_t n_;
  std::vector<Stream> streams_;
  std::vector<Exponent> mult_;
  std::vector<Exponent> cur_;
  std::vector<std::uint32_t> heap_;
};

std::uint64_t weighted_degree(std::span<const Exponent> e, const std::vector<std::uint64_t>& w) {
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += w[i] * e[i];
  return d;
}

struct Pair {
  std::uint32_t i;
  std::uint32_t j;  // kInput marks an input generator waiting to be reduced
  std::uint64_t sugar;
  std::vector<Exponent> lcm;
};

constexpr std::uint32_t kInput = std::numeric_limits<std::uint32_t>::max();

class Buchberger {
 public:
  Buchberger(const RingPtr& ring, const std::vector<Polynomial>& gens, const GroebnerOptions& opts,
             GroebnerStats* stats)
      : ring_(ring), n_(ring->nvars()), opts_(opts), stats_(stats ? stats : &local_stats_) {
    weights_ = opts.weights.empty() ? std::vector<std::uint64_t>(n_, 1) : opts.weights;
    if (weights_.size() != n_) throw std::invalid_argument("sugar weights have wrong length");
    for (const auto& g : gens) {
      if (!g.ring()->same_as(*ring)) throw RingMismatchError("generator is not over the requested ring");
      if (g.is_zero()) continue;
      inputs_.push_back(g);
    }
    for (std::uint32_t i = 0; i < inputs_.size(); ++i) {
      auto lead = inputs_[i].term_at(0).exps;
      std::uint64_t s = 0;
      for (std::size_t t = 0; t < inputs_[i].size(); ++t) {
        s = std::max(s, weighted_degree(inputs_[i].term_at(t).exps, weights_));
      }
      pairs_.push_back({i, kInput, s, std::vector<Exponent>(lead.begin(), lead.end())});
    }
  }

  std::vector<Polynomial> run() {
    while (!pairs_.empty()) {
      const std::size_t sel = select();
      Pair pr = std::move(pairs_[sel]);
      pairs_[sel] = std::move(pairs_.back());
      pairs_.pop_back();
      if (stats_->pairs_reduced >= opts_.pair_budget) {
        throw BudgetExceeded(opts_.pair_budget, active_elements());
      }
      ++stats_->pairs_reduced;
      Polynomial r = reduce_pair(pr);
      if (r.is_zero()) {
        ++stats_->zero_reductions;
        continue;
      }
      insert(r.monic(), pr.sugar);
    }
    return finish();
  }

 private:
  std::size_t select() const {
    std::size_t best = 0;
    const auto& ord = ring_->order();
    for (std::size_t t = 1; t < pairs_.size(); ++t) {
      const Pair& a = pairs_[t];
      const Pair& b = pairs_[best];
      if (a.sugar != b.sugar) {
        if (a.sugar < b.sugar) best = t;
        continue;
      }
      int c = ord.compare(a.lcm.data(), b.lcm.data());
      if (c < 0 || (c == 0 && std::tie(a.i, a.j) < std::tie(b.i, b.j))) best = t;
    }
    return best;
  }

  std::vector<Reducer> reducers() const {
    std::vector<Reducer> rs;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (active_[i]) rs.push_back({&basis_[i], basis_[i].term_at(0).exps, masks_[i]});
    }
    return rs;
  }

  Polynomial reduce_pair(const Pair& pr) {
    HeapDivider div(ring_);
    const Field& k = ring_->k();
    if (pr.j == kInput) {
      std::vector<Exponent> one(n_, 0);
      div.add_stream(&inputs_[pr.i], k.inv(inputs_[pr.i].leading_coeff()), one, 0);
    } else {
      std::vector<Exponent> m(n_);
      for (std::uint32_t idx : {pr.i, pr.j}) {
        auto lead = basis_[idx].term_at(0).exps;
        for (std::size_t v = 0; v < n_; ++v) m[v] = pr.lcm[v] - lead[v];
        div.add_stream(&basis_[idx], idx == pr.i ? k.one() : k.neg(k.one()), m, 1);
      }
    }
    return div.run(reducer_cache_);
  }

  void insert(Polynomial h, std::uint64_t sugar) {
    const std::uint32_t t = static_cast<std::uint32_t>(basis_.size());
    const auto ht = h.term_at(0).exps;
    const std::vector<Exponent> lead_t(ht.begin(), ht.end());
    basis_.push_back(std::move(h));
    masks_.push_back(divmask(lead_t));
    sugars_.push_back(sugar);
    active_.push_back(true);

    // Gebauer-Möller update
    struct Cand {
      std::uint32_t i;
      std::vector<Exponent> lcm;
      bool coprime;
      bool keep = true;
    };
    std::vector<Cand> cands;
    for (std::uint32_t i = 0; i < t; ++i) {
      if (!active_[i]) continue;
      auto li = basis_[i].term_at(0).exps;
      Cand c{i, std::vector<Exponent>(n_), true};
      for (std::size_t v = 0; v < n_; ++v) {
        c.lcm[v] = std::max(li[v], lead_t[v]);
        if (li[v] && lead_t[v]) c.coprime = false;
      }
      cands.push_back(std::move(c));
    }
    // chain criterion among the new pairs: drop (i,t) when some (j,t) has a
    // strictly smaller lcm dividing it
    for (auto& a : cands) {
      for (const auto& b : cands) {
        if (&a == &b) continue;
        if (divides(b.lcm, a.lcm) && b.lcm != a.lcm) {
          a.keep = false;
          break;
        }
      }
    }
    // among equal lcms keep one, none at all if any member is coprime
    for (std::size_t x = 0; x < cands.size(); ++x) {
      if (!cands[x].keep) continue;
      bool any_coprime = cands[x].coprime;
      for (std::size_t y = x + 1; y < cands.size(); ++y) {
        if (cands[y].keep && cands[y].lcm == cands[x].lcm) {
          any_coprime = any_coprime || cands[y].coprime;
          cands[y].keep = false;
          ++stats_->pairs_discarded;
        }
      }
      if (any_coprime) {
        cands[x].keep = false;
        ++stats_->pairs_discarded;
      }
    }
    // old pairs made redundant by the new leading term
    std::vector<Pair> kept;
    kept.reserve(pairs_.size());
    for (auto& pr : pairs_) {
      if (pr.j != kInput && divides(lead_t, pr.lcm) && lcm_with(pr.i, lead_t) != pr.lcm &&
          lcm_with(pr.j, lead_t) != pr.lcm) {
        ++stats_->pairs_discarded;
        continue;
      }
      kept.push_back(std::move(pr));
    }
    pairs_ = std::move(kept);
    for (auto& c : cands) {
      if (!c.keep) continue;
      std::uint64_t s = std::max(sugars_[c.i] + weighted_degree(c.lcm, weights_) -
                                     weighted_degree(basis_[c.i].term_at(0).exps, weights_),
                                 sugar + weighted_degree(c.lcm, weights_) - weighted_degree(lead_t, weights_));
      pairs_.push_back({c.i, t, s, std::move(c.lcm)});
    }
    for (std::uint32_t i = 0; i < t; ++i) {
      if (active_[i] && divides(lead_t, basis_[i].term_at(0).exps)) active_[i] = false;
    }
    reducer_cache_ = reducers();
  }

  std::vector<Exponent> lcm_with(std::uint32_t i, const std::vector<Exponent>& m) const {
    auto li = basis_[i].term_at(0).exps;
    std::vector<Exponent> out(n_);
    for (std::size_t v = 0; v < n_; ++v) out[v] = std::max(li[v], m[v]);
    return out;
  }

  std::vector<Polynomial> active_elements() const {
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (active_[i]) out.push_back(basis_[i]);
    }
    return out;
  }

  std::vector<Polynomial> finish() const {
    std::vector<Polynomial> minimal = active_elements();
    std::vector<Polynomial> out;
    out.reserve(minimal.size());
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      std::vector<Reducer> others;
      for (std::size_t j = 0; j < minimal.size(); ++j) {
        if (j != i) {
          auto lead = minimal[j].term_at(0).exps;
          others.push_back({&minimal[j], lead, divmask(lead)});
        }
      }
      HeapDivider div(ring_);
      std::vector<Exponent> one(n_, 0);
      div.add_stream(&minimal[i], 1, one, 0);
      out.push_back(div.run(others).monic());
    }
    const auto& ord = ring_->order();
    std::sort(out.begin(), out.end(), [&](const Polynomial& a, const Polynomial& b) {
      return ord.compare(a.raw_exps().data(), b.raw_exps().data()) > 0;
    });
    return out;
  }

  const RingPtr& ring_;
  std::size_t n_;
  GroebnerOptions opts_;
  GroebnerStats local_stats_;
  GroebnerStats* stats_;
  std::vector<std::uint64_t> weights_;
  std::vector<Polynomial> inputs_;
  std::vector<Polynomial> basis_;
  std::vector<std::uint64_t> masks_;
  std::vector<std::uint64_t> sugars_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
  std::vector<Reducer> reducer_cache_;
};

void check_same_ring(const RingPtr& ring, const std::vector<Polynomial>& G) {
  for (const auto& g : G) {
    if (!g.ring()->same_as(*ring)) throw RingMismatchError("polynomials belong to different rings");
  }
}

}  // namespace

DivisionResult reduce(const Polynomial& f, const std::vector<Polynomial>& G) {
  check_same_ring(f.ring(), G);
  const Field& k = f.k();
  DivisionResult res{Polynomial(f.ring()), std::vector<Polynomial>(G.size(), Polynomial(f.ring()))};
  Polynomial p = f;
  while (!p.is_zero()) {
    const Monomial lt = p.leading_monomial();
    const Elem lc = p.leading_coeff();
    bool divided = false;
    for (std::size_t i = 0; i < G.size(); ++i) {
      if (G[i].is_zero()) continue;
      const Monomial lg = G[i].leading_monomial();
      if (!lg.divides(lt)) continue;
      Monomial q = lt;
      for (std::size_t v = 0; v < q.exps.size(); ++v) q.exps[v] -= lg.exps[v];
      const Elem c = k.div(lc, G[i].leading_coeff());
      res.quotients[i] += Polynomial::term(f.ring(), q, c);
      p -= G[i].mul_term(q, c);
      divided = true;
      break;
    }
    if (!divided) {
      const Polynomial t = Polynomial::term(f.ring(), lt, lc);
      res.remainder += t;
      p -= t;
    }
  }
  return res;
}

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& G) {
  check_same_ring(f.ring(), G);
  std::vector<Reducer> rs;
  for (const auto& g : G) {
    if (g.is_zero()) continue;
    auto lead = g.term_at(0).exps;
    rs.push_back({&g, lead, divmask(lead)});
  }
  HeapDivider div(f.ring());
  std::vector<Exponent> one(f.nvars(), 0);
  div.add_stream(&f, 1, one, 0);
  return div.run(rs);
}

std::vector<Polynomial> buchberger(const RingPtr& ring, const std::vector<Polynomial>& gens,
                                   const GroebnerOptions& opts, GroebnerStats* stats) {
  return Buchberger(ring, gens, opts, stats).run();
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("S-polynomial of zero");
  const Monomial a = f.leading_monomial(), b = g.leading_monomial();
  Monomial l = a;
  for (std::size_t v = 0; v < l.exps.size(); ++v) l.exps[v] = std::max(a.exps[v], b.exps[v]);
  Monomial ma = l, mb = l;
  for (std::size_t v = 0; v < l.exps.size(); ++v) {
    ma.exps[v] -= a.exps[v];
    mb.exps[v] -= b.exps[v];
  }
  const Field& k = f.k();
  return f.mul_term(ma, k.inv(f.leading_coeff())) - g.mul_term(mb, k.inv(g.leading_coeff()));
}

bool is_groebner_basis(const std::vector<Polynomial>& G) {
  for (std::size_t i = 0; i < G.size(); ++i) {
    for (std::size_t j = i + 1; j < G.size(); ++j) {
      if (!normal_form(s_polynomial(G[i], G[j]), G).is_zero()) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- Ideal

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> gens)
    : ring_(std::move(ring)), gens_(std::move(gens)), cache_(std::make_shared<Cache>()) {
  check_same_ring(ring_, gens_);
}

bool Ideal::is_zero() const {
  return std::all_of(gens_.begin(), gens_.end(), [](const Polynomial& g) { return g.is_zero(); });
}

const std::vector<Polynomial>& Ideal::groebner_basis(const GroebnerOptions& opts) const {
  std::lock_guard lock(cache_->mu);
  if (!cache_->basis) cache_->basis = buchberger(ring_, gens_, opts);
  return *cache_->basis;
}

bool Ideal::has_cached_basis() const {
  std::lock_guard lock(cache_->mu);
  return cache_->basis.has_value();
}

bool Ideal::contains(const Polynomial& f) const { return normal_form(f, groebner_basis()).is_zero(); }

std::string Ideal::to_string() const {
  std::string out = "<";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) out += ", ";
    out += gens_[i].to_string();
  }
  return out + ">";
}

Ideal elimination_ideal(const Ideal& I, const std::vector<std::size_t>& keep, const GroebnerOptions& opts,
                        GroebnerStats* stats) {
  const RingPtr& ring = I.ring();
  const std::size_t n = ring->nvars();
  std::vector<bool> kept(n, false);
  for (auto v : keep) {
    if (v >= n) throw std::out_of_range("kept variable index out of range");
    kept[v] = true;
  }
  // new position of each variable: eliminated ones first
  std::vector<std::size_t> perm(n), elim, retained;
  for (std::size_t v = 0; v < n; ++v) (kept[v] ? retained : elim).push_back(v);
  std::vector<std::string> names;
  std::vector<std::uint64_t> weights;
  std::size_t pos = 0;
  for (auto group : {&elim, &retained}) {
    for (auto v : *group) {
      perm[v] = pos++;
      names.push_back(ring->name(v));
      weights.push_back(opts.weights.empty() ? 1 : opts.weights.at(v));
    }
  }
  auto block_ring = Ring::make(ring->field(), names, MonomialOrder::elimination(n, elim.size()));
  std::vector<Polynomial> gens;
  for (const auto& g : I.generators()) gens.push_back(g.map_to(block_ring, perm));
  GroebnerOptions block_opts = opts;
  block_opts.weights = weights;
  auto basis = buchberger(block_ring, gens, block_opts, stats);

  std::vector<std::string> sub_names;
  for (auto v : retained) sub_names.push_back(ring->name(v));
  auto sub_ring = Ring::make(ring->field(), sub_names);
  std::vector<std::size_t> to_sub(n, 0);
  for (std::size_t t = 0; t < retained.size(); ++t) to_sub[elim.size() + t] = t;
  std::vector<std::size_t> elim_pos(elim.size());
  std::iota(elim_pos.begin(), elim_pos.end(), 0);
  std::vector<std::size_t> retained_pos(retained.size());
  std::iota(retained_pos.begin(), retained_pos.end(), elim.size());
  std::vector<Polynomial> out;
  for (const auto& g : basis) {
    if (g.uses_only(retained_pos)) out.push_back(g.map_to(sub_ring, to_sub));
  }
  return Ideal(sub_ring, std::move(out));
}

bool ideal_equal(const Ideal& I, const Ideal& J) {
  if (!I.ring()->same_as(*J.ring())) throw RingMismatchError("ideals belong to different rings");
  return I.groebner_basis() == J.groebner_basis();
}

bool ideal_member(const Polynomial& f, const Ideal& I) {
  if (!f.ring()->same_as(*I.ring())) throw RingMismatchError("polynomial and ideal belong to different rings");
  return I.contains(f);
}

std::vector<Polynomial> basis_in_order(const std::vector<Polynomial>& gens, const MonomialOrder& order,
                                       const GroebnerOptions& opts) {
  if (gens.empty()) return {};
  auto target = gens.front().ring()->with_order(order);
  std::vector<Polynomial> moved;
  for (const auto& g : gens) moved.push_back(g.reorder(target));
  return buchberger(target, moved, opts);
}

}  // namespace hdual
