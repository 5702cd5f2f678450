#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpk/polynomial.hpp"

namespace dpk {

struct GroebnerOptions {
  std::size_t max_pairs = 200000;        // S-pairs reduced
  std::size_t max_basis = 5000;          // basis elements kept at any time
  std::size_t max_reduction_steps = 20000000;
};

namespace detail {

template <typename F>
struct ReductionBudget {
  const GroebnerOptions& opt;
  std::size_t steps = 0;
  void tick() {
    if (++steps > opt.max_reduction_steps) fail(ErrorCode::BudgetExceeded, "reduction step budget exhausted");
  }
};

// Full reduction of f by g (no ordering assumption on g).
template <typename F>
MultiPoly<F> reduce(MultiPoly<F> p, const std::vector<MultiPoly<F>>& g, ReductionBudget<F>* budget = nullptr) {
  const auto& field = p.field();
  std::vector<typename MultiPoly<F>::Term> rest;
  while (!p.is_zero()) {
    const auto& [lm, lc] = p.terms().front();
    const MultiPoly<F>* divisor = nullptr;
    for (const auto& h : g)
      if (!h.is_zero() && h.leading_monomial().divides(lm)) {
        divisor = &h;
        break;
      }
    if (divisor) {
      if (budget) budget->tick();
      const auto m = divisor->leading_monomial().quotient_of(lm);
      const auto c = field.neg(field.mul(lc, field.inv(divisor->leading_coeff())));
      p = p.add_multiple(*divisor, m, c);
    } else {
      rest.push_back(p.terms().front());
      auto tail = p.terms();
      tail.erase(tail.begin());
      p = MultiPoly<F>::from_terms(field, p.vars(), std::move(tail), p.order());
    }
  }
  return MultiPoly<F>::from_terms(field, p.vars(), std::move(rest), p.order());
}

template <typename F>
MultiPoly<F> s_polynomial(const MultiPoly<F>& f, const MultiPoly<F>& g) {
  const auto l = Monomial::lcm(f.leading_monomial(), g.leading_monomial());
  const auto& field = f.field();
  auto a = f.times_term(f.leading_monomial().quotient_of(l), field.inv(f.leading_coeff()));
  return a.add_multiple(g, g.leading_monomial().quotient_of(l), field.neg(field.inv(g.leading_coeff())));
}

}  // namespace detail

/// Normal form of f modulo a Groebner basis.
template <typename F>
MultiPoly<F> normal_form(const MultiPoly<F>& f, const std::vector<MultiPoly<F>>& basis) {
  return detail::reduce(f, basis);
}

/// Reduced Groebner basis (monic, sorted by increasing leading monomial). Buchberger with the
/// normal selection strategy, the coprime-leading-term criterion and the chain criterion.
template <typename F>
std::vector<MultiPoly<F>> groebner_basis(std::vector<MultiPoly<F>> gens, const GroebnerOptions& opt = {}) {
  std::erase_if(gens, [](const auto& g) { return g.is_zero(); });
  if (gens.empty()) return {};
  const int n = gens.front().nvars();
  const auto order = gens.front().order();
  for (auto& g : gens) {
    require(g.vars() == gens.front().vars(), ErrorCode::DimensionError, "generators over different variables");
    require(g.order() == order, ErrorCode::InternalError, "generators with different monomial orders");
    g = g.monic();
  }
  detail::ReductionBudget<F> budget{opt};

  std::vector<MultiPoly<F>> g;
  std::vector<std::vector<char>> pending;  // pending[i][j], i < j
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  std::vector<Pair> pairs;

  auto add = [&](MultiPoly<F> h) {
    h = h.monic();
    const std::size_t k = g.size();
    g.push_back(std::move(h));
    require(g.size() <= opt.max_basis, ErrorCode::BudgetExceeded, "Groebner basis grew beyond the budget");
    for (auto& row : pending) row.push_back(0);
    pending.emplace_back(g.size(), 0);
    for (std::size_t i = 0; i < k; ++i) {
      pairs.push_back({i, k, Monomial::lcm(g[i].leading_monomial(), g[k].leading_monomial())});
      pending[i][k] = 1;
    }
  };
  auto is_pending = [&](std::size_t a, std::size_t b) { return a < b ? pending[a][b] : pending[b][a]; };

  for (auto& h : gens) {
    auto r = detail::reduce(h, g, &budget);
    if (!r.is_zero()) add(std::move(r));
  }

  std::size_t processed = 0;
  while (!pairs.empty()) {
    // normal strategy: smallest lcm first
    auto best = pairs.begin();
    for (auto it = pairs.begin(); it != pairs.end(); ++it)
      if (compare(it->lcm, best->lcm, order, n) < 0) best = it;
    const Pair pr = *best;
    pairs.erase(best);
    pending[pr.i][pr.j] = 0;

    if (Monomial::coprime(g[pr.i].leading_monomial(), g[pr.j].leading_monomial())) continue;
    bool chain = false;
    for (std::size_t k = 0; k < g.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (g[k].leading_monomial().divides(pr.lcm) && !is_pending(pr.i, k) && !is_pending(pr.j, k)) chain = true;
    }
    if (chain) continue;

    if (++processed > opt.max_pairs) fail(ErrorCode::BudgetExceeded, "S-pair budget exhausted");
    auto r = detail::reduce(detail::s_polynomial(g[pr.i], g[pr.j]), g, &budget);
    if (!r.is_zero()) add(std::move(r));
  }

  // minimal, then reduced
  std::vector<MultiPoly<F>> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j || !g[j].leading_monomial().divides(g[i].leading_monomial())) continue;
      // equal leading monomials: keep the earliest
      redundant = !(g[i].leading_monomial() == g[j].leading_monomial()) || j < i;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  std::vector<MultiPoly<F>> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<MultiPoly<F>> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    reduced.push_back(detail::reduce(minimal[i], others, &budget).monic());
  }
  std::sort(reduced.begin(), reduced.end(), [&](const auto& a, const auto& b) {
    return compare(a.leading_monomial(), b.leading_monomial(), order, n) < 0;
  });
  return reduced;
}

template <typename F>
bool ideal_contains(const std::vector<MultiPoly<F>>& basis, const MultiPoly<F>& f) {
  return normal_form(f, basis).is_zero();
}

/// Report for the emptiness test of a (weighted-)homogeneous ideal.
struct EmptinessReport {
  bool empty = false;
  std::vector<int> powers;  // N_i with x_i^N_i in I, when empty
  std::size_t basis_size = 0;
};

/// Decides whether V(I) is empty in (weighted) projective space over the algebraic closure,
/// i.e. whether I is primary to the irrelevant ideal. Emptiness requires a pure power of every
/// variable among the leading monomials; the certificate then exhibits x_i^N in I with
/// N capped at 3 * (sum of generator degrees).
template <typename F>
EmptinessReport projective_emptiness(const std::vector<MultiPoly<F>>& gens, const std::vector<int>& weights = {},
                                     const GroebnerOptions& opt = {}) {
  require(!gens.empty(), ErrorCode::InvalidConfig, "empty generator list");
  int degree_sum = 0;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    const auto d = g.homogeneous_degree(weights);
    if (!d) fail(ErrorCode::NotHomogeneous, "generator is not homogeneous: " + g.to_string());
    degree_sum += *d;
  }
  EmptinessReport rep;
  const auto basis = groebner_basis(gens, opt);
  rep.basis_size = basis.size();
  const int n = gens.front().nvars();
  for (int i = 0; i < n; ++i) {
    bool pure = false;
    for (const auto& b : basis) {
      const auto& lm = b.leading_monomial();
      pure |= lm.degree() == lm.e[i] && lm.e[i] > 0;
      pure |= lm.is_one();
    }
    if (!pure) return rep;
  }
  const int cap = std::max(1, 3 * degree_sum);
  const auto& field = gens.front().field();
  for (int i = 0; i < n; ++i) {
    auto xi = MultiPoly<F>::variable(field, gens.front().vars(), i, gens.front().order());
    auto power = normal_form(xi, basis);
    int k = 1;
    while (!power.is_zero()) {
      if (++k > cap) fail(ErrorCode::Inconclusive, "no power of " + xi.to_string() + " up to the cap reduces to 0");
      power = normal_form(power * xi, basis);
    }
    rep.powers.push_back(k);
  }
  rep.empty = true;
  return rep;
}

template <typename F>
bool projective_empty(const std::vector<MultiPoly<F>>& gens, const std::vector<int>& weights = {},
                      const GroebnerOptions& opt = {}) {
  return projective_emptiness(gens, weights, opt).empty;
}

/// The ideal generated by f and its partial derivatives.
template <typename F>
std::vector<MultiPoly<F>> jacobian_ideal(const MultiPoly<F>& f) {
  std::vector<MultiPoly<F>> gens{f};
  for (int i = 0; i < f.nvars(); ++i) gens.push_back(f.derivative(i));
  return gens;
}

/// Smoothness of the cubic surface f = 0 in P^3.
template <typename F>
bool is_smooth_cubic(const MultiPoly<F>& f, const GroebnerOptions& opt = {}) {
  require(f.nvars() == 4, ErrorCode::DimensionError, "cubic surface needs 4 variables");
  const auto d = f.homogeneous_degree();
  if (!d) fail(ErrorCode::NotHomogeneous, "cubic is not homogeneous");
  require(*d == 3, ErrorCode::InvalidConfig, "form is not a cubic");
  return projective_empty(jacobian_ideal(f), {}, opt);
}

/// Smoothness of the surface Q1 = Q2 = 0 in P^4: the Jacobian has rank 2 everywhere on it.
template <typename F>
bool is_smooth_quadric_pair(const MultiPoly<F>& q1, const MultiPoly<F>& q2, const GroebnerOptions& opt = {}) {
  require(q1.nvars() == 5 && q2.nvars() == 5, ErrorCode::DimensionError, "quadric pair needs 5 variables");
  for (const auto* q : {&q1, &q2}) {
    const auto d = q->homogeneous_degree();
    if (!d) fail(ErrorCode::NotHomogeneous, "quadric is not homogeneous");
    require(*d == 2, ErrorCode::InvalidConfig, "form is not a quadric");
  }
  std::vector<MultiPoly<F>> gens{q1, q2};
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      gens.push_back(q1.derivative(i) * q2.derivative(j) - q1.derivative(j) * q2.derivative(i));
  return projective_empty(gens, {}, opt);
}

/// Smoothness of F = 0 in a weighted projective space: the affine cone is smooth away from the
/// origin and F misses the given singular points of the ambient space.
template <typename F>
bool is_smooth_weighted(const MultiPoly<F>& f, const std::vector<int>& weights,
                        const std::vector<std::vector<typename F::Elem>>& ambient_singular_points,
                        const GroebnerOptions& opt = {}) {
  if (!f.homogeneous_degree(weights)) fail(ErrorCode::NotHomogeneous, "form is not weighted-homogeneous");
  for (const auto& pt : ambient_singular_points)
    if (f.field().is_zero(f.evaluate(pt))) return false;
  return projective_empty(jacobian_ideal(f), weights, opt);
}

// ---------------------------------------------------------------------------------------------
// Ideal operations on homogeneous ideals in the variables of the inputs.

namespace detail {

template <typename F>
MultiPoly<F> add_leading_variable(const MultiPoly<F>& p, const std::string& name, MonomialOrder order) {
  std::vector<std::string> vars{name};
  vars.insert(vars.end(), p.vars().begin(), p.vars().end());
  require(vars.size() <= static_cast<std::size_t>(kMaxVars), ErrorCode::DimensionError, "too many variables");
  std::vector<typename MultiPoly<F>::Term> terms;
  for (const auto& [m, c] : p.terms()) {
    Monomial s;
    for (int i = 0; i < p.nvars(); ++i) s.e[i + 1] = m.e[i];
    terms.push_back({s, c});
  }
  return MultiPoly<F>::from_terms(p.field(), vars, std::move(terms), order);
}

template <typename F>
MultiPoly<F> drop_leading_variable(const MultiPoly<F>& p, const std::vector<std::string>& vars, MonomialOrder order) {
  std::vector<typename MultiPoly<F>::Term> terms;
  for (const auto& [m, c] : p.terms()) {
    require(m.e[0] == 0, ErrorCode::InternalError, "eliminated variable still present");
    Monomial s;
    for (int i = 1; i < p.nvars(); ++i) s.e[i - 1] = m.e[i];
    terms.push_back({s, c});
  }
  return MultiPoly<F>::from_terms(p.field(), vars, std::move(terms), order);
}

}  // namespace detail

/// I ∩ J via elimination of t from t*I + (1 - t)*J.
template <typename F>
std::vector<MultiPoly<F>> intersect(const std::vector<MultiPoly<F>>& I, const std::vector<MultiPoly<F>>& J,
                                    const GroebnerOptions& opt = {}) {
  require(!I.empty() && !J.empty(), ErrorCode::InvalidConfig, "empty ideal");
  const auto& vars = I.front().vars();
  const auto order = I.front().order();
  const auto& field = I.front().field();
  std::vector<MultiPoly<F>> gens;
  auto t = MultiPoly<F>::variable(field, [&] {
    std::vector<std::string> v{"_t"};
    v.insert(v.end(), vars.begin(), vars.end());
    return v;
  }(), 0, MonomialOrder::Elim1);
  const auto one = MultiPoly<F>::constant(field, t.vars(), field.one(), MonomialOrder::Elim1);
  for (const auto& f : I) gens.push_back(t * detail::add_leading_variable(f, "_t", MonomialOrder::Elim1));
  for (const auto& g : J) gens.push_back((one - t) * detail::add_leading_variable(g, "_t", MonomialOrder::Elim1));
  std::vector<MultiPoly<F>> out;
  for (const auto& b : groebner_basis(gens, opt))
    if (b.leading_monomial().e[0] == 0) out.push_back(detail::drop_leading_variable(b, vars, order));
  return groebner_basis(out, opt);
}

/// I : f
template <typename F>
std::vector<MultiPoly<F>> colon(const std::vector<MultiPoly<F>>& I, const MultiPoly<F>& f, const GroebnerOptions& opt = {}) {
  require(!f.is_zero(), ErrorCode::InvalidConfig, "colon by zero");
  std::vector<MultiPoly<F>> out;
  for (const auto& h : intersect(I, {f}, opt)) {
    // exact division h / f
    MultiPoly<F> q(h.field(), h.vars(), h.order());
    auto r = h;
    while (!r.is_zero()) {
      require(f.leading_monomial().divides(r.leading_monomial()), ErrorCode::InternalError, "inexact division");
      const auto m = f.leading_monomial().quotient_of(r.leading_monomial());
      const auto c = h.field().mul(r.leading_coeff(), h.field().inv(f.leading_coeff()));
      q = q + MultiPoly<F>::from_terms(h.field(), h.vars(), {{m, c}}, h.order());
      r = r.add_multiple(f, m, h.field().neg(c));
    }
    out.push_back(q);
  }
  return groebner_basis(out, opt);
}

/// I : J = intersection of I : g over generators g of J.
template <typename F>
std::vector<MultiPoly<F>> colon(const std::vector<MultiPoly<F>>& I, const std::vector<MultiPoly<F>>& J,
                                const GroebnerOptions& opt = {}) {
  require(!J.empty(), ErrorCode::InvalidConfig, "colon by the zero ideal");
  auto acc = colon(I, J.front(), opt);
  for (std::size_t i = 1; i < J.size(); ++i) acc = intersect(acc, colon(I, J[i], opt), opt);
  return acc;
}

/// I : J^infinity by iterated colon ideals until the reduced basis stabilises.
template <typename F>
std::vector<MultiPoly<F>> saturate(const std::vector<MultiPoly<F>>& I, const std::vector<MultiPoly<F>>& J,
                                   int max_iterations = 32, const GroebnerOptions& opt = {}) {
  auto cur = groebner_basis(I, opt);
  for (int it = 0; it < max_iterations; ++it) {
    auto next = colon(cur, J, opt);
    if (next == cur) return cur;
    cur = std::move(next);
  }
  fail(ErrorCode::BudgetExceeded, "saturation did not stabilise");
}

/// Number of standard monomials of degree D, i.e. the Hilbert function of R/I at D.
template <typename F>
std::size_t hilbert_function(const std::vector<MultiPoly<F>>& basis, int nvars, int D) {
  std::size_t count = 0;
  Monomial m;
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == nvars - 1) {
      m.e[i] = static_cast<std::uint16_t>(left);
      bool standard = true;
      for (const auto& b : basis)
        if (b.leading_monomial().divides(m)) {
          standard = false;
          break;
        }
      count += standard;
      return;
    }
    for (int a = 0; a <= left; ++a) {
      m.e[i] = static_cast<std::uint16_t>(a);
      self(self, i + 1, left - a);
    }
  };
  if (D >= 0) rec(rec, 0, D);
  return count;
}

/// Krull dimension of R/I from the leading monomials: the largest set of variables containing
/// the support of no leading monomial.
template <typename F>
int krull_dimension(const std::vector<MultiPoly<F>>& basis, int nvars) {
  int best = 0;
  for (unsigned s = 0; s < (1u << nvars); ++s) {
    bool independent = true;
    for (const auto& b : basis) {
      bool inside = true;
      for (int i = 0; i < nvars; ++i)
        if (b.leading_monomial().e[i] && !(s >> i & 1)) inside = false;
      if (inside) {
        independent = false;
        break;
      }
    }
    if (independent) best = std::max(best, __builtin_popcount(s));
  }
  return best;
}

/// Degree of a zero-dimensional projective scheme: the stable value of the Hilbert function.
template <typename F>
std::size_t zero_dimensional_degree(const std::vector<MultiPoly<F>>& basis, int nvars) {
  require(krull_dimension(basis, nvars) == 1, ErrorCode::InternalError, "scheme is not zero-dimensional");
  Monomial l;
  for (const auto& b : basis) l = Monomial::lcm(l, b.leading_monomial());
  const int D = l.degree() + 1;
  const auto a = hilbert_function(basis, nvars, D);
  require(a == hilbert_function(basis, nvars, D + 1), ErrorCode::InternalError, "Hilbert function not yet stable");
  return a;
}

}  // namespace dpk
