#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dpk/ffcount.hpp"
#include "dpk/groebner.hpp"

namespace dpk {

inline const std::vector<std::string>& cubic_variables() {
  static const std::vector<std::string> v{"w", "x", "y", "z"};
  return v;
}

/// GF(p^3) used for lines: t^3 + 2t + 9 for p = 11, otherwise the first irreducible cubic.
inline FiniteField cubic_extension(std::uint64_t p) {
  if (p == 11) return FiniteField(11, 3, {9, 2, 0, 1});
  return FiniteField(p, 3);
}

/// True iff 1, beta, gamma are linearly independent over GF(p), i.e. the line
/// x + beta*y + gamma*z = 0 has no GF(p)-point.
inline bool line_avoids_rational_points(const FiniteField& F, FiniteField::Elem beta, FiniteField::Elem gamma) {
  const auto p = static_cast<std::int64_t>(F.p());
  std::array<std::array<std::int64_t, 3>, 3> m{};
  const std::array<FiniteField::Elem, 3> v{1, beta, gamma};
  for (int i = 0; i < 3; ++i) {
    const auto c = F.coords(v[i]);
    for (int j = 0; j < 3; ++j) m[i][j] = static_cast<std::int64_t>(c[j]);
  }
  // determinant mod p
  std::int64_t det = 0;
  for (int j = 0; j < 3; ++j) {
    const std::int64_t minor = m[1][(j + 1) % 3] * m[2][(j + 2) % 3] - m[1][(j + 2) % 3] * m[2][(j + 1) % 3];
    det += m[0][j] * minor;
  }
  return ((det % p) + p) % p != 0;
}

/// Product of the three Frobenius conjugates of x + beta*y + gamma*z, as a cubic over GF(p)
/// in (x, y, z).
inline MultiPoly<FiniteField> construct_norm_form(const FiniteField& F, FiniteField::Elem beta, FiniteField::Elem gamma) {
  require(F.k() == 3, ErrorCode::InvalidField, "line must be defined over a cubic extension");
  if (!line_avoids_rational_points(F, beta, gamma))
    fail(ErrorCode::LineHasRationalPoint, "1, beta, gamma are linearly dependent over the prime field");
  const std::vector<std::string> vars{"x", "y", "z"};
  MultiPoly<FiniteField> prod = MultiPoly<FiniteField>::constant(F, vars, F.one());
  auto b = beta, g = gamma;
  for (int j = 0; j < 3; ++j) {
    std::vector<MultiPoly<FiniteField>::Term> t{{Monomial::variable(0), F.one()}, {Monomial::variable(1), b},
                                                {Monomial::variable(2), g}};
    prod = prod * MultiPoly<FiniteField>::from_terms(F, vars, t);
    b = F.frobenius(b);
    g = F.frobenius(g);
  }
  FiniteField Fp(F.p());
  return prod.map_coefficients(Fp, [&](FiniteField::Elem c) {
    require(F.in_prime_field(c), ErrorCode::InternalError, "norm form is not Frobenius invariant");
    return static_cast<FiniteField::Elem>(c);
  });
}

/// Terms c_i w^i g_{3-i}(x, y, z), i = 0, 1, 2, added to p w^3 + f.
struct Perturbation {
  std::array<BigInt, 3> c{0, 0, 0};
  std::array<std::string, 3> g{"0", "0", "0"};  // g_3, g_2, g_1 in x, y, z
};

struct LineData {
  std::vector<std::uint64_t> modulus;  // of GF(p^3), low degree first
  std::vector<std::uint64_t> beta, gamma;  // coordinates in the basis 1, t, t^2
  std::optional<std::pair<int, int>> exponents;  // beta = t^a, gamma = t^b when given that way
};

struct CubicProvenance {
  std::int64_t p = 0;
  std::optional<std::uint64_t> seed;
  int attempts = 0;
  LineData line;
  std::optional<Perturbation> perturbation;
  std::optional<std::int64_t> auxiliary_prime;  // reduction used for the smoothness certificate
  bool smooth = false;
};

struct PAdicCubic {
  std::int64_t p = 0;
  MultiPoly<RationalField> form;  // integral cubic in (w, x, y, z)
  std::optional<CubicProvenance> provenance;
};

enum class PointlessVerdict { NoQpPoints, Inconclusive };

inline std::string to_string(PointlessVerdict v) { return v == PointlessVerdict::NoQpPoints ? "NoQpPoints" : "Inconclusive"; }

struct ValuationArgument {
  int w3_valuation = -1;            // v(coefficient of w^3); -1 when the coefficient is 0
  int w3_class_mod3 = -1;
  int other_terms_lower_bound = -1; // min over other monomials of v(c) + (3 - deg_w)
  bool strict = false;              // other_terms_lower_bound > w3_valuation
};

struct PointlessCertificate {
  std::vector<std::array<std::int64_t, 4>> residue_points;  // normalised, first nonzero coordinate 1
  ValuationArgument valuation;
  PointlessVerdict verdict = PointlessVerdict::Inconclusive;
  std::string reason;
};

namespace detail {

inline int valuation_of(const BigInt& n, std::int64_t p) { return n == 0 ? -1 : p_valuation(n, p); }

inline void require_integral_cubic(const MultiPoly<RationalField>& f) {
  require(f.vars() == cubic_variables(), ErrorCode::DimensionError, "expected a cubic in w, x, y, z");
  const auto d = f.homogeneous_degree();
  if (!d) fail(ErrorCode::NotHomogeneous, "form is not homogeneous");
  require(*d == 3 && !f.is_zero(), ErrorCode::InvalidConfig, "form is not a cubic");
  for (const auto& [m, c] : f.terms())
    require(denominator(c) == 1, ErrorCode::InvalidConfig, "coefficients must be integers");
}

inline MultiPoly<FiniteField> reduce_mod(const MultiPoly<RationalField>& f, const FiniteField& F) {
  return f.map_coefficients(F, [&](const Rational& c) { return F.from_rational(c); });
}

}  // namespace detail

/// Residue points, then the term-valuation bound at (1:0:0:0): a primitive Q_p-point reduces to
/// (1:0:0:0), so w is a unit and x, y, z lie in pZ_p; every monomial other than w^3 then has
/// valuation at least v(c) + 3 - deg_w, and if all of these exceed v(c_{w^3}) the form cannot vanish.
inline PointlessCertificate verify_pointless(const PAdicCubic& s) {
  require(s.p >= 2 && is_prime(s.p), ErrorCode::InvalidField, "p must be prime");
  detail::require_integral_cubic(s.form);
  PointlessCertificate cert;
  FiniteField F(static_cast<std::uint64_t>(s.p));
  const auto red = detail::reduce_mod(s.form, F);
  std::size_t residue_count = 0;
  bool only_origin = true;
  enumerate_projective_points(F, {1, 1, 1, 1}, [&](const std::vector<FiniteField::Elem>& x) {
    if (red.evaluate(x) != 0) return;
    ++residue_count;
    const bool origin = x[0] == 1 && x[1] == 0 && x[2] == 0 && x[3] == 0;
    only_origin &= origin;
    if (cert.residue_points.size() < 64)
      cert.residue_points.push_back({x[0], x[1], x[2], x[3]});
  });

  Monomial w3 = Monomial::variable(0, 3);
  auto& va = cert.valuation;
  va.w3_valuation = detail::valuation_of(BigInt(numerator(s.form.coefficient(w3))), s.p);
  if (va.w3_valuation >= 0) va.w3_class_mod3 = va.w3_valuation % 3;
  int bound = -1;
  for (const auto& [m, c] : s.form.terms()) {
    if (m == w3) continue;
    const int b = detail::valuation_of(BigInt(numerator(c)), s.p) + (3 - m.e[0]);
    bound = bound < 0 ? b : std::min(bound, b);
  }
  va.other_terms_lower_bound = bound;
  va.strict = va.w3_valuation >= 0 && (bound < 0 || bound > va.w3_valuation);

  if (residue_count == 0) {
    cert.verdict = PointlessVerdict::NoQpPoints;
    cert.reason = "reduction has no points";
  } else if (!only_origin || residue_count != 1) {
    cert.reason = "reduction has " + std::to_string(residue_count) + " points, not only (1:0:0:0)";
  } else if (!va.strict) {
    cert.reason = "w^3 term does not dominate near (1:0:0:0)";
  } else {
    cert.verdict = PointlessVerdict::NoQpPoints;
    cert.reason = "only residue point is (1:0:0:0) and the w^3 term has strictly smallest valuation there";
  }
  return cert;
}

/// Searches for a primitive solution mod p^k at which some partial derivative is a unit; by
/// Hensel's lemma such a solution lifts to a Q_p-point. Returns the first one found.
inline std::optional<std::array<BigInt, 4>> find_hensel_point(const MultiPoly<RationalField>& f, std::int64_t p, int k) {
  detail::require_integral_cubic(f);
  require(k >= 1, ErrorCode::InvalidConfig, "lifting depth must be positive");
  std::vector<std::vector<std::pair<Monomial, BigInt>>> parts;
  auto integral_terms = [](const MultiPoly<RationalField>& g) {
    std::vector<std::pair<Monomial, BigInt>> t;
    for (const auto& [m, c] : g.terms()) t.push_back({m, BigInt(numerator(c))});
    return t;
  };
  const auto fterms = integral_terms(f);
  for (int i = 0; i < 4; ++i) parts.push_back(integral_terms(f.derivative(i)));
  auto eval = [](const std::vector<std::pair<Monomial, BigInt>>& t, const std::array<BigInt, 4>& x, const BigInt& mod) {
    BigInt acc = 0;
    for (const auto& [m, c] : t) {
      BigInt v = c;
      for (int i = 0; i < 4; ++i)
        for (int e = 0; e < m.e[i]; ++e) v = v * x[i] % mod;
      acc = (acc + v) % mod;
    }
    return acc < 0 ? BigInt(acc + mod) : acc;
  };
  const BigInt P(p);
  std::optional<std::array<BigInt, 4>> found;
  // depth-first: level j holds solutions mod p^j with the normalised coordinate fixed to 1
  auto rec = [&](auto&& self, std::array<BigInt, 4> x, int lead, int level, const BigInt& mod) -> bool {
    if (level == k) {
      for (const auto& d : parts)
        if (eval(d, x, P) != 0) {
          found = x;
          return true;
        }
      return false;
    }
    const BigInt next_mod = mod * P;
    std::array<std::int64_t, 4> t{0, 0, 0, 0};
    const int free = 3;
    std::int64_t total = 1;
    for (int i = 0; i < free; ++i) total *= p;
    for (std::int64_t code = 0; code < total; ++code) {
      auto c = code;
      auto y = x;
      for (int i = 0, j = 0; i < 4; ++i) {
        if (i == lead) continue;
        t[j] = c % p;
        c /= p;
        y[i] = x[i] + mod * t[j];
        ++j;
      }
      if (eval(fterms, y, next_mod) != 0) continue;
      if (self(self, y, lead, level + 1, next_mod)) return true;
    }
    return false;
  };
  FiniteField F(static_cast<std::uint64_t>(p));
  const auto red = detail::reduce_mod(f, F);
  bool done = false;
  enumerate_projective_points(F, {1, 1, 1, 1}, [&](const std::vector<FiniteField::Elem>& x) {
    if (done || red.evaluate(x) != 0) return;
    std::array<BigInt, 4> y;
    int lead = -1;
    for (int i = 0; i < 4; ++i) {
      y[i] = x[i];
      if (lead < 0 && x[i] == 1) lead = i;
    }
    done = rec(rec, y, lead, 1, P);
  });
  return found;
}

/// Smoothness over Q (hence over Q_p) from smoothness of a reduction at a prime other than p.
inline std::optional<std::int64_t> certify_smooth_by_reduction(const MultiPoly<RationalField>& f, std::int64_t p,
                                                                int tries = 8) {
  std::int64_t ell = 101;
  for (int i = 0; i < tries; ++ell) {
    if (!is_prime(ell) || ell == p) continue;
    ++i;
    FiniteField F(static_cast<std::uint64_t>(ell));
    bool integral_at_ell = true;
    for (const auto& [m, c] : f.terms()) integral_at_ell &= BigInt(denominator(c)) % ell != 0;
    if (!integral_at_ell) continue;
    const auto red = detail::reduce_mod(f, F);
    if (red.homogeneous_degree() != 3 || red.is_zero()) continue;
    if (is_smooth_cubic(red)) return ell;
  }
  return std::nullopt;
}

namespace detail {

inline MultiPoly<RationalField> lift_to_integers(const MultiPoly<FiniteField>& f) {
  RationalField Q;
  std::vector<MultiPoly<RationalField>::Term> t;
  for (const auto& [m, c] : f.terms()) {
    Monomial s;
    for (int i = 0; i < 3; ++i) s.e[i + 1] = m.e[i];
    t.push_back({s, Rational(static_cast<long long>(c))});
  }
  return MultiPoly<RationalField>::from_terms(Q, cubic_variables(), std::move(t));
}

inline MultiPoly<RationalField> perturbation_terms(const Perturbation& pert, std::int64_t p) {
  RationalField Q;
  const auto& vars = cubic_variables();
  MultiPoly<RationalField> sum(Q, vars);
  auto w = MultiPoly<RationalField>::variable(Q, vars, 0);
  for (int i = 0; i < 3; ++i) {
    const auto g = parse_polynomial(pert.g[i], Q, vars);
    if (!g.is_zero()) {
      for (const auto& [m, c] : g.terms())
        if (m.e[0] != 0 || denominator(c) != 1)
          fail(ErrorCode::InvalidPerturbation, "g_" + std::to_string(3 - i) + " must have integer coefficients in x, y, z");
      if (g.homogeneous_degree() != 3 - i)
        fail(ErrorCode::InvalidPerturbation, "g_" + std::to_string(3 - i) + " must be homogeneous of degree " + std::to_string(3 - i));
    }
    if (pert.c[i] != 0 && pert.c[i] % p != 0)
      fail(ErrorCode::InvalidPerturbation,
           "c_" + std::to_string(i) + " must be divisible by p so that the reduction is unchanged");
    sum = sum + g.scaled(Rational(pert.c[i])) * w.pow(i);
  }
  return sum;
}

}  // namespace detail

inline PAdicCubic assemble_pointless_cubic(std::int64_t p, const MultiPoly<FiniteField>& norm_form,
                                           const std::optional<Perturbation>& perturb) {
  RationalField Q;
  const auto& vars = cubic_variables();
  auto w = MultiPoly<RationalField>::variable(Q, vars, 0);
  auto form = w.pow(3).scaled(Rational(p)) + detail::lift_to_integers(norm_form);
  if (perturb) form = form + detail::perturbation_terms(*perturb, p);
  return {p, form, std::nullopt};
}

struct BuildOptions {
  std::uint64_t seed = 0;
  bool paper_line = false;  // p = 11 only: beta = t^625, gamma = t^223
  std::optional<Perturbation> perturbation;
  int max_attempts = 1000;
};

/// p w^3 + f(x, y, z) (+ perturbation), with f the integer lift in [0, p) of the norm form of a
/// random line over GF(p^3) avoiding P^2(GF(p)). Lines whose surface fails the smoothness
/// certificate are redrawn.
inline PAdicCubic build_pointless_cubic(std::int64_t p, const BuildOptions& opt = {}) {
  if (p == 2 || p == 3) fail(ErrorCode::UnsupportedPrime, "p = 2, 3 are not supported");
  require(p >= 5 && is_prime(p), ErrorCode::InvalidField, "p must be a prime >= 5");
  require(!opt.paper_line || p == 11, ErrorCode::InvalidConfig, "the recorded line is defined over GF(11^3)");
  const auto F = cubic_extension(static_cast<std::uint64_t>(p));
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, F.q() - 1);
  CubicProvenance prov;
  prov.p = p;
  prov.line.modulus = F.modulus();
  if (!opt.paper_line) prov.seed = opt.seed;
  prov.perturbation = opt.perturbation;
  for (int attempt = 1; attempt <= opt.max_attempts; ++attempt) {
    FiniteField::Elem beta, gamma;
    if (opt.paper_line) {
      beta = F.pow(F.alpha(), 625);
      gamma = F.pow(F.alpha(), 223);
      prov.line.exponents = {625, 223};
    } else {
      beta = static_cast<FiniteField::Elem>(pick(rng));
      gamma = static_cast<FiniteField::Elem>(pick(rng));
      if (!line_avoids_rational_points(F, beta, gamma)) continue;
    }
    auto s = assemble_pointless_cubic(p, construct_norm_form(F, beta, gamma), opt.perturbation);
    prov.attempts = attempt;
    prov.line.beta = F.coords(beta);
    prov.line.gamma = F.coords(gamma);
    prov.auxiliary_prime = certify_smooth_by_reduction(s.form, p);
    prov.smooth = prov.auxiliary_prime.has_value();
    if (!prov.smooth && !opt.paper_line) continue;
    s.provenance = prov;
    return s;
  }
  fail(ErrorCode::ConstructionFailed,
       "no smooth surface after " + std::to_string(opt.max_attempts) + " line draws");
}

/// Random legal perturbation: c_i in p * [-2, 2], g_{3-i} with coefficients in [-3, 3].
inline Perturbation random_perturbation(std::int64_t p, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> small(-3, 3), mult(-2, 2);
  Perturbation pert;
  const char* names[] = {"x", "y", "z"};
  for (int i = 0; i < 3; ++i) {
    pert.c[i] = BigInt(p) * mult(rng);
    const int deg = 3 - i;
    std::string g;
    for (int a = 0; a <= deg; ++a)
      for (int b = 0; a + b <= deg; ++b) {
        const int c = small(rng);
        if (!c) continue;
        std::string mono = std::to_string(c < 0 ? -c : c);
        const int e[3] = {a, b, deg - a - b};
        for (int v = 0; v < 3; ++v)
          if (e[v]) mono += std::string("*") + names[v] + (e[v] > 1 ? "^" + std::to_string(e[v]) : "");
        g += (g.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ")) + mono;
      }
    pert.g[i] = g.empty() ? "0" : g;
  }
  return pert;
}

}  // namespace dpk
