#include <gtest/gtest.h>

#include <random>

#include "dpk/padic_pointless.hpp"

using namespace dpk;

namespace {

// Field norm of a in GF(p^3): a^(1 + p + p^2).
FiniteField::Elem field_norm(const FiniteField& F, FiniteField::Elem a) {
  const std::uint64_t p = F.p();
  return F.pow(a, 1 + p + p * p);
}

// Exhaustive search over (Z/p^2)^4 for primitive zeros with a unit partial derivative.
bool brute_hensel_mod_p2(const MultiPoly<RationalField>& f, std::int64_t p) {
  const std::int64_t m = p * p;
  std::vector<std::pair<Monomial, std::int64_t>> terms;
  for (const auto& [mono, c] : f.terms()) terms.push_back({mono, static_cast<std::int64_t>(BigInt(numerator(c)) % m)});
  auto eval = [&](const std::vector<std::pair<Monomial, std::int64_t>>& t, const std::array<std::int64_t, 4>& x,
                  std::int64_t mod) {
    std::int64_t acc = 0;
    for (const auto& [mono, c] : t) {
      std::int64_t v = c % mod;
      for (int i = 0; i < 4; ++i)
        for (int e = 0; e < mono.e[i]; ++e) v = v * x[i] % mod;
      acc = (acc + v) % mod;
    }
    return (acc + mod) % mod;
  };
  std::vector<std::vector<std::pair<Monomial, std::int64_t>>> grads;
  for (int i = 0; i < 4; ++i) {
    std::vector<std::pair<Monomial, std::int64_t>> t;
    for (const auto& [mono, c] : f.derivative(i).terms())
      t.push_back({mono, static_cast<std::int64_t>(BigInt(numerator(c)) % p)});
    grads.push_back(t);
  }
  std::array<std::int64_t, 4> x{};
  for (x[0] = 0; x[0] < m; ++x[0])
    for (x[1] = 0; x[1] < m; ++x[1])
      for (x[2] = 0; x[2] < m; ++x[2])
        for (x[3] = 0; x[3] < m; ++x[3]) {
          if (x[0] % p == 0 && x[1] % p == 0 && x[2] % p == 0 && x[3] % p == 0) continue;
          if (eval(terms, x, m) != 0) continue;
          for (const auto& g : grads)
            if (eval(g, x, p) != 0) return true;
        }
  return false;
}

PAdicCubic recorded_surface() {
  BuildOptions o;
  o.paper_line = true;
  return build_pointless_cubic(11, o);
}

}  // namespace

TEST(NormForm, RecordedSurfaceIsByteExact) {
  const auto s = recorded_surface();
  EXPECT_EQ(s.form.pretty(), "11w^3 + x^3 + 8x^2y + 7xy^2 + 10y^3 + 8x^2z + 6xyz + 10y^2z + 8xz^2 + 10yz^2 + 8z^3");
  ASSERT_TRUE(s.provenance);
  EXPECT_EQ(s.provenance->line.exponents, std::make_pair(625, 223));
  EXPECT_TRUE(s.provenance->smooth);
}

TEST(NormForm, ValuesAreFieldNorms) {
  for (std::uint64_t p : {5u, 7u, 11u}) {
    const auto F = cubic_extension(p);
    std::mt19937_64 rng(p);
    std::uniform_int_distribution<std::uint64_t> pick(0, F.q() - 1);
    FiniteField::Elem b, g;
    do {
      b = static_cast<FiniteField::Elem>(pick(rng));
      g = static_cast<FiniteField::Elem>(pick(rng));
    } while (!line_avoids_rational_points(F, b, g));
    const auto f = construct_norm_form(F, b, g);
    FiniteField Fp(p);
    for (std::uint64_t x = 0; x < p; ++x)
      for (std::uint64_t y = 0; y < p; ++y)
        for (std::uint64_t z = 0; z < p; ++z) {
          const auto lin = F.add(F.from_int(static_cast<std::int64_t>(x)),
                                 F.add(F.mul(b, F.from_int(static_cast<std::int64_t>(y))),
                                       F.mul(g, F.from_int(static_cast<std::int64_t>(z)))));
          const auto n = field_norm(F, lin);
          ASSERT_TRUE(F.in_prime_field(n));
          const std::vector<FiniteField::Elem> pt{static_cast<FiniteField::Elem>(x), static_cast<FiniteField::Elem>(y),
                                                  static_cast<FiniteField::Elem>(z)};
          EXPECT_EQ(f.evaluate(pt), n);
          if (x || y || z) {
            EXPECT_NE(n, 0u);
          }
        }
  }
}

TEST(NormForm, DependentLineIsRejected) {
  const auto F = cubic_extension(7);
  const auto b = F.alpha();
  const auto g = F.add(b, F.one());  // 1, b, b + 1 dependent
  EXPECT_FALSE(line_avoids_rational_points(F, b, g));
  try {
    (void)construct_norm_form(F, b, g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LineHasRationalPoint);
  }
}

TEST(Build, RefusesSmallPrimes) {
  for (std::int64_t p : {2, 3}) {
    try {
      (void)build_pointless_cubic(p);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::UnsupportedPrime);
    }
  }
  EXPECT_THROW((void)build_pointless_cubic(9), Error);
}

TEST(Build, ReductionIsNormForm) {
  for (std::int64_t p : {5, 7, 13}) {
    BuildOptions o;
    o.seed = 11;
    const auto s = build_pointless_cubic(p, o);
    const auto& prov = *s.provenance;
    const auto F = cubic_extension(static_cast<std::uint64_t>(p));
    auto signed_coords = [](const std::vector<std::uint64_t>& c) { return std::vector<std::int64_t>(c.begin(), c.end()); };
    const auto b = F.from_coords(signed_coords(prov.line.beta));
    const auto g = F.from_coords(signed_coords(prov.line.gamma));
    const auto f = construct_norm_form(F, b, g);
    FiniteField Fp(static_cast<std::uint64_t>(p));
    const auto red = s.form.map_coefficients(Fp, [&](const Rational& c) { return Fp.from_rational(c); });
    for (const auto& [m, c] : f.terms()) {
      Monomial s4;
      for (int i = 0; i < 3; ++i) s4.e[i + 1] = m.e[i];
      EXPECT_EQ(red.coefficient(s4), c);
    }
    EXPECT_EQ(red.terms().size(), f.terms().size());
    // lift lies in [0, p)
    for (const auto& [m, c] : s.form.terms())
      if (m.e[0] == 0) {
        EXPECT_TRUE(c >= 0 && c < p);
      }
  }
}

TEST(Build, DeterministicInSeed) {
  BuildOptions o;
  o.seed = 99;
  EXPECT_EQ(build_pointless_cubic(7, o).form, build_pointless_cubic(7, o).form);
  o.seed = 100;
  // different seeds need not differ, but they draw fresh lines
  EXPECT_NO_THROW((void)build_pointless_cubic(7, o));
}

TEST(Verify, RecordedSurface) {
  const auto s = recorded_surface();
  const auto c = verify_pointless(s);
  EXPECT_EQ(c.verdict, PointlessVerdict::NoQpPoints);
  ASSERT_EQ(c.residue_points.size(), 1u);
  EXPECT_EQ(c.residue_points[0], (std::array<std::int64_t, 4>{1, 0, 0, 0}));
  EXPECT_EQ(c.valuation.w3_valuation, 1);
  EXPECT_EQ(c.valuation.w3_class_mod3, 1);
  EXPECT_GE(c.valuation.other_terms_lower_bound, 2);
  EXPECT_FALSE(find_hensel_point(s.form, 11, 3));
}

TEST(Verify, PerturbedFamiliesAgainstBruteForce) {
  for (std::int64_t p : {5, 7}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      std::mt19937_64 rng(seed);
      BuildOptions o;
      o.seed = seed;
      o.perturbation = random_perturbation(p, rng);
      const auto s = build_pointless_cubic(p, o);
      EXPECT_EQ(verify_pointless(s).verdict, PointlessVerdict::NoQpPoints);
      EXPECT_FALSE(find_hensel_point(s.form, p, 3));
      if (p == 5 && seed < 2) {
        EXPECT_FALSE(brute_hensel_mod_p2(s.form, p));
      }
    }
  }
}

TEST(Verify, SurfaceWithPointsIsInconclusive) {
  RationalField Q;
  const auto f = parse_polynomial("w^3 + x^3 + y^3 + z^3", Q, cubic_variables());
  const PAdicCubic s{5, f, std::nullopt};
  const auto c = verify_pointless(s);
  EXPECT_EQ(c.verdict, PointlessVerdict::Inconclusive);
  EXPECT_TRUE(find_hensel_point(f, 5, 2));
  EXPECT_TRUE(brute_hensel_mod_p2(f, 5));
}

TEST(Verify, WeakDominanceIsInconclusive) {
  RationalField Q;
  // reduction is the norm form, but 5 w^2 x has valuation 2 >= v(25 w^3)
  auto s = build_pointless_cubic(5);
  const auto w = MultiPoly<RationalField>::variable(Q, cubic_variables(), 0);
  const auto x = MultiPoly<RationalField>::variable(Q, cubic_variables(), 1);
  s.form = s.form + w.pow(3).scaled(Rational(20)) + (w.pow(2) * x).scaled(Rational(5));
  EXPECT_EQ(verify_pointless(s).verdict, PointlessVerdict::Inconclusive);
}

TEST(Perturbation, UnitConstantTermIsRejected) {
  Perturbation pert;
  pert.c[0] = 1;
  pert.g[0] = "x^3";
  BuildOptions o;
  o.perturbation = pert;
  try {
    (void)build_pointless_cubic(7, o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidPerturbation);
  }
  pert.c[0] = 7;
  pert.g[0] = "w*x^2";
  o.perturbation = pert;
  EXPECT_THROW((void)build_pointless_cubic(7, o), Error);
  pert.g[0] = "x^2";
  o.perturbation = pert;
  EXPECT_THROW((void)build_pointless_cubic(7, o), Error);
}

// A unit c_0 changes the reduction and can create points: the bound must be v(c_i) >= 1 for every i.
TEST(Perturbation, UnitConstantTermCreatesPoints) {
  const auto s = recorded_surface();
  RationalField Q;
  const auto cancel = parse_polynomial("x^2*y", Q, cubic_variables()) - s.form +
                      parse_polynomial("11*w^3", Q, cubic_variables());
  const PAdicCubic bad{11, s.form + cancel, std::nullopt};  // 11 w^3 + x^2 y
  EXPECT_EQ(verify_pointless(bad).verdict, PointlessVerdict::Inconclusive);
  const auto pt = find_hensel_point(bad.form, 11, 3);
  ASSERT_TRUE(pt);
}

TEST(Smoothness, AuxiliaryPrimeCertificate) {
  const auto s = recorded_surface();
  const auto ell = certify_smooth_by_reduction(s.form, 11);
  ASSERT_TRUE(ell);
  FiniteField F(static_cast<std::uint64_t>(*ell));
  EXPECT_TRUE(is_smooth_cubic(s.form.map_coefficients(F, [&](const Rational& c) { return F.from_rational(c); })));
  RationalField Q;
  const auto cone = parse_polynomial("x^3 + y^3 + z^3", Q, cubic_variables());
  EXPECT_FALSE(certify_smooth_by_reduction(cone, 5, 3));
}
