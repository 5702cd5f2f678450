#include <gtest/gtest.h>

#include <random>

#include "dpk/general_position.hpp"

using namespace dpk;

namespace {
const std::vector<std::string> kXYZ{"x", "y", "z"};
const std::vector<std::string> kWXYZ{"w", "x", "y", "z"};

template <typename F>
std::vector<std::string> strings(const std::vector<MultiPoly<F>>& b) {
  std::vector<std::string> s;
  for (const auto& p : b) s.push_back(p.to_string());
  return s;
}

// Brute-force search for a projective point of V(gens) over GF(q).
bool has_point_over(const FiniteField& F, const std::vector<MultiPoly<FiniteField>>& gens) {
  const int n = gens.front().nvars();
  std::vector<FiniteField::Elem> x(n, 0);
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= F.q();
  for (std::uint64_t code = 1; code < total; ++code) {
    auto c = code;
    for (int i = 0; i < n; ++i, c /= F.q()) x[i] = static_cast<FiniteField::Elem>(c % F.q());
    bool zero = true;
    for (const auto& g : gens) zero &= g.evaluate(x) == 0;
    if (zero) return true;
  }
  return false;
}
}  // namespace

TEST(Groebner, SingleGenerator) {
  RationalField Q;
  auto b = groebner_basis<RationalField>({parse_polynomial("x", Q, kXYZ)});
  EXPECT_EQ(strings(b), std::vector<std::string>{"x"});
}

TEST(Groebner, LinearLex) {
  RationalField Q;
  auto b = groebner_basis<RationalField>({parse_polynomial("x - y", Q, kXYZ, MonomialOrder::Lex),
                                          parse_polynomial("y - z", Q, kXYZ, MonomialOrder::Lex)});
  EXPECT_EQ(strings(b), (std::vector<std::string>{"y - z", "x - z"}));
}

TEST(Groebner, ContainsYCubed) {
  RationalField Q;
  auto b = groebner_basis<RationalField>({parse_polynomial("x^2", Q, kXYZ), parse_polynomial("x*y + y^2", Q, kXYZ)});
  EXPECT_EQ(strings(b), (std::vector<std::string>{"x*y + y^2", "x^2", "y^3"}));
}

TEST(Groebner, Idempotent) {
  FiniteField F(101);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    auto a = random_cubic_through_coordinate_points(F, rng), b = random_cubic_through_coordinate_points(F, rng);
    auto g = groebner_basis<FiniteField>({a, b});
    EXPECT_EQ(groebner_basis(g), g);
  }
}

TEST(Groebner, MembershipIndependentOfOrder) {
  FiniteField F(31);
  std::mt19937_64 rng(6);
  for (int t = 0; t < 6; ++t) {
    auto a = random_cubic_through_coordinate_points(F, rng), b = random_cubic_through_coordinate_points(F, rng);
    auto grevlex = groebner_basis<FiniteField>({a, b});
    auto lex = groebner_basis<FiniteField>({a.with_order(MonomialOrder::Lex), b.with_order(MonomialOrder::Lex)});
    auto c = random_cubic_through_coordinate_points(F, rng);
    auto x = MultiPoly<FiniteField>::variable(F, kXYZ, 0);
    const std::vector<MultiPoly<FiniteField>> corpus{a * x + b * c, c, a * b - b * a + c * x, a * c * c};
    for (const auto& p : corpus)
      EXPECT_EQ(ideal_contains(grevlex, p), ideal_contains(lex, p.with_order(MonomialOrder::Lex)));
    EXPECT_TRUE(ideal_contains(grevlex, a * c + b * x * x * x));
  }
}

TEST(Groebner, BudgetExceeded) {
  FiniteField F(101);
  std::mt19937_64 rng(7);
  GroebnerOptions tiny;
  tiny.max_reduction_steps = 3;
  auto a = random_cubic_through_coordinate_points(F, rng), b = random_cubic_through_coordinate_points(F, rng);
  try {
    groebner_basis<FiniteField>({a, b}, tiny);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}

TEST(ProjectiveEmpty, Examples) {
  RationalField Q;
  EXPECT_TRUE(projective_empty<RationalField>(
      {parse_polynomial("x", Q, kXYZ), parse_polynomial("y", Q, kXYZ), parse_polynomial("z", Q, kXYZ)}));
  const std::vector<std::string> xy{"x", "y"};
  EXPECT_FALSE(projective_empty<RationalField>({parse_polynomial("x*y", Q, xy)}));
  FiniteField F7(7);
  auto fermat = parse_polynomial("x^3 + y^3 + z^3 + w^3", F7, kWXYZ);
  auto rep = projective_emptiness(jacobian_ideal(fermat));
  EXPECT_TRUE(rep.empty);
  EXPECT_EQ(rep.powers, (std::vector<int>{2, 2, 2, 2}));  // partials are 3 x_i^2
}

TEST(ProjectiveEmpty, NotHomogeneous) {
  RationalField Q;
  try {
    projective_empty<RationalField>({parse_polynomial("x + y^2", Q, kXYZ)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHomogeneous);
  }
}

TEST(ProjectiveEmpty, AgreesWithPointSearchOnSmallField) {
  // Over GF(2), V(I) nonempty over GF(2) implies nonempty; empty answers must have no GF(4) points.
  FiniteField F2(2), F4(2, 2);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 40; ++t) {
    std::vector<MultiPoly<FiniteField>> gens;
    for (int g = 0; g < 3; ++g) {
      std::vector<MultiPoly<FiniteField>::Term> terms;
      for (int a = 0; a <= 2; ++a)
        for (int b = 0; a + b <= 2; ++b)
          if (rng() % 2) {
            Monomial m;
            m.e = {static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b), static_cast<std::uint16_t>(2 - a - b)};
            terms.push_back({m, 1});
          }
      gens.push_back(MultiPoly<FiniteField>::from_terms(F2, kXYZ, terms));
    }
    if (std::all_of(gens.begin(), gens.end(), [](const auto& g) { return g.is_zero(); })) continue;
    const bool empty = projective_empty(gens);
    if (has_point_over(F2, gens)) { EXPECT_FALSE(empty); }
    std::vector<MultiPoly<FiniteField>> lifted;
    for (const auto& g : gens) lifted.push_back(g.map_coefficients(F4, [](auto c) { return c; }));
    if (empty) { EXPECT_FALSE(has_point_over(F4, lifted)); }
  }
}

TEST(ProjectiveEmpty, InvariantUnderLinearChange) {
  FiniteField F(11);
  std::mt19937_64 rng(9);
  auto fermat = parse_polynomial("x^3 + y^3 + z^3 + w^3", F, kWXYZ);
  auto singular = parse_polynomial("w*x*y + z^3", F, kWXYZ);
  const std::vector<std::vector<std::vector<int>>> unimodular{
      {{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 2}, {0, 0, 0, 1}},
      {{0, 1, 0, 0}, {1, 0, 3, 0}, {0, 0, 1, 0}, {1, 1, 1, 1}},
      {{2, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 0}, {5, 0, 7, 1}}};
  for (const auto& m : unimodular) {
    std::vector<MultiPoly<FiniteField>> images;
    for (int i = 0; i < 4; ++i) {
      MultiPoly<FiniteField> l(F, kWXYZ);
      for (int j = 0; j < 4; ++j)
        l = l + MultiPoly<FiniteField>::variable(F, kWXYZ, j).scaled(F.from_int(std::int64_t{m[i][j]}));
      images.push_back(l);
    }
    EXPECT_TRUE(is_smooth_cubic(fermat.substitute(images)));
    EXPECT_FALSE(is_smooth_cubic(singular.substitute(images)));
  }
}

TEST(Smooth, Cubics) {
  RationalField Q;
  EXPECT_TRUE(is_smooth_cubic(parse_polynomial("x^3 + y^3 + z^3 + w^3", Q, kWXYZ)));
  EXPECT_FALSE(is_smooth_cubic(parse_polynomial("x^3", Q, kWXYZ)));
  EXPECT_TRUE(is_smooth_cubic(parse_polynomial(
      "11*w^3 + x^3 + 8*x^2*y + 7*x*y^2 + 10*y^3 + 8*x^2*z + 6*x*y*z + 10*y^2*z + 8*x*z^2 + 10*y*z^2 + 8*z^3", Q, kWXYZ)));
  // Fermat in characteristic 3 is a triple plane
  EXPECT_FALSE(is_smooth_cubic(parse_polynomial("x^3 + y^3 + z^3 + w^3", FiniteField(3), kWXYZ)));
  EXPECT_THROW(is_smooth_cubic(parse_polynomial("x^2*y + z", Q, kWXYZ)), Error);
}

TEST(Smooth, QuadricPairs) {
  RationalField Q;
  const std::vector<std::string> v{"x0", "x1", "x2", "x3", "x4"};
  auto q1 = parse_polynomial("x0^2 + x1^2 + x2^2 + x3^2 + x4^2", Q, v);
  auto q2 = parse_polynomial("x1^2 + 2*x2^2 + 3*x3^2 + 4*x4^2", Q, v);
  EXPECT_TRUE(is_smooth_quadric_pair(q1, q2));
  // sharing the plane x0 = x1 = 0
  auto s1 = parse_polynomial("x0*x2 + x1*x3", Q, v), s2 = parse_polynomial("x0*x4 + x1*x2", Q, v);
  EXPECT_FALSE(is_smooth_quadric_pair(s1, s2));
}

TEST(Smooth, WeightedModels) {
  FiniteField F(5);
  auto dp2 = parse_polynomial("w^2 + x^4 + y^4 + z^4", F, kWXYZ);
  EXPECT_TRUE(is_smooth_weighted(dp2, {2, 1, 1, 1}, {{1, 0, 0, 0}}));
  auto through_vertex = parse_polynomial("w*x^2 + x^4 + y^4 + z^4", F, kWXYZ);
  EXPECT_FALSE(is_smooth_weighted(through_vertex, {2, 1, 1, 1}, {{1, 0, 0, 0}}));
  FiniteField F7(7);
  auto dp1 = parse_polynomial("w^2 + x^3 + y^6 + z^6", F7, kWXYZ);
  EXPECT_TRUE(is_smooth_weighted(dp1, {3, 2, 1, 1}, {{1, 0, 0, 0}, {0, 1, 0, 0}}));
  auto cusp = parse_polynomial("w^2 + x^3 + y^6", F7, kWXYZ);
  EXPECT_FALSE(is_smooth_weighted(cusp, {3, 2, 1, 1}, {{1, 0, 0, 0}, {0, 1, 0, 0}}));
}

TEST(Ideals, IntersectionAndColon) {
  RationalField Q;
  auto x = parse_polynomial("x", Q, kXYZ), y = parse_polynomial("y", Q, kXYZ);
  auto meet = intersect<RationalField>({x}, {y});
  EXPECT_EQ(strings(meet), std::vector<std::string>{"x*y"});
  auto c = colon<RationalField>(groebner_basis<RationalField>({x * y, x * x}), x);
  EXPECT_EQ(strings(c), (std::vector<std::string>{"y", "x"}));
  auto sat = saturate<RationalField>({x * x * y, x * y * y}, {x});
  EXPECT_EQ(strings(sat), std::vector<std::string>{"y"});
}

TEST(Ideals, HilbertFunctionOfPoints) {
  RationalField Q;
  // three coordinate points of P^2
  auto b = groebner_basis<RationalField>(
      {parse_polynomial("x*y", Q, kXYZ), parse_polynomial("x*z", Q, kXYZ), parse_polynomial("y*z", Q, kXYZ)});
  EXPECT_EQ(hilbert_function(b, 3, 0), 1u);
  EXPECT_EQ(hilbert_function(b, 3, 1), 3u);
  EXPECT_EQ(hilbert_function(b, 3, 5), 3u);
  EXPECT_EQ(krull_dimension(b, 3), 1);
  EXPECT_EQ(zero_dimensional_degree(b, 3), 3u);
}

TEST(Veronese, PaperForms) {
  RationalField Q;
  auto c1 = parse_polynomial("x*y^2 + x^2*z - x*y*z + x*z^2 + y*z^2", Q, kXYZ);
  auto c2 = parse_polynomial("x^2*y - x*y^2 + x^2*z + x*y*z - y^2*z + x*z^2", Q, kXYZ);
  auto r = veronese_general_position(c1, c2);
  EXPECT_EQ(r.intersection_degree, 9u);
  EXPECT_EQ(r.residual_degree, 6u);
  EXPECT_EQ(r.rank, 6u);
  EXPECT_EQ(r.hyperplanes, 4u);
  EXPECT_TRUE(r.general_position);
}

TEST(Veronese, EqualFormsDegenerate) {
  RationalField Q;
  auto c1 = parse_polynomial("x*y^2 + x^2*z - x*y*z + x*z^2 + y*z^2", Q, kXYZ);
  try {
    veronese_general_position(c1, c1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateIntersection);
  }
}

TEST(Veronese, SixPointsOnAConic) {
  // Both cubics contain the conic x*y + y*z + z*x through the coordinate points: positive-dimensional.
  RationalField Q;
  auto c1 = parse_polynomial("(x*y + y*z + z*x)*x", Q, kXYZ), c2 = parse_polynomial("(x*y + y*z + z*x)*(y + 2*z)", Q, kXYZ);
  EXPECT_THROW(veronese_general_position(c1, c2), Error);
}

TEST(Veronese, RandomPairOverGF101) {
  FiniteField F(101);
  std::mt19937_64 rng(101);
  auto c1 = random_cubic_through_coordinate_points(F, rng), c2 = random_cubic_through_coordinate_points(F, rng);
  auto r = veronese_general_position(c1, c2);
  EXPECT_EQ(r.residual_degree, 6u);
  EXPECT_TRUE(r.general_position);
}
