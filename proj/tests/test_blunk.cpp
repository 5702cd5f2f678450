#include <gtest/gtest.h>

#include <random>
#include <set>

#include "dpk/blunk_brauer.hpp"

using namespace dpk;

namespace {

PlaceSet places(std::initializer_list<const char*> names) {
  PlaceSet P;
  for (const char* n : names) P.places.push_back({n});
  return P;
}

CSAInvariants over_k(std::size_t n, int rank, std::vector<QZ> values) {
  auto A = CSAInvariants::zero(EtaleAlgebra::base_field(n), rank);
  for (std::size_t p = 0; p < values.size(); ++p) A.inv[0][p][0] = values[p];
  return A;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalError;
}

}  // namespace

TEST(QZ, Arithmetic) {
  EXPECT_EQ(QZ(1, 3) + QZ(2, 3), QZ());
  EXPECT_EQ(QZ(1, 2) + QZ(1, 3), QZ(5, 6));
  EXPECT_EQ(2 * QZ(1, 3), QZ(2, 3));
  EXPECT_EQ(3 * QZ(1, 3), QZ());
  EXPECT_EQ(QZ(4, 6), QZ(2, 3));
  EXPECT_EQ(QZ(-1, 2), QZ(1, 2));
  EXPECT_EQ(QZ::parse("5/6").to_string(), "5/6");
  EXPECT_EQ(QZ(3, 6).order(), 2);
  EXPECT_THROW(QZ(1, 5), Error);
}

TEST(Restrict, InertCubicKillsThirds) {
  const auto P = places({"p"});
  EtaleAlgebra L;
  L.factors = {{3, {{{1, 3}}}}};
  const auto r = restrict(over_k(1, 9, {QZ(1, 3)}), L);
  EXPECT_TRUE(r.is_split());
}

TEST(Restrict, SplitPlaceCopiesInvariant) {
  EtaleAlgebra L;
  L.factors = {{3, {{{1, 1}, {1, 1}, {1, 1}}}}};
  const auto r = restrict(over_k(1, 4, {QZ(1, 2)}), L);
  for (const auto& x : r.inv[0][0]) EXPECT_EQ(x, QZ(1, 2));
  EXPECT_TRUE(restrict(over_k(1, 4, {QZ()}), L).is_split());
}

TEST(Restrict, MissingSplittingData) {
  EtaleAlgebra L;
  L.factors = {{3, {{{1, 3}}}}};
  EXPECT_EQ(code_of([&] { (void)restrict(over_k(2, 4, {QZ(1, 2), QZ(1, 2)}), L); }), ErrorCode::IncompleteData);
}

TEST(Corestrict, Examples) {
  EtaleAlgebra K;
  K.factors = {{2, {{{1, 1}, {1, 1}}}}};
  auto B = CSAInvariants::zero(K, 9);
  B.inv[0][0] = {QZ(1, 3), QZ(2, 3)};
  EXPECT_TRUE(corestrict(B).is_split());
  // res then cores along a quadratic extension doubles
  EtaleAlgebra F;
  F.factors = {{2, {{{1, 2}}}}};
  const auto cr = corestrict(restrict(over_k(1, 9, {QZ(1, 3)}), F));
  EXPECT_EQ(cr.inv[0][0][0], QZ(2, 3));
  EXPECT_TRUE(corestrict(CSAInvariants::zero(K, 9)).is_split());
}

// Oracle: cores(res(alpha)) = [E:k] alpha, checked against the scalar multiple computed directly.
TEST(Corestrict, CoresResIsMultiplication) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    std::vector<QZ> alpha(n);
    QZ sum;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      alpha[p] = QZ(static_cast<std::int64_t>(rng() % 6), 6);
      sum = sum + alpha[p];
    }
    alpha[n - 1] = -sum;
    EtaleAlgebra E;
    const int factors = 1 + static_cast<int>(rng() % 3);
    for (int a = 0; a < factors; ++a) {
      FieldFactor f;
      f.degree = 1 + static_cast<int>(rng() % 6);
      for (std::size_t p = 0; p < n; ++p) {
        std::vector<LocalSplit> s;
        int left = f.degree;
        while (left > 0) {
          const int d = 1 + static_cast<int>(rng() % left);
          std::vector<int> divisors;
          for (int e = 1; e <= d; ++e)
            if (d % e == 0) divisors.push_back(e);
          const int e = divisors[rng() % divisors.size()];
          s.push_back({e, d / e});
          left -= d;
        }
        f.splitting.push_back(s);
      }
      E.factors.push_back(f);
    }
    const auto cr = corestrict(restrict(over_k(n, 9, alpha), E));
    for (std::size_t p = 0; p < n; ++p) EXPECT_EQ(cr.inv[0][p][0], E.degree() * alpha[p]);
  }
}

TEST(Membership, C1Examples) {
  const auto P = places({"p"});
  EtaleAlgebra K;
  K.factors = {{2, {{{1, 2}}}}};
  EtaleAlgebra L;
  L.factors = {{3, {{{1, 3}}}}};
  EXPECT_TRUE(in_C1(CSAInvariants::zero(K, 9), K, L, P));
  auto B = CSAInvariants::zero(K, 9);
  B.inv[0][0][0] = QZ(1, 3);
  EXPECT_FALSE(in_C1(B, K, L, P));  // corestriction 1/3
  const auto T = blunk_examples::degree_three();
  EXPECT_TRUE(in_C1(T.B, T.K, T.L, T.places));
  EXPECT_EQ(code_of([&] { (void)in_C1(T.Q, T.K, T.L, T.places); }), ErrorCode::RankError);
  EXPECT_EQ(code_of([&] { (void)in_C2(T.B, T.K, T.L, T.places); }), ErrorCode::RankError);
}

TEST(MinimalDegree, RecordedConstructions) {
  EXPECT_EQ(minimal_point_degree(blunk_examples::degree_two()).degree, 2);
  EXPECT_EQ(minimal_point_degree(blunk_examples::degree_three()).degree, 3);
  EXPECT_EQ(minimal_point_degree(blunk_examples::degree_six()).degree, 6);
  EXPECT_EQ(minimal_point_degree(blunk_examples::local_degree_three()).degree, 3);
}

TEST(MinimalDegree, SplitTripleHasRationalPoint) {
  auto T = blunk_examples::degree_six();
  T.B = CSAInvariants::zero(T.K, 9);
  T.Q = CSAInvariants::zero(T.L, 4);
  EXPECT_EQ(minimal_point_degree(T).degree, 1);
}

TEST(MinimalDegree, ArchimedeanQuaternion) {
  // Q = 1/2 at a real place and at p, both split in L = k^3 component-wise; K imaginary quadratic.
  BlunkTriple T;
  T.places.places = {{"inf", true}, {"p"}};
  T.K.factors = {{2, {{{1, 2}}, {{1, 2}}}}};
  T.L = EtaleAlgebra::split(3, 2);
  T.B = CSAInvariants::zero(T.K, 9);
  T.Q = CSAInvariants::zero(T.L, 4);
  for (std::size_t a : {1u, 2u}) T.Q.inv[a] = {{QZ(1, 2)}, {QZ(1, 2)}};
  EXPECT_EQ(minimal_point_degree(T).degree, 2);
}

TEST(Validation, Failures) {
  auto T = blunk_examples::degree_six();
  T.Q.inv[0][1] = {QZ(1, 2), QZ(), QZ()};  // reciprocity broken
  EXPECT_EQ(code_of([&] { T.validate(); }), ErrorCode::InvalidConfig);
  T = blunk_examples::degree_six();
  T.K.factors[0].splitting[0] = {{1, 1}};  // sum of e*f wrong
  EXPECT_EQ(code_of([&] { T.validate(); }), ErrorCode::InvalidConfig);
  T = blunk_examples::degree_six();
  T.B.inv[0][0] = {QZ(1, 2), QZ(1, 2)};  // order 2 in a degree-3 algebra
  EXPECT_EQ(code_of([&] { T.validate(); }), ErrorCode::InvalidConfig);
  // K = k x k with Q nontrivial cannot lie in C2 over a local field
  BlunkTriple loc;
  loc.model = FieldModel::LocalField;
  loc.places.places = {{"p"}};
  loc.K = EtaleAlgebra::split(2, 1);
  loc.L.factors = {{1, {{LocalSplit{}}}}, {2, {{{1, 2}}}}};
  loc.B = CSAInvariants::zero(loc.K, 9);
  loc.Q = CSAInvariants::zero(loc.L, 4);
  loc.Q.inv[1][0][0] = QZ(1, 2);
  EXPECT_EQ(code_of([&] { loc.validate(); }), ErrorCode::InvalidConfig);
}

TEST(LocalModel, NeverSix) {
  auto r = local_model_sweep();
  EXPECT_GT(r.configurations, 10000u);
  EXPECT_EQ(r.degrees.count(6), 0u);
  EXPECT_GT(r.degrees[2], 0u);
  EXPECT_GT(r.degrees[3], 0u);
  std::uint64_t valid = 0;
  for (const auto& [d, c] : r.degrees) valid += c;
  EXPECT_EQ(valid + r.invalid + r.outside_C + r.undetermined, r.configurations);
}

TEST(NumberModel, DegreeDividesSix) {
  std::mt19937_64 rng(3);
  int tested = 0;
  std::set<int> seen;
  const std::vector<std::vector<LocalSplit>> quad = {{{1, 1}, {1, 1}}, {{1, 2}}, {{2, 1}}};
  const std::vector<std::vector<LocalSplit>> cubic = {{{1, 1}, {1, 1}, {1, 1}}, {{1, 1}, {1, 2}}, {{1, 3}}, {{3, 1}}};
  for (int trial = 0; trial < 40000; ++trial) {
    BlunkTriple T;
    T.places.places = {{"p"}, {"q"}, {"r"}};
    FieldFactor k2{2, {}}, k3{3, {}};
    for (int p = 0; p < 3; ++p) {
      k2.splitting.push_back(quad[rng() % quad.size()]);
      k3.splitting.push_back(cubic[rng() % cubic.size()]);
    }
    T.K.factors = {k2};
    T.L.factors = {k3};
    T.B = CSAInvariants::zero(T.K, 9);
    T.Q = CSAInvariants::zero(T.L, 4);
    for (auto& per : T.B.inv[0])
      for (auto& x : per) x = QZ(static_cast<std::int64_t>(rng() % 3), 3);
    for (auto& per : T.Q.inv[0])
      for (auto& x : per) x = QZ(static_cast<std::int64_t>(rng() % 2), 2);
    try {
      T.validate();
    } catch (const Error&) {
      continue;
    }
    ++tested;
    const int d = minimal_point_degree(T).degree;
    seen.insert(d);
    EXPECT_EQ(6 % d, 0);
    EXPECT_EQ(d == 1, T.B.is_split() && T.Q.is_split());
  }
  EXPECT_GT(tested, 50);
  EXPECT_EQ(seen, (std::set<int>{1, 2, 3, 6}));
}

TEST(Json, RoundTrip) {
  for (const auto& T : {blunk_examples::degree_two(), blunk_examples::degree_three(), blunk_examples::degree_six(),
                        blunk_examples::local_degree_three()}) {
    const auto j = triple_to_json(T);
    EXPECT_EQ(triple_to_json(triple_from_json(j)), j);
    EXPECT_EQ(minimal_point_degree(triple_from_json(j)).degree, minimal_point_degree(T).degree);
  }
  const auto bad = nlohmann::json::parse(R"({"places":[{"name":"p"}],"K":{"factors":[{"degree":2}]},
    "L":{"split":3},"B":{"rank":9},"Q":{"rank":4}})");
  EXPECT_EQ(code_of([&] { (void)triple_from_json(bad); }), ErrorCode::IncompleteData);
}
