#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dpk/groebner.hpp"

namespace dpk {

struct GeneralPositionReport {
  std::size_t intersection_degree = 0;  // degree of V(c1, c2)
  std::size_t residual_degree = 0;      // after removing the coordinate points
  std::size_t rank = 0;                 // conditions imposed on cubics = span dimension + 1 in P^9
  std::size_t hyperplanes = 0;          // dimension of linear forms on P^9 vanishing on the image
  bool general_position = false;        // six points not contained in any P^4
};

/// Two plane cubics through the three coordinate points meet in those points plus a residual
/// scheme Z. Z is computed as the saturation of (c1, c2) by the ideal (xy, xz, yz) of the
/// coordinate points; the image of Z under the 3-uple embedding spans a P^(rank-1), where
/// rank is the Hilbert function of Z in degree 3.
template <typename F>
GeneralPositionReport veronese_general_position(const MultiPoly<F>& c1, const MultiPoly<F>& c2,
                                                const GroebnerOptions& opt = {}) {
  require(c1.nvars() == 3 && c2.nvars() == 3 && c1.vars() == c2.vars(), ErrorCode::DimensionError,
          "expected two forms in the same three variables");
  const auto& field = c1.field();
  for (const auto* c : {&c1, &c2}) {
    const auto d = c->homogeneous_degree();
    if (!d) fail(ErrorCode::NotHomogeneous, "form is not homogeneous");
    require(*d == 3 && !c->is_zero(), ErrorCode::InvalidConfig, "expected a cubic form");
    for (int i = 0; i < 3; ++i)
      require(field.is_zero(c->coefficient(Monomial::variable(i, 3))), ErrorCode::InvalidConfig,
              "cubic does not vanish at a coordinate point");
  }
  const auto vars = c1.vars();
  const auto g1 = c1.with_order(MonomialOrder::Grevlex), g2 = c2.with_order(MonomialOrder::Grevlex);
  const auto I = groebner_basis<F>({g1, g2}, opt);
  if (krull_dimension(I, 3) != 1) fail(ErrorCode::DegenerateIntersection, "the cubics share a curve");

  GeneralPositionReport rep;
  rep.intersection_degree = zero_dimensional_degree(I, 3);
  auto x = MultiPoly<F>::variable(field, vars, 0), y = MultiPoly<F>::variable(field, vars, 1),
       z = MultiPoly<F>::variable(field, vars, 2);
  const auto Z = saturate(I, std::vector<MultiPoly<F>>{x * y, x * z, y * z}, 32, opt);
  if (krull_dimension(Z, 3) != 1) fail(ErrorCode::DegenerateIntersection, "residual scheme is not zero-dimensional");
  rep.residual_degree = zero_dimensional_degree(Z, 3);
  if (rep.residual_degree != 6)
    fail(ErrorCode::UnexpectedDegree, "residual scheme has degree " + std::to_string(rep.residual_degree));
  rep.rank = hilbert_function(Z, 3, 3);
  rep.hyperplanes = 10 - rep.rank;
  rep.general_position = rep.rank == 6;
  return rep;
}

/// Random cubic through the three coordinate points over a prime field.
inline MultiPoly<FiniteField> random_cubic_through_coordinate_points(const FiniteField& f, std::mt19937_64& rng) {
  const std::vector<std::string> vars{"x", "y", "z"};
  std::vector<MultiPoly<FiniteField>::Term> terms;
  std::uniform_int_distribution<std::uint64_t> coef(0, f.p() - 1);
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b) {
      Monomial m;
      m.e = {static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b), static_cast<std::uint16_t>(3 - a - b)};
      if (a == 3 || b == 3 || a + b == 0) continue;
      terms.push_back({m, f.from_int(static_cast<std::int64_t>(coef(rng)))});
    }
  return MultiPoly<FiniteField>::from_terms(f, vars, std::move(terms));
}

}  // namespace dpk
