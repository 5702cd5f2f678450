#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dpk/groebner.hpp"
#include "dpk/weyl_groups.hpp"

namespace dpk {

/// Enumeration cap in affine tuples; DPK_BUDGET overrides the default of 1e8.
inline std::uint64_t enumeration_budget() {
  if (const char* env = std::getenv("DPK_BUDGET")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 100000000ull;
}

/// Calls visit(point) once per point of the weighted projective space P(weights) over F.
/// Unweighted spaces use the representative whose first nonzero coordinate is 1; weighted
/// ones use the smallest tuple (in encoding order) of each scaling orbit. Two F-tuples with
/// support S are the same point iff they differ by lambda^(w_i) with lambda over the algebraic
/// closure, which amounts to F* acting with the weights divided by their gcd over S.
inline std::uint64_t enumerate_projective_points(const FiniteField& F, const std::vector<int>& weights,
                                                 const std::function<void(const std::vector<FiniteField::Elem>&)>& visit,
                                                 std::uint64_t budget = enumeration_budget()) {
  const int n = static_cast<int>(weights.size());
  require(n >= 1, ErrorCode::DimensionError, "need at least one coordinate");
  for (int w : weights) require(w >= 1, ErrorCode::InvalidConfig, "weights must be positive");
  const std::uint64_t q = F.q();
  long double cells = 1;
  for (int i = 0; i < n; ++i) cells *= static_cast<long double>(q);
  const bool weighted = std::any_of(weights.begin(), weights.end(), [](int w) { return w != 1; });
  const long double cost = weighted ? cells * static_cast<long double>(q - 1) : cells;
  if (cost > static_cast<long double>(budget))
    fail(ErrorCode::BudgetExceeded, "enumeration of " + std::to_string(static_cast<double>(cost)) + " cells exceeds the budget");

  std::vector<FiniteField::Elem> x(n, 0);
  std::uint64_t emitted = 0;
  if (!weighted) {
    for (int lead = 0; lead < n; ++lead) {
      std::fill(x.begin(), x.end(), 0);
      x[lead] = 1;
      const int free = n - lead - 1;
      std::uint64_t total = 1;
      for (int i = 0; i < free; ++i) total *= q;
      for (std::uint64_t code = 0; code < total; ++code) {
        auto c = code;
        for (int i = lead + 1; i < n; ++i, c /= q) x[i] = static_cast<FiniteField::Elem>(c % q);
        visit(x);
        ++emitted;
      }
    }
    return emitted;
  }
  std::vector<std::vector<FiniteField::Elem>> steps(std::size_t{1} << n, std::vector<FiniteField::Elem>(n, 1));
  for (std::size_t mask = 1; mask < steps.size(); ++mask) {
    int g = 0;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) g = std::gcd(g, weights[i]);
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) steps[mask][i] = F.pow(F.generator(), static_cast<std::uint64_t>(weights[i] / g));
  }
  const auto total = static_cast<std::uint64_t>(cells);
  std::vector<FiniteField::Elem> y(n);
  for (std::uint64_t code = 1; code < total; ++code) {
    auto c = code;
    std::size_t mask = 0;
    // x[0] is the most significant digit so that tuple order matches code order
    for (int i = n - 1; i >= 0; --i, c /= q) {
      x[i] = static_cast<FiniteField::Elem>(c % q);
      if (x[i]) mask |= std::size_t{1} << i;
    }
    const auto& step = steps[mask];
    y = x;
    bool minimal = true;
    for (std::uint64_t k = 1; k < q - 1; ++k) {
      for (int i = 0; i < n; ++i) y[i] = F.mul(y[i], step[i]);
      if (y < x) {
        minimal = false;
        break;
      }
    }
    if (minimal) {
      visit(x);
      ++emitted;
    }
  }
  return emitted;
}

enum class SurfaceKind { Cubic, QuadricPair, WeightedQuartic, WeightedSextic };

inline std::string to_string(SurfaceKind k) {
  switch (k) {
    case SurfaceKind::Cubic: return "cubic";
    case SurfaceKind::QuadricPair: return "quadric-pair";
    case SurfaceKind::WeightedQuartic: return "dp2";
    case SurfaceKind::WeightedSextic: return "dp1";
  }
  return "?";
}

inline SurfaceKind parse_surface_kind(const std::string& s) {
  if (s == "cubic") return SurfaceKind::Cubic;
  if (s == "quadric-pair") return SurfaceKind::QuadricPair;
  if (s == "dp2") return SurfaceKind::WeightedQuartic;
  if (s == "dp1") return SurfaceKind::WeightedSextic;
  fail(ErrorCode::InvalidConfig, "unknown surface kind '" + s + "' (cubic, quadric-pair, dp2, dp1)");
}

inline int surface_degree(SurfaceKind k) {
  switch (k) {
    case SurfaceKind::Cubic: return 3;
    case SurfaceKind::QuadricPair: return 4;
    case SurfaceKind::WeightedQuartic: return 2;
    case SurfaceKind::WeightedSextic: return 1;
  }
  return 0;
}

inline std::vector<std::string> surface_variables(SurfaceKind k) {
  if (k == SurfaceKind::QuadricPair) return {"x0", "x1", "x2", "x3", "x4"};
  return {"w", "x", "y", "z"};
}

inline std::vector<int> surface_weights(SurfaceKind k) {
  switch (k) {
    case SurfaceKind::Cubic: return {1, 1, 1, 1};
    case SurfaceKind::QuadricPair: return {1, 1, 1, 1, 1};
    case SurfaceKind::WeightedQuartic: return {2, 1, 1, 1};
    case SurfaceKind::WeightedSextic: return {3, 2, 1, 1};
  }
  return {};
}

/// Weighted degree of each defining form.
inline int form_degree(SurfaceKind k) {
  switch (k) {
    case SurfaceKind::Cubic: return 3;
    case SurfaceKind::QuadricPair: return 2;
    case SurfaceKind::WeightedQuartic: return 4;
    case SurfaceKind::WeightedSextic: return 6;
  }
  return 0;
}

inline std::size_t form_count(SurfaceKind k) { return k == SurfaceKind::QuadricPair ? 2 : 1; }

/// Anticanonical model of a del Pezzo surface over a finite field.
struct SurfaceModel {
  SurfaceKind kind = SurfaceKind::Cubic;
  FiniteField field;
  std::vector<MultiPoly<FiniteField>> forms;

  SurfaceModel() = default;
  SurfaceModel(SurfaceKind k, FiniteField f, std::vector<MultiPoly<FiniteField>> fs)
      : kind(k), field(std::move(f)), forms(std::move(fs)) {
    require(forms.size() == form_count(kind), ErrorCode::InvalidConfig,
            to_string(kind) + " needs " + std::to_string(form_count(kind)) + " form(s)");
    for (const auto& g : forms) {
      require(g.vars() == surface_variables(kind), ErrorCode::DimensionError, "forms use the wrong variables");
      require(!g.is_zero(), ErrorCode::InvalidConfig, "zero form");
      const auto d = g.homogeneous_degree(surface_weights(kind));
      if (!d) fail(ErrorCode::NotHomogeneous, "form is not homogeneous: " + g.to_string());
      require(*d == form_degree(kind), ErrorCode::InvalidConfig,
              "form has degree " + std::to_string(*d) + ", expected " + std::to_string(form_degree(kind)));
    }
  }

  /// Parses the forms over F (rational coefficients are reduced).
  static SurfaceModel parse(SurfaceKind k, const FiniteField& F, const std::vector<std::string>& texts) {
    std::vector<MultiPoly<FiniteField>> fs;
    for (const auto& t : texts) fs.push_back(parse_polynomial(t, F, surface_variables(k)));
    return SurfaceModel(k, F, std::move(fs));
  }

  /// Reduction of an integral model.
  static SurfaceModel reduce(SurfaceKind k, const FiniteField& F, const std::vector<MultiPoly<RationalField>>& integral) {
    std::vector<MultiPoly<FiniteField>> fs;
    for (const auto& g : integral)
      fs.push_back(g.map_coefficients(F, [&](const Rational& c) { return F.from_rational(c); }));
    return SurfaceModel(k, F, std::move(fs));
  }

  /// Singular points of the weighted ambient space (empty for P^3 and P^4).
  [[nodiscard]] std::vector<std::vector<FiniteField::Elem>> ambient_singular_points() const {
    if (kind == SurfaceKind::WeightedQuartic) return {{1, 0, 0, 0}};
    if (kind == SurfaceKind::WeightedSextic) return {{1, 0, 0, 0}, {0, 1, 0, 0}};
    return {};
  }
};

inline bool is_smooth(const SurfaceModel& s, const GroebnerOptions& opt = {}) {
  switch (s.kind) {
    case SurfaceKind::Cubic: return is_smooth_cubic(s.forms[0], opt);
    case SurfaceKind::QuadricPair: return is_smooth_quadric_pair(s.forms[0], s.forms[1], opt);
    default: return is_smooth_weighted(s.forms[0], surface_weights(s.kind), s.ambient_singular_points(), opt);
  }
}

struct PointCount {
  std::uint64_t q = 0;
  std::uint64_t count = 0;
  std::optional<std::int64_t> trace;  // (count - q^2 - 1) / q when integral
  [[nodiscard]] bool congruent() const { return count % q == 1 % q; }
};

inline PointCount count_points(const SurfaceModel& s, std::uint64_t budget = enumeration_budget()) {
  PointCount pc;
  pc.q = s.field.q();
  enumerate_projective_points(
      s.field, surface_weights(s.kind),
      [&](const std::vector<FiniteField::Elem>& x) {
        for (const auto& g : s.forms)
          if (g.evaluate(x) != 0) return;
        ++pc.count;
      },
      budget);
  const auto q = static_cast<std::int64_t>(pc.q);
  const std::int64_t r = static_cast<std::int64_t>(pc.count) - q * q - 1;
  if (r % q == 0) pc.trace = r / q;
  return pc;
}

/// Traces on K^perp (trace on Pic minus 1) over a list of automorphisms.
inline std::set<std::int64_t> orthogonal_traces(const std::vector<LatticeAutomorphism>& elements) {
  std::set<std::int64_t> t;
  for (const auto& g : elements) t.insert(g.matrix().trace() - 1);
  return t;
}

/// The Frobenius trace t on Pic must satisfy t - 1 in the K^perp trace set of W(R_d).
inline bool trace_consistency(const PointCount& pc, int degree, const std::set<std::int64_t>& orthogonal_trace_set) {
  if (!pc.trace) return false;
  const std::int64_t t = *pc.trace - 1;
  if (t < -(9 - degree) || t > 9 - degree) return false;
  return orthogonal_trace_set.count(t) > 0;
}

/// All monomials of the given weighted degree.
inline std::vector<Monomial> monomials_of_degree(const std::vector<int>& weights, int degree) {
  std::vector<Monomial> out;
  Monomial m;
  const int n = static_cast<int>(weights.size());
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n) {
      if (left == 0) out.push_back(m);
      return;
    }
    for (int a = 0; a * weights[i] <= left; ++a) {
      m.e[i] = static_cast<std::uint16_t>(a);
      self(self, i + 1, left - a * weights[i]);
    }
    m.e[i] = 0;
  };
  rec(rec, 0, degree);
  return out;
}

/// Random model with uniform coefficients, redrawn until the smoothness certificate passes.
inline SurfaceModel random_smooth_surface(SurfaceKind kind, const FiniteField& F, std::mt19937_64& rng,
                                          int max_attempts = 10000) {
  const auto vars = surface_variables(kind);
  const auto monos = monomials_of_degree(surface_weights(kind), form_degree(kind));
  std::uniform_int_distribution<std::uint64_t> coef(0, F.q() - 1);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<MultiPoly<FiniteField>> forms;
    bool zero = false;
    for (std::size_t f = 0; f < form_count(kind); ++f) {
      std::vector<MultiPoly<FiniteField>::Term> terms;
      for (const auto& m : monos) terms.push_back({m, static_cast<FiniteField::Elem>(coef(rng))});
      forms.push_back(MultiPoly<FiniteField>::from_terms(F, vars, std::move(terms)));
      zero |= forms.back().is_zero();
    }
    if (zero) continue;
    SurfaceModel s(kind, F, std::move(forms));
    if (is_smooth(s)) return s;
  }
  fail(ErrorCode::ConstructionFailed, "no smooth " + to_string(kind) + " found over " + F.name());
}

}  // namespace dpk
