#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dpk/error.hpp"
#include "dpk/matrix.hpp"

namespace dpk {

/// A class in Pic(X) written in the basis (H, E_1, ..., E_{9-d}), or (F_1, F_2) for the quadric model.
struct DivisorClass {
  std::vector<int> coeffs;

  DivisorClass() = default;
  explicit DivisorClass(std::vector<int> c) : coeffs(std::move(c)) {}

  [[nodiscard]] std::size_t size() const { return coeffs.size(); }
  int operator[](std::size_t i) const { return coeffs[i]; }

  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) {
    require(a.size() == b.size(), ErrorCode::DimensionError, "class length mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a.coeffs[i] += b.coeffs[i];
    return a;
  }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) {
    require(a.size() == b.size(), ErrorCode::DimensionError, "class length mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a.coeffs[i] -= b.coeffs[i];
    return a;
  }
  friend DivisorClass operator*(int k, DivisorClass a) {
    for (auto& c : a.coeffs) c *= k;
    return a;
  }
  DivisorClass operator-() const { return -1 * *this; }

  friend auto operator<=>(const DivisorClass&, const DivisorClass&) = default;
  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
};

enum class LatticeModel { BlowUp, Quadric };

/// Pic(X_{k^s}) for a del Pezzo surface of degree d with its intersection form.
///
/// The blow-up model of P^2 in 9-d points has gram diag(1,-1,...,-1) and
/// K = (-3, 1, ..., 1). The degree 8 quadric P^1 x P^1 is a separate rank 2
/// lattice with gram [[0,1],[1,0]] and K = (-2,-2).
class PicLattice {
 public:
  static PicLattice blow_up(int degree) {
    require(degree >= 1 && degree <= 8, ErrorCode::UnsupportedDegree,
            "blow-up model needs degree 1..8, got " + std::to_string(degree));
    PicLattice L;
    L.degree_ = degree;
    L.model_ = LatticeModel::BlowUp;
    L.rank_ = 10 - degree;
    L.gram_ = IntMatrix(L.rank_, L.rank_);
    L.gram_(0, 0) = 1;
    for (int i = 1; i < L.rank_; ++i) L.gram_(i, i) = -1;
    std::vector<int> k(L.rank_, 1);
    k[0] = -3;
    L.canonical_ = DivisorClass(k);
    return L;
  }

  static PicLattice quadric() {
    PicLattice L;
    L.degree_ = 8;
    L.model_ = LatticeModel::Quadric;
    L.rank_ = 2;
    L.gram_ = IntMatrix{{0, 1}, {1, 0}};
    L.canonical_ = DivisorClass({-2, -2});
    return L;
  }

  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] int rank() const { return rank_; }
  [[nodiscard]] LatticeModel model() const { return model_; }
  [[nodiscard]] const IntMatrix& gram() const { return gram_; }
  [[nodiscard]] const DivisorClass& canonical() const { return canonical_; }

  /// Number of blown-up points (9 - d); zero for the quadric model.
  [[nodiscard]] int num_points() const { return model_ == LatticeModel::BlowUp ? rank_ - 1 : 0; }

  [[nodiscard]] DivisorClass hyperplane() const {
    require(model_ == LatticeModel::BlowUp, ErrorCode::InvalidClass, "H only exists in the blow-up model");
    return basis(0);
  }
  /// E_i for i = 1..9-d.
  [[nodiscard]] DivisorClass exceptional_point(int i) const {
    require(model_ == LatticeModel::BlowUp && i >= 1 && i < rank_, ErrorCode::InvalidClass,
            "E_" + std::to_string(i) + " out of range");
    return basis(static_cast<std::size_t>(i));
  }
  [[nodiscard]] DivisorClass basis(std::size_t i) const {
    std::vector<int> v(rank_, 0);
    v.at(i) = 1;
    return DivisorClass(v);
  }

  void check(const DivisorClass& a) const {
    require(static_cast<int>(a.size()) == rank_, ErrorCode::DimensionError,
            "class of length " + std::to_string(a.size()) + " in rank " + std::to_string(rank_) + " lattice");
  }

  [[nodiscard]] std::int64_t pairing(const DivisorClass& a, const DivisorClass& b) const {
    check(a);
    check(b);
    std::int64_t s = 0;
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) s += static_cast<std::int64_t>(a[i]) * gram_(i, j) * b[j];
    return s;
  }

  [[nodiscard]] bool is_exceptional(const DivisorClass& a) const {
    return pairing(a, a) == -1 && pairing(a, canonical_) == -1;
  }
  [[nodiscard]] bool is_root(const DivisorClass& a) const {
    return pairing(a, a) == -2 && pairing(a, canonical_) == 0;
  }

  friend bool operator==(const PicLattice& a, const PicLattice& b) {
    return a.degree_ == b.degree_ && a.model_ == b.model_;
  }

 private:
  PicLattice() = default;
  int degree_ = 0;
  int rank_ = 0;
  LatticeModel model_ = LatticeModel::BlowUp;
  IntMatrix gram_;
  DivisorClass canonical_;
};

namespace detail {

/// All v = (a, b_1..b_r) in the blow-up lattice with a^2 - sum b_i^2 = self and
/// 3a + sum b_i = -dot_k (i.e. (v,K) = dot_k), |a| <= a_max, |b_i| <= |a| + margin.
inline std::vector<DivisorClass> box_search(int r, int self, int dot_k, int a_max, int margin) {
  std::vector<DivisorClass> out;
  std::vector<int> b(r);
  for (int a = -a_max; a <= a_max; ++a) {
    const long target_sq = static_cast<long>(a) * a - self;  // sum b_i^2
    const long target_sum = -dot_k - 3L * a;                  // sum b_i
    if (target_sq < 0) continue;
    const int bound = std::abs(a) + margin;
    std::function<void(int, long, long)> rec = [&](int i, long sq_left, long sum_left) {
      if (i == r) {
        if (sq_left == 0 && sum_left == 0) {
          std::vector<int> v(r + 1);
          v[0] = a;
          std::copy(b.begin(), b.end(), v.begin() + 1);
          out.emplace_back(std::move(v));
        }
        return;
      }
      const int left = r - i;
      // Cauchy-Schwarz prune on the remaining coordinates.
      if (sum_left * sum_left > static_cast<long>(left) * sq_left) return;
      for (int x = -bound; x <= bound; ++x) {
        const long sq = static_cast<long>(x) * x;
        if (sq > sq_left) continue;
        b[i] = x;
        rec(i + 1, sq_left - sq, sum_left - x);
      }
    };
    rec(0, target_sq, target_sum);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Largest |a| allowed by Cauchy-Schwarz: (s - 3a)^2 <= r (a^2 - self), s = -dot_k.
inline int cauchy_schwarz_bound(int r, int self, int dot_k) {
  int best = 0;
  const long s = -dot_k;
  for (int a = -64; a <= 64; ++a) {
    const long lhs = (s - 3L * a) * (s - 3L * a);
    const long rhs = static_cast<long>(r) * (static_cast<long>(a) * a - self);
    if (rhs >= 0 && lhs <= rhs) best = std::max(best, std::abs(a));
  }
  return best;
}

/// Self-certifying enumeration: the margin is grown until enlarging it by one adds no
/// solutions and the box covers the Cauchy-Schwarz range of the H-coefficient. Since
/// b_i^2 <= a^2 - self, margin >= 1 already bounds the E-coefficients for self in {-1, -2}.
inline std::vector<DivisorClass> certified_search(const PicLattice& L, int self, int dot_k, int* margin_used) {
  const int r = L.num_points();
  const int cs = cauchy_schwarz_bound(r, self, dot_k);
  int margin = 0;
  auto current = box_search(r, self, dot_k, 3 + margin, margin);
  for (;;) {
    auto enlarged = box_search(r, self, dot_k, 3 + margin + 1, margin + 1);
    if (enlarged == current && 3 + margin >= cs && margin >= 1) break;
    current = std::move(enlarged);
    ++margin;
    require(margin < 64, ErrorCode::InternalError, "enumeration box failed to stabilise");
  }
  if (margin_used) *margin_used = margin;
  return current;
}

}  // namespace detail

/// All classes with (v,v) = (v,K) = -1, sorted lexicographically. Empty for the quadric model.
inline std::vector<DivisorClass> enumerate_exceptional_classes(const PicLattice& L, int* margin_used = nullptr) {
  if (L.model() == LatticeModel::Quadric) return {};
  return detail::certified_search(L, -1, -1, margin_used);
}

struct RootSystemData {
  std::string type_label;
  std::vector<DivisorClass> roots;
  std::vector<DivisorClass> simple_roots;
};

inline std::string root_system_label(int degree) {
  switch (degree) {
    case 6: return "A2xA1";
    case 5: return "A4";
    case 4: return "D5";
    case 3: return "E6";
    case 2: return "E7";
    case 1: return "E8";
    default: fail(ErrorCode::UnsupportedDegree, "no root system R_d for degree " + std::to_string(degree));
  }
}

/// E_1-E_2, ..., E_{8-d}-E_{9-d}, H-E_1-E_2-E_3.
inline std::vector<DivisorClass> simple_roots(const PicLattice& L) {
  require(L.model() == LatticeModel::BlowUp && L.degree() <= 6, ErrorCode::UnsupportedDegree,
          "root system only defined for degree <= 6");
  std::vector<DivisorClass> out;
  const int r = L.num_points();
  for (int i = 1; i < r; ++i) out.push_back(L.exceptional_point(i) - L.exceptional_point(i + 1));
  out.push_back(L.hyperplane() - L.exceptional_point(1) - L.exceptional_point(2) - L.exceptional_point(3));
  return out;
}

inline RootSystemData enumerate_roots(const PicLattice& L) {
  require(L.model() == LatticeModel::BlowUp, ErrorCode::UnsupportedDegree, "quadric model has no R_d");
  require(L.degree() >= 1 && L.degree() <= 6, ErrorCode::UnsupportedDegree,
          "R_d is only defined for d <= 6, got " + std::to_string(L.degree()));
  RootSystemData data;
  data.type_label = root_system_label(L.degree());
  data.roots = detail::certified_search(L, -2, 0, nullptr);
  data.simple_roots = simple_roots(L);
  return data;
}

inline std::vector<DivisorClass> exceptional_adjacency(const PicLattice& L, const DivisorClass& e) {
  L.check(e);
  require(L.is_exceptional(e), ErrorCode::InvalidClass, "class is not exceptional");
  std::vector<DivisorClass> out;
  for (const auto& f : enumerate_exceptional_classes(L))
    if (f != e && L.pairing(e, f) >= 1) out.push_back(f);
  return out;
}

}  // namespace dpk
