#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <unordered_set>
#include <vector>

#include "dpk/pic_lattice.hpp"

namespace dpk {

/// An integer matrix acting on column vectors of Pic that preserves the form and K.
class LatticeAutomorphism {
 public:
  /// Validates the form and canonical class; computes the order (capped at `max_order`).
  LatticeAutomorphism(const PicLattice& L, IntMatrix m, int max_order = 100000) : matrix_(std::move(m)) {
    const auto n = static_cast<std::size_t>(L.rank());
    require(matrix_.rows() == n && matrix_.cols() == n, ErrorCode::DimensionError, "automorphism has wrong shape");
    require(matrix_.transpose() * L.gram() * matrix_ == L.gram(), ErrorCode::InvalidClass,
            "matrix does not preserve the intersection form");
    std::vector<std::int64_t> k(L.canonical().coeffs.begin(), L.canonical().coeffs.end());
    require(matrix_.apply(k) == k, ErrorCode::InvalidClass, "matrix does not fix the canonical class");
    order_ = compute_order(matrix_, max_order);
  }

  [[nodiscard]] const IntMatrix& matrix() const { return matrix_; }
  [[nodiscard]] int order() const { return order_; }
  [[nodiscard]] std::size_t rank() const { return matrix_.rows(); }

  [[nodiscard]] DivisorClass apply(const DivisorClass& x) const {
    std::vector<std::int64_t> v(x.coeffs.begin(), x.coeffs.end());
    auto w = matrix_.apply(v);
    return DivisorClass(std::vector<int>(w.begin(), w.end()));
  }

  static int compute_order(const IntMatrix& m, int max_order) {
    const auto id = IntMatrix::identity(m.rows());
    IntMatrix p = m;
    for (int k = 1; k <= max_order; ++k) {
      if (p == id) return k;
      p = p * m;
    }
    fail(ErrorCode::InternalError, "automorphism is not of finite order below the cap");
  }

  friend bool operator==(const LatticeAutomorphism& a, const LatticeAutomorphism& b) {
    return a.matrix_ == b.matrix_;
  }
  friend bool operator<(const LatticeAutomorphism& a, const LatticeAutomorphism& b) {
    return a.matrix_.data() < b.matrix_.data();
  }

 private:
  IntMatrix matrix_;
  int order_ = 1;
};

/// s(x) = x + (x, root) root.
inline LatticeAutomorphism reflection(const PicLattice& L, const DivisorClass& root) {
  L.check(root);
  require(L.pairing(root, root) == -2, ErrorCode::InvalidRoot, "reflection needs (r,r) = -2");
  const auto n = static_cast<std::size_t>(L.rank());
  IntMatrix m = IntMatrix::identity(n);
  // column j is s(e_j) = e_j + (e_j, r) r with (e_j, r) = sum_k gram(j,k) r_k.
  for (std::size_t j = 0; j < n; ++j) {
    std::int64_t ej_r = 0;
    for (std::size_t k = 0; k < n; ++k) ej_r += L.gram()(j, k) * root[k];
    for (std::size_t i = 0; i < n; ++i) m(i, j) += ej_r * root[i];
  }
  return LatticeAutomorphism(L, std::move(m), 2);
}

/// Product of simple reflections, left to right: word [i, j] is s_i * s_j.
inline LatticeAutomorphism element_from_word(const PicLattice& L, const std::vector<int>& word) {
  const auto simple = simple_roots(L);
  IntMatrix m = IntMatrix::identity(static_cast<std::size_t>(L.rank()));
  for (int i : word) {
    require(i >= 0 && i < static_cast<int>(simple.size()), ErrorCode::InvalidWord,
            "simple-root index " + std::to_string(i) + " out of range");
    m = m * reflection(L, simple[static_cast<std::size_t>(i)]).matrix();
  }
  return LatticeAutomorphism(L, std::move(m));
}

/// W(R_d) stored compactly: an element is determined by the images of E_1..E_{9-d}, each
/// recorded as an index into the sorted exceptional-class list, packed into one word.
class WeylGroup {
 public:
  using Key = std::uint64_t;

  static constexpr std::int64_t kOrders[7] = {0, 696729600, 2903040, 51840, 1920, 120, 12};

  /// Closure of the simple reflections. `generator_order` permutes the generators (used to
  /// check that the closure does not depend on it); empty means the natural order.
  WeylGroup(const PicLattice& L, std::int64_t limit, std::vector<int> generator_order = {})
      : lattice_(L), exceptional_(enumerate_exceptional_classes(L)) {
    require(L.model() == LatticeModel::BlowUp && L.degree() >= 1 && L.degree() <= 6, ErrorCode::UnsupportedDegree,
            "Weyl group W(R_d) needs degree 1..6");
    require(L.degree() != 1, ErrorCode::TooLarge, "W(E8) has 696729600 elements; full enumeration refused");
    require(kOrders[L.degree()] <= limit, ErrorCode::TooLarge,
            "closure of size " + std::to_string(kOrders[L.degree()]) + " exceeds limit " + std::to_string(limit));
    for (std::size_t i = 0; i < exceptional_.size(); ++i) index_[exceptional_[i]] = static_cast<int>(i);

    const auto simple = simple_roots(L);
    if (generator_order.empty())
      for (std::size_t i = 0; i < simple.size(); ++i) generator_order.push_back(static_cast<int>(i));
    for (int g : generator_order) {
      auto s = reflection(L, simple.at(static_cast<std::size_t>(g)));
      std::vector<std::uint8_t> perm(exceptional_.size());
      for (std::size_t j = 0; j < exceptional_.size(); ++j) perm[j] = static_cast<std::uint8_t>(index_of(s.apply(exceptional_[j])));
      permutations_.push_back(std::move(perm));
    }

    std::array<std::uint8_t, 8> id{};
    for (int i = 1; i <= L.num_points(); ++i) id[i - 1] = static_cast<std::uint8_t>(index_of(L.exceptional_point(i)));
    const Key identity = pack(id);

    std::unordered_set<Key> seen;
    seen.reserve(static_cast<std::size_t>(kOrders[L.degree()]) * 2);
    std::vector<Key> frontier{identity};
    seen.insert(identity);
    while (!frontier.empty()) {
      std::vector<Key> next;
      for (Key k : frontier) {
        auto images = unpack(k);
        for (const auto& perm : permutations_) {
          std::array<std::uint8_t, 8> moved{};
          for (int i = 0; i < L.num_points(); ++i) moved[i] = perm[images[i]];
          Key nk = pack(moved);
          if (seen.insert(nk).second) next.push_back(nk);
        }
      }
      frontier = std::move(next);
      require(static_cast<std::int64_t>(seen.size()) <= limit, ErrorCode::TooLarge, "closure exceeded limit");
    }
    keys_.assign(seen.begin(), seen.end());
    std::sort(keys_.begin(), keys_.end());
  }

  [[nodiscard]] std::size_t size() const { return keys_.size(); }
  [[nodiscard]] const std::vector<Key>& keys() const { return keys_; }
  [[nodiscard]] const PicLattice& lattice() const { return lattice_; }
  [[nodiscard]] const std::vector<DivisorClass>& exceptional_classes() const { return exceptional_; }

  /// Rebuilds the matrix: columns E_i go to the recorded classes and H = (sum E_i - K) / 3.
  [[nodiscard]] IntMatrix matrix(Key key) const {
    const int r = lattice_.num_points();
    const auto n = static_cast<std::size_t>(lattice_.rank());
    IntMatrix m(n, n);
    auto images = unpack(key);
    std::vector<std::int64_t> h(n, 0);
    for (int i = 0; i < r; ++i) {
      const auto& img = exceptional_[images[i]];
      for (std::size_t row = 0; row < n; ++row) {
        m(row, static_cast<std::size_t>(i + 1)) = img[row];
        h[row] += img[row];
      }
    }
    for (std::size_t row = 0; row < n; ++row) {
      const std::int64_t num = h[row] - lattice_.canonical()[row];
      require(num % 3 == 0, ErrorCode::InternalError, "image of H is not integral");
      m(row, 0) = num / 3;
    }
    return m;
  }

  [[nodiscard]] LatticeAutomorphism element(Key key) const { return LatticeAutomorphism(lattice_, matrix(key)); }

  /// Permutation induced on the exceptional classes.
  [[nodiscard]] std::vector<int> permutation(Key key) const {
    auto m = matrix(key);
    std::vector<int> perm(exceptional_.size());
    for (std::size_t j = 0; j < exceptional_.size(); ++j) {
      std::vector<std::int64_t> v(exceptional_[j].coeffs.begin(), exceptional_[j].coeffs.end());
      auto w = m.apply(v);
      perm[j] = index_of(DivisorClass(std::vector<int>(w.begin(), w.end())));
    }
    return perm;
  }

 private:
  int index_of(const DivisorClass& c) const {
    auto it = index_.find(c);
    require(it != index_.end(), ErrorCode::InternalError, "image is not an exceptional class");
    return it->second;
  }
  static Key pack(const std::array<std::uint8_t, 8>& a) {
    Key k = 0;
    for (int i = 7; i >= 0; --i) k = (k << 8) | a[i];
    return k;
  }
  static std::array<std::uint8_t, 8> unpack(Key k) {
    std::array<std::uint8_t, 8> a{};
    for (int i = 0; i < 8; ++i) {
      a[i] = static_cast<std::uint8_t>(k & 0xff);
      k >>= 8;
    }
    return a;
  }

  PicLattice lattice_;
  std::vector<DivisorClass> exceptional_;
  std::map<DivisorClass, int> index_;
  std::vector<std::vector<std::uint8_t>> permutations_;
  std::vector<Key> keys_;
};

/// Full list of W(R_d) elements in canonical (row-major matrix) order.
/// d = 3..6 by default; d = 2 only when `limit` is raised to 2903040; d = 1 always refused.
inline std::vector<LatticeAutomorphism> generate_group(const PicLattice& L, std::int64_t limit = 60000) {
  WeylGroup w(L, limit);
  std::vector<LatticeAutomorphism> out;
  out.reserve(w.size());
  for (auto k : w.keys()) out.push_back(w.element(k));
  std::sort(out.begin(), out.end());
  return out;
}

struct SampledElement {
  std::vector<int> word;
  LatticeAutomorphism element;
};

/// Deterministic pseudo-random words in the simple reflections (mt19937_64, reduced modulo).
inline std::vector<SampledElement> sample_elements(const PicLattice& L, int count, std::uint64_t seed,
                                                   int word_length = 0) {
  require(count >= 1, ErrorCode::InvalidWord, "sample count must be positive");
  const auto simple = simple_roots(L);
  const int n = static_cast<int>(simple.size());
  if (word_length <= 0) word_length = 6 * n;
  std::vector<IntMatrix> gens;
  for (const auto& r : simple) gens.push_back(reflection(L, r).matrix());

  std::mt19937_64 rng(seed);
  std::vector<SampledElement> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int c = 0; c < count; ++c) {
    const int len = word_length / 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(word_length / 2 + 1));
    std::vector<int> word;
    IntMatrix m = IntMatrix::identity(static_cast<std::size_t>(L.rank()));
    for (int i = 0; i < len; ++i) {
      int g = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
      if (!word.empty() && word.back() == g) g = (g + 1) % n;  // avoid trivial s_i s_i cancellations
      word.push_back(g);
      m = m * gens[static_cast<std::size_t>(g)];
    }
    out.push_back({std::move(word), LatticeAutomorphism(L, std::move(m))});
  }
  return out;
}

}  // namespace dpk
