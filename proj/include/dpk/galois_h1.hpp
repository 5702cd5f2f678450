#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <exception>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "dpk/smith.hpp"
#include "dpk/weyl_groups.hpp"

namespace dpk {

/// Z/a_1 x ... x Z/a_m with a_i | a_{i+1}, a_i >= 2. Empty list is the trivial group.
struct FiniteAbelianGroup {
  std::vector<BigInt> invariant_factors;

  [[nodiscard]] bool trivial() const { return invariant_factors.empty(); }
  [[nodiscard]] BigInt order() const {
    BigInt o = 1;
    for (const auto& a : invariant_factors) o *= a;
    return o;
  }
  [[nodiscard]] std::string to_string() const {
    if (trivial()) return "0";
    std::string s;
    for (std::size_t i = 0; i < invariant_factors.size(); ++i)
      s += (i ? " x Z/" : "Z/") + invariant_factors[i].str();
    return s;
  }
  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;
};

enum class H1Module { Pic, Orthogonal };

namespace detail {

template <typename T>
FiniteAbelianGroup h1_kernel_route(const Matrix<T>& g, int order) {
  const std::size_t r = g.rows();
  const auto id = Matrix<T>::identity(r);
  Matrix<T> norm(r, r);
  Matrix<T> power = id;
  for (int i = 0; i < order; ++i) {
    norm = norm + power;
    power = power * g;
  }
  require(power == id, ErrorCode::InternalError, "supplied order is not the order of g");

  // ker(N) = V * {y : y_i = 0 for i < rank}; coordinates of (g - 1) in that basis are the
  // trailing rows of V^-1 (g - 1).
  const auto nf = smith_normal_form(norm);
  const auto coords = nf.v_inverse * (g - id);
  for (std::size_t i = 0; i < nf.rank; ++i)
    for (std::size_t j = 0; j < r; ++j)
      require(coords(i, j) == T(0), ErrorCode::InternalError, "im(g-1) is not inside ker(N)");
  const std::size_t k = r - nf.rank;
  if (k == 0) return {};
  const auto relations = coords.block(nf.rank, 0, k, r);
  const auto rf = smith_normal_form(relations);
  require(rf.rank == k, ErrorCode::InternalError, "ker(N)/im(g-1) has a free part");
  return {torsion_factors(rf)};
}

}  // namespace detail

/// H^1(<g>, Z^n) = ker(N) / im(g - 1) for an integer matrix g of the given finite order.
inline FiniteAbelianGroup h1_cyclic(const IntMatrix& g, int order) {
  require(g.rows() == g.cols(), ErrorCode::DimensionError, "action matrix must be square");
  try {
    return detail::h1_kernel_route(convert<CheckedInt>(g), order);
  } catch (const Overflow&) {
    return detail::h1_kernel_route(convert<BigInt>(g), order);
  }
}

inline FiniteAbelianGroup h1_cyclic(const IntMatrix& g) {
  return h1_cyclic(g, LatticeAutomorphism::compute_order(g, 100000));
}

/// K^perp with the simple roots as a Z-basis; converts automorphisms of Pic into their
/// action on K^perp.
class OrthogonalComplement {
 public:
  explicit OrthogonalComplement(const PicLattice& L) : basis_(simple_roots(L)), gram_(L.gram()) {
    const std::size_t s = basis_.size();
    const auto n = static_cast<std::size_t>(L.rank());
    b_ = IntMatrix(n, s);
    for (std::size_t j = 0; j < s; ++j)
      for (std::size_t i = 0; i < n; ++i) b_(i, j) = basis_[j][i];
    bt_g_ = b_.transpose() * gram_;
    const auto cartan = bt_g_ * b_;
    // Gauss-Jordan over Q for the inverse Cartan matrix.
    std::vector<std::vector<Rational>> a(s, std::vector<Rational>(2 * s));
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < s; ++j) a[i][j] = cartan(i, j);
      a[i][s + i] = 1;
    }
    for (std::size_t c = 0; c < s; ++c) {
      std::size_t p = c;
      while (p < s && a[p][c] == 0) ++p;
      require(p < s, ErrorCode::InternalError, "simple roots are linearly dependent");
      std::swap(a[p], a[c]);
      const Rational piv = a[c][c];
      for (auto& x : a[c]) x /= piv;
      for (std::size_t i = 0; i < s; ++i) {
        if (i == c || a[i][c] == 0) continue;
        const Rational f = a[i][c];
        for (std::size_t j = 0; j < 2 * s; ++j) a[i][j] -= f * a[c][j];
      }
    }
    cartan_inverse_.assign(s, std::vector<Rational>(s));
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) cartan_inverse_[i][j] = a[i][s + j];
  }

  [[nodiscard]] std::size_t rank() const { return basis_.size(); }

  /// Matrix X with g B = B X.
  [[nodiscard]] IntMatrix action(const IntMatrix& g) const {
    const auto rhs = bt_g_ * g * b_;
    const std::size_t s = basis_.size();
    IntMatrix x(s, s);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) {
        Rational acc = 0;
        for (std::size_t k = 0; k < s; ++k) acc += cartan_inverse_[i][k] * rhs(k, j);
        require(denominator(acc) == 1, ErrorCode::InternalError, "automorphism does not preserve K^perp integrally");
        x(i, j) = static_cast<std::int64_t>(numerator(acc));
      }
    return x;
  }

 private:
  std::vector<DivisorClass> basis_;
  IntMatrix gram_;
  IntMatrix b_;
  IntMatrix bt_g_;
  std::vector<std::vector<Rational>> cartan_inverse_;
};

inline FiniteAbelianGroup h1_cyclic(const LatticeAutomorphism& g, const PicLattice& L, H1Module module = H1Module::Pic) {
  if (module == H1Module::Pic) return h1_cyclic(g.matrix(), g.order());
  return h1_cyclic(OrthogonalComplement(L).action(g.matrix()), g.order());
}

enum class Conclusion { NotRational, Inconclusive };

inline std::string to_string(Conclusion c) { return c == Conclusion::NotRational ? "NotRational" : "Inconclusive"; }

/// A nontrivial H^1 of the Frobenius action on Pic obstructs k-rationality, hence irr > 1.
struct IrrationalityCertificate {
  int degree = 0;
  std::optional<std::vector<int>> word;
  IntMatrix matrix;
  int order = 1;
  FiniteAbelianGroup h1;
  Conclusion conclusion = Conclusion::Inconclusive;
};

inline IrrationalityCertificate certify(const PicLattice& L, const LatticeAutomorphism& g, H1Module module,
                                        const OrthogonalComplement* orth = nullptr,
                                        std::optional<std::vector<int>> word = std::nullopt) {
  IrrationalityCertificate c;
  c.degree = L.degree();
  c.word = std::move(word);
  c.matrix = g.matrix();
  c.order = g.order();
  if (module == H1Module::Pic) {
    c.h1 = h1_cyclic(g.matrix(), g.order());
  } else {
    std::optional<OrthogonalComplement> local;
    if (!orth) orth = &local.emplace(L);
    c.h1 = h1_cyclic(orth->action(g.matrix()), g.order());
  }
  c.conclusion = c.h1.trivial() ? Conclusion::Inconclusive : Conclusion::NotRational;
  return c;
}

struct H1ScanResult {
  std::vector<IrrationalityCertificate> certificates;
  bool any_nontrivial = false;
};

namespace detail {

template <typename F>
void parallel_for(std::size_t n, int threads, F&& body) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t t = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  std::exception_ptr error;
  std::mutex error_mutex;
  for (std::size_t w = 0; w < t; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += t) body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

/// One certificate per element, in input order.
inline H1ScanResult scan_h1(const PicLattice& L, const std::vector<LatticeAutomorphism>& elements,
                            H1Module module = H1Module::Pic, int threads = 1) {
  std::optional<OrthogonalComplement> orth;
  if (module == H1Module::Orthogonal) orth.emplace(L);
  H1ScanResult res;
  res.certificates.resize(elements.size());
  detail::parallel_for(elements.size(), threads, [&](std::size_t i) {
    res.certificates[i] = certify(L, elements[i], module, orth ? &*orth : nullptr);
  });
  res.any_nontrivial = std::any_of(res.certificates.begin(), res.certificates.end(),
                                   [](const auto& c) { return c.conclusion == Conclusion::NotRational; });
  return res;
}

/// Aggregate of a whole-group scan; used where materialising every certificate is too large.
struct H1Summary {
  int degree = 0;
  H1Module module = H1Module::Pic;
  std::uint64_t elements = 0;
  std::uint64_t nontrivial = 0;
  std::map<std::string, std::uint64_t> histogram;  // H^1 as text -> number of elements
  std::optional<IntMatrix> witness;                // first nontrivial element in key order
  std::optional<FiniteAbelianGroup> witness_h1;
  bool from_cache = false;
};

inline std::string to_string(H1Module m) { return m == H1Module::Pic ? "pic" : "orthogonal"; }

/// FNV-1a over the simple-reflection matrices; identifies a generator set for result caching.
inline std::string generator_hash(const PicLattice& L, H1Module module) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::int64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= static_cast<std::uint64_t>((x >> (8 * i)) & 0xff);
      h *= 1099511628211ull;
    }
  };
  mix(L.degree());
  mix(module == H1Module::Pic ? 0 : 1);
  for (const auto& r : simple_roots(L)) {
    const auto s = reflection(L, r);
    for (auto x : s.matrix().data()) mix(x);
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

inline nlohmann::json summary_to_json(const H1Summary& s) {
  nlohmann::json j;
  j["degree"] = s.degree;
  j["module"] = to_string(s.module);
  j["elements"] = s.elements;
  j["nontrivial"] = s.nontrivial;
  j["histogram"] = s.histogram;
  if (s.witness) {
    std::vector<std::vector<std::int64_t>> rows;
    for (std::size_t i = 0; i < s.witness->rows(); ++i) {
      rows.emplace_back();
      for (std::size_t k = 0; k < s.witness->cols(); ++k) rows.back().push_back((*s.witness)(i, k));
    }
    j["witness"] = rows;
    std::vector<std::string> f;
    for (const auto& a : s.witness_h1->invariant_factors) f.push_back(a.str());
    j["witness_h1"] = f;
  }
  return j;
}

inline H1Summary summary_from_json(const nlohmann::json& j) {
  H1Summary s;
  s.degree = j.at("degree").get<int>();
  s.module = j.at("module").get<std::string>() == "pic" ? H1Module::Pic : H1Module::Orthogonal;
  s.elements = j.at("elements").get<std::uint64_t>();
  s.nontrivial = j.at("nontrivial").get<std::uint64_t>();
  s.histogram = j.at("histogram").get<std::map<std::string, std::uint64_t>>();
  if (j.contains("witness")) {
    auto rows = j.at("witness").get<std::vector<std::vector<std::int64_t>>>();
    IntMatrix m(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t k = 0; k < rows.size(); ++k) m(i, k) = rows[i][k];
    s.witness = m;
    FiniteAbelianGroup g;
    for (const auto& f : j.at("witness_h1").get<std::vector<std::string>>()) g.invariant_factors.emplace_back(f);
    s.witness_h1 = g;
  }
  return s;
}

/// Scans every element of a closed Weyl group. With a cache directory, a previous result
/// for the same generators is reused and fresh results are written back.
inline H1Summary scan_weyl_group(const WeylGroup& w, H1Module module = H1Module::Pic,
                                 const std::optional<std::filesystem::path>& cache_dir = std::nullopt) {
  const auto& L = w.lattice();
  std::optional<std::filesystem::path> cache_file;
  if (cache_dir) {
    cache_file = *cache_dir / ("h1-d" + std::to_string(L.degree()) + "-" + to_string(module) + "-" +
                               generator_hash(L, module) + ".json");
    if (std::filesystem::exists(*cache_file)) {
      std::ifstream in(*cache_file);
      auto s = summary_from_json(nlohmann::json::parse(in));
      s.from_cache = true;
      return s;
    }
  }
  std::optional<OrthogonalComplement> orth;
  if (module == H1Module::Orthogonal) orth.emplace(L);
  H1Summary s;
  s.degree = L.degree();
  s.module = module;
  for (auto key : w.keys()) {
    const auto m = w.matrix(key);
    const int order = LatticeAutomorphism::compute_order(m, 1000);
    const auto h = orth ? h1_cyclic(orth->action(m), order) : h1_cyclic(m, order);
    ++s.elements;
    ++s.histogram[h.to_string()];
    if (!h.trivial()) {
      ++s.nontrivial;
      if (!s.witness) {
        s.witness = m;
        s.witness_h1 = h;
      }
    }
  }
  if (cache_file) {
    std::filesystem::create_directories(*cache_dir);
    std::ofstream out(*cache_file);
    out << summary_to_json(s).dump(2) << '\n';
  }
  return s;
}

}  // namespace dpk
