#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dpk/error.hpp"
#include "dpk/integer.hpp"

namespace dpk {

/// Q with exact cpp_rational elements.
struct RationalField {
  using Elem = Rational;

  [[nodiscard]] Elem zero() const { return 0; }
  [[nodiscard]] Elem one() const { return 1; }
  [[nodiscard]] Elem from_int(const BigInt& n) const { return Elem(n); }
  [[nodiscard]] Elem from_rational(const Rational& r) const { return r; }
  [[nodiscard]] Elem add(const Elem& a, const Elem& b) const { return a + b; }
  [[nodiscard]] Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  [[nodiscard]] Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  [[nodiscard]] Elem neg(const Elem& a) const { return -a; }
  [[nodiscard]] Elem inv(const Elem& a) const {
    require(a != 0, ErrorCode::InternalError, "division by zero");
    return 1 / a;
  }
  [[nodiscard]] bool is_zero(const Elem& a) const { return a == 0; }
  [[nodiscard]] bool is_one(const Elem& a) const { return a == 1; }
  [[nodiscard]] std::int64_t characteristic() const { return 0; }
  [[nodiscard]] std::string to_string(const Elem& a) const { return dpk::to_string(a); }
  [[nodiscard]] std::string name() const { return "QQ"; }
  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

namespace detail {

// Dense polynomials over F_p, low degree first, used only to validate and build moduli.
using PolyFp = std::vector<std::uint64_t>;

inline void trim(PolyFp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PolyFp polymulmod(const PolyFp& a, const PolyFp& b, const PolyFp& m, std::uint64_t p) {
  PolyFp r(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  const std::size_t k = m.size() - 1;  // m monic of degree k
  for (std::size_t i = r.size(); i-- > k;) {
    const auto c = r[i];
    if (!c) continue;
    for (std::size_t j = 0; j <= k; ++j) r[i - k + j] = (r[i - k + j] + (p - c) * m[j]) % p;
  }
  r.resize(std::min(r.size(), k));
  trim(r);
  return r;
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

inline PolyFp polygcd(PolyFp a, PolyFp b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    const auto inv = powmod(b.back(), p - 2, p);
    while (a.size() >= b.size()) {
      const auto c = a.back() * inv % p;
      const std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = (a[shift + j] + (p - c) * b[j]) % p;
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a;
}

// x^(p^e) mod m by repeated p-th powering.
inline PolyFp frobenius_power_of_x(const PolyFp& m, std::uint64_t p, int e) {
  PolyFp x{0, 1};
  for (int i = 0; i < e; ++i) {
    PolyFp r{1}, b = x;
    std::uint64_t n = p;
    while (n) {
      if (n & 1) r = polymulmod(r, b, m, p);
      b = polymulmod(b, b, m, p);
      n >>= 1;
    }
    x = r;
  }
  return x;
}

}  // namespace detail

/// Rabin's test for a monic degree-k polynomial over F_p (coefficients low degree first).
inline bool is_irreducible(const std::vector<std::uint64_t>& monic, std::uint64_t p) {
  const int k = static_cast<int>(monic.size()) - 1;
  if (k < 1 || monic.back() != 1) return false;
  if (k == 1) return true;
  auto xk = detail::frobenius_power_of_x(monic, p, k);
  if (xk != detail::PolyFp{0, 1}) return false;
  for (int r = 2; r <= k; ++r) {
    if (k % r != 0 || !is_prime(r)) continue;
    auto h = detail::frobenius_power_of_x(monic, p, k / r);
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    detail::trim(h);
    if (h.empty()) return false;
    if (detail::polygcd(monic, h, p).size() > 1) return false;
  }
  return true;
}

/// GF(p^k). Elements are encoded as integers sum a_i p^i for the residue a_0 + a_1 t + ...
/// modulo the defining polynomial. Prime fields use plain modular arithmetic; extensions
/// use shared log/exp tables (q bounded by kMaxExtensionSize).
class FiniteField {
 public:
  using Elem = std::uint32_t;
  static constexpr std::uint64_t kMaxExtensionSize = 1u << 22;

  FiniteField() : FiniteField(2) {}
  explicit FiniteField(std::uint64_t p, int k = 1, std::vector<std::uint64_t> modulus = {}) {
    require(p >= 2 && p < (1ull << 31) && is_prime(static_cast<std::int64_t>(p)), ErrorCode::InvalidField,
            "characteristic must be a prime below 2^31");
    require(k >= 1 && k <= 12, ErrorCode::InvalidField, "extension degree must be in 1..12");
    auto t = std::make_shared<Tables>();
    t->p = p;
    t->k = k;
    t->q = 1;
    for (int i = 0; i < k; ++i) t->q *= p;
    if (k > 1) {
      require(t->q <= kMaxExtensionSize, ErrorCode::TooLarge, "extension field too large for tables");
      if (modulus.empty()) modulus = first_irreducible(p, k);
      require(modulus.size() == static_cast<std::size_t>(k) + 1, ErrorCode::InvalidField, "modulus has the wrong degree");
      for (auto& c : modulus) c %= p;
      require(is_irreducible(modulus, p), ErrorCode::InvalidField, "modulus is not irreducible");
      t->modulus = modulus;
      build_tables(*t);
    } else {
      t->modulus = {0, 1};
      // smallest primitive root
      std::vector<std::uint64_t> primes;
      std::uint64_t n = p - 1;
      for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
          primes.push_back(d);
          while (n % d == 0) n /= d;
        }
      if (n > 1) primes.push_back(n);
      for (std::uint64_t g = 1; g < p; ++g) {
        bool ok = true;
        for (auto r : primes) ok &= detail::powmod(g, (p - 1) / r, p) != 1;
        if (ok || p == 2) {
          t->generator = static_cast<Elem>(g);
          break;
        }
      }
    }
    t_ = std::move(t);
  }

  /// First monic irreducible of degree k, ordering lower coefficients by sum c_i p^i.
  static std::vector<std::uint64_t> first_irreducible(std::uint64_t p, int k) {
    std::uint64_t q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    for (std::uint64_t code = 0; code < q; ++code) {
      std::vector<std::uint64_t> m(k + 1);
      auto c = code;
      for (int i = 0; i < k; ++i, c /= p) m[i] = c % p;
      m[k] = 1;
      if (is_irreducible(m, p)) return m;
    }
    fail(ErrorCode::InternalError, "no irreducible polynomial found");
  }

  [[nodiscard]] std::uint64_t p() const { return t_->p; }
  [[nodiscard]] int k() const { return t_->k; }
  [[nodiscard]] std::uint64_t q() const { return t_->q; }
  [[nodiscard]] const std::vector<std::uint64_t>& modulus() const { return t_->modulus; }
  [[nodiscard]] std::int64_t characteristic() const { return static_cast<std::int64_t>(t_->p); }
  /// Generator of the multiplicative group.
  [[nodiscard]] Elem generator() const { return t_->generator; }
  /// The class of t in F_p[t]/(modulus); a root of the modulus.
  [[nodiscard]] Elem alpha() const { return t_->k == 1 ? from_int(BigInt(0) - t_->modulus[0]) : static_cast<Elem>(t_->p); }

  [[nodiscard]] Elem zero() const { return 0; }
  [[nodiscard]] Elem one() const { return 1; }
  [[nodiscard]] Elem from_int(const BigInt& n) const {
    BigInt r = n % BigInt(t_->p);
    if (r < 0) r += t_->p;
    return static_cast<Elem>(static_cast<std::uint64_t>(r));
  }
  [[nodiscard]] Elem from_int(std::int64_t n) const {
    auto p = static_cast<std::int64_t>(t_->p);
    return static_cast<Elem>(((n % p) + p) % p);
  }
  [[nodiscard]] Elem from_rational(const Rational& r) const {
    const auto d = from_int(BigInt(denominator(r)));
    require(d != 0, ErrorCode::InvalidField, "denominator divisible by the characteristic");
    return mul(from_int(BigInt(numerator(r))), inv(d));
  }
  /// Element with coordinates c_0 + c_1 t + ... (each reduced mod p).
  [[nodiscard]] Elem from_coords(const std::vector<std::int64_t>& c) const {
    require(c.size() <= static_cast<std::size_t>(t_->k), ErrorCode::DimensionError, "too many coordinates");
    std::uint64_t code = 0, base = 1;
    for (auto x : c) {
      code += static_cast<std::uint64_t>(from_int(x)) * base;
      base *= t_->p;
    }
    return static_cast<Elem>(code);
  }
  [[nodiscard]] std::vector<std::uint64_t> coords(Elem a) const {
    std::vector<std::uint64_t> c(t_->k);
    for (int i = 0; i < t_->k; ++i, a /= static_cast<Elem>(t_->p)) c[i] = a % t_->p;
    return c;
  }
  /// For prime-field elements: the representative in [0, p).
  [[nodiscard]] std::int64_t lift(Elem a) const {
    require(a < t_->p, ErrorCode::InvalidField, "element is not in the prime field");
    return a;
  }
  [[nodiscard]] bool in_prime_field(Elem a) const { return a < t_->p; }

  [[nodiscard]] Elem add(Elem a, Elem b) const {
    if (t_->k == 1) {
      const std::uint64_t s = std::uint64_t(a) + b;
      return static_cast<Elem>(s >= t_->p ? s - t_->p : s);
    }
    std::uint64_t r = 0, base = 1;
    for (int i = 0; i < t_->k; ++i) {
      const std::uint64_t s = (a % t_->p + b % t_->p) % t_->p;
      r += s * base;
      base *= t_->p;
      a /= static_cast<Elem>(t_->p);
      b /= static_cast<Elem>(t_->p);
    }
    return static_cast<Elem>(r);
  }
  [[nodiscard]] Elem neg(Elem a) const {
    if (t_->k == 1) return a == 0 ? 0 : static_cast<Elem>(t_->p - a);
    std::uint64_t r = 0, base = 1;
    for (int i = 0; i < t_->k; ++i) {
      const std::uint64_t d = a % t_->p;
      r += (d == 0 ? 0 : t_->p - d) * base;
      base *= t_->p;
      a /= static_cast<Elem>(t_->p);
    }
    return static_cast<Elem>(r);
  }
  [[nodiscard]] Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  [[nodiscard]] Elem mul(Elem a, Elem b) const {
    if (t_->k == 1) return static_cast<Elem>(std::uint64_t(a) * b % t_->p);
    if (a == 0 || b == 0) return 0;
    const auto s = std::uint64_t(t_->log[a]) + t_->log[b];
    return t_->exp[s % (t_->q - 1)];
  }
  [[nodiscard]] Elem inv(Elem a) const {
    require(a != 0, ErrorCode::InternalError, "division by zero");
    if (t_->k == 1) return static_cast<Elem>(detail::powmod(a, t_->p - 2, t_->p));
    return t_->exp[(t_->q - 1 - t_->log[a]) % (t_->q - 1)];
  }
  [[nodiscard]] Elem pow(Elem a, std::uint64_t e) const {
    Elem r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  [[nodiscard]] Elem frobenius(Elem a) const { return pow(a, t_->p); }
  [[nodiscard]] bool is_zero(Elem a) const { return a == 0; }
  [[nodiscard]] bool is_one(Elem a) const { return a == 1; }

  [[nodiscard]] std::string to_string(Elem a) const {
    if (t_->k == 1) return std::to_string(a);
    const auto c = coords(a);
    std::string s;
    for (int i = t_->k - 1; i >= 0; --i) {
      if (!c[i]) continue;
      if (!s.empty()) s += "+";
      if (i == 0) {
        s += std::to_string(c[i]);
        continue;
      }
      if (c[i] != 1) s += std::to_string(c[i]) + "*";
      s += i >= 2 ? "a^" + std::to_string(i) : "a";
    }
    return s.empty() ? "0" : "(" + s + ")";
  }
  [[nodiscard]] std::string name() const {
    return t_->k == 1 ? "GF(" + std::to_string(t_->p) + ")"
                      : "GF(" + std::to_string(t_->p) + "^" + std::to_string(t_->k) + ")";
  }

  friend bool operator==(const FiniteField& a, const FiniteField& b) {
    return a.t_ == b.t_ || (a.t_->p == b.t_->p && a.t_->k == b.t_->k && a.t_->modulus == b.t_->modulus);
  }

 private:
  struct Tables {
    std::uint64_t p = 2, q = 2;
    int k = 1;
    std::vector<std::uint64_t> modulus;
    Elem generator = 1;
    std::vector<Elem> exp;
    std::vector<std::uint32_t> log;
  };

  static std::uint64_t encode(const detail::PolyFp& a, std::uint64_t p) {
    std::uint64_t code = 0, base = 1;
    for (auto c : a) {
      code += c * base;
      base *= p;
    }
    return code;
  }

  static void build_tables(Tables& t) {
    const std::uint64_t n = t.q - 1;
    // try generators in encoding order
    for (std::uint64_t cand = 2; cand < t.q; ++cand) {
      detail::PolyFp g;
      for (auto c = cand; c; c /= t.p) g.push_back(c % t.p);
      std::vector<Elem> exp(n);
      std::vector<std::uint32_t> log(t.q, 0);
      detail::PolyFp cur{1};
      bool ok = true;
      for (std::uint64_t i = 0; i < n; ++i) {
        const auto code = encode(cur, t.p);
        if (i > 0 && code == 1) {
          ok = false;
          break;
        }
        exp[i] = static_cast<Elem>(code);
        log[code] = static_cast<std::uint32_t>(i);
        cur = detail::polymulmod(cur, g, t.modulus, t.p);
      }
      if (!ok) continue;
      t.generator = static_cast<Elem>(cand);
      t.exp = std::move(exp);
      t.log = std::move(log);
      return;
    }
    fail(ErrorCode::InternalError, "no multiplicative generator found");
  }

  std::shared_ptr<const Tables> t_;
};

}  // namespace dpk
