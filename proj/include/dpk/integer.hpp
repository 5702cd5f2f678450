#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace dpk {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Thrown by CheckedInt when a result leaves the int64 range; callers retry with BigInt.
struct Overflow {};

/// int64 that refuses to wrap. Used on hot paths where entries are almost always tiny.
struct CheckedInt {
  std::int64_t v = 0;

  constexpr CheckedInt() = default;
  constexpr CheckedInt(std::int64_t x) : v(x) {}  // NOLINT(google-explicit-constructor)

  friend CheckedInt operator+(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_add_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend CheckedInt operator-(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend CheckedInt operator*(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend CheckedInt operator/(CheckedInt a, CheckedInt b) {
    if (a.v == std::numeric_limits<std::int64_t>::min() && b.v == -1) throw Overflow{};
    return a.v / b.v;
  }
  friend CheckedInt operator%(CheckedInt a, CheckedInt b) {
    if (b.v == -1) return 0;
    return a.v % b.v;
  }
  CheckedInt operator-() const {
    if (v == std::numeric_limits<std::int64_t>::min()) throw Overflow{};
    return -v;
  }
  CheckedInt& operator+=(CheckedInt o) { return *this = *this + o; }
  CheckedInt& operator-=(CheckedInt o) { return *this = *this - o; }
  CheckedInt& operator*=(CheckedInt o) { return *this = *this * o; }

  friend constexpr auto operator<=>(CheckedInt, CheckedInt) = default;
};

inline CheckedInt abs_value(CheckedInt x) { return x.v < 0 ? -x : x; }
inline BigInt abs_value(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }
inline std::int64_t abs_value(std::int64_t x) { return x < 0 ? -x : x; }

inline std::int64_t to_int64(CheckedInt x) { return x.v; }
inline std::int64_t to_int64(std::int64_t x) { return x; }
inline std::int64_t to_int64(const BigInt& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
    throw Overflow{};
  return static_cast<std::int64_t>(x);
}

inline BigInt to_bigint(CheckedInt x) { return BigInt(x.v); }
inline BigInt to_bigint(std::int64_t x) { return BigInt(x); }
inline BigInt to_bigint(const BigInt& x) { return x; }

/// Largest e with p^e | n; n must be nonzero.
inline int p_valuation(BigInt n, std::int64_t p) {
  if (n == 0) return std::numeric_limits<int>::max();
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Non-negative residue of a big integer modulo m.
inline std::int64_t mod_reduce(const BigInt& x, std::int64_t m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

inline std::string to_string(const BigInt& x) { return x.str(); }

inline std::string to_string(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

}  // namespace dpk
