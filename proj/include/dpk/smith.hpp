#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "dpk/matrix.hpp"

namespace dpk {

/// U * M * V = S with U, V unimodular and S diagonal, S(i,i) | S(i+1,i+1), S(i,i) >= 0.
/// `v_inverse` is V^-1, maintained alongside V so kernels can be coordinatised without inversion.
template <typename T>
struct SmithForm {
  Matrix<T> u;
  Matrix<T> s;
  Matrix<T> v;
  Matrix<T> v_inverse;
  std::size_t rank = 0;
};

namespace detail {

template <typename T>
std::optional<std::pair<std::size_t, std::size_t>> smallest_nonzero(const Matrix<T>& s, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  T best_abs(0);
  for (std::size_t i = t; i < s.rows(); ++i)
    for (std::size_t j = t; j < s.cols(); ++j) {
      if (s(i, j) == T(0)) continue;
      T a = abs_value(s(i, j));
      if (!best || a < best_abs) {
        best = {i, j};
        best_abs = a;
        if (a == T(1)) return best;
      }
    }
  return best;
}

}  // namespace detail

template <typename T>
SmithForm<T> smith_normal_form(const Matrix<T>& m) {
  SmithForm<T> f{Matrix<T>::identity(m.rows()), m, Matrix<T>::identity(m.cols()),
                 Matrix<T>::identity(m.cols()), 0};
  auto& s = f.s;
  const std::size_t n = std::min(s.rows(), s.cols());

  auto swap_rows = [&](std::size_t a, std::size_t b) {
    s.swap_rows(a, b);
    f.u.swap_rows(a, b);
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    s.swap_cols(a, b);
    f.v.swap_cols(a, b);
    f.v_inverse.swap_rows(a, b);
  };
  // col[dst] += q * col[src]; the inverse update is row[src] -= q * row[dst].
  auto add_col = [&](std::size_t dst, std::size_t src, const T& q) {
    s.add_col(dst, src, q);
    f.v.add_col(dst, src, q);
    f.v_inverse.add_row(src, dst, -q);
  };
  auto add_row = [&](std::size_t dst, std::size_t src, const T& q) {
    s.add_row(dst, src, q);
    f.u.add_row(dst, src, q);
  };

  for (std::size_t t = 0; t < n; ++t) {
    auto pivot = detail::smallest_nonzero(s, t);
    if (!pivot) break;
    swap_rows(t, pivot->first);
    swap_cols(t, pivot->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < s.rows(); ++i) {
        if (s(i, t) == T(0)) continue;
        T q = s(i, t) / s(t, t);
        if (q != T(0)) add_row(i, t, -q);
        if (s(i, t) != T(0)) clean = false;
      }
      for (std::size_t j = t + 1; j < s.cols(); ++j) {
        if (s(t, j) == T(0)) continue;
        T q = s(t, j) / s(t, t);
        if (q != T(0)) add_col(j, t, -q);
        if (s(t, j) != T(0)) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot survived; promote it and repeat.
        std::size_t bi = t, bj = t;
        T best = abs_value(s(t, t));
        for (std::size_t i = t + 1; i < s.rows(); ++i)
          if (s(i, t) != T(0) && abs_value(s(i, t)) < best) {
            best = abs_value(s(i, t));
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < s.cols(); ++j)
          if (s(t, j) != T(0) && abs_value(s(t, j)) < best) {
            best = abs_value(s(t, j));
            bi = t;
            bj = j;
          }
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      // Divisibility chain: fold an offending row into the pivot row.
      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < s.rows() && !offending; ++i)
        for (std::size_t j = t + 1; j < s.cols(); ++j)
          if (s(i, j) % s(t, t) != T(0)) {
            offending = i;
            break;
          }
      if (!offending) break;
      add_row(t, *offending, T(1));
    }
    if (s(t, t) < T(0)) {
      s.negate_row(t);
      f.u.negate_row(t);
    }
    f.rank = t + 1;
  }
  return f;
}

/// Invariant factors of coker(M) restricted to its torsion part: the diagonal entries > 1.
template <typename T>
std::vector<BigInt> torsion_factors(const SmithForm<T>& f) {
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < f.rank; ++i) {
    BigInt d = to_bigint(f.s(i, i));
    if (d > 1) out.push_back(d);
  }
  return out;
}

}  // namespace dpk
