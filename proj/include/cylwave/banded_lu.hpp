#pragma once

// LU factorization with partial pivoting of a general band matrix, stored
// and processed the way LAPACK's xGBTRF/xGBTRS do (unblocked). Used for the
// reduced two-field systems of each modal block, which are pentadiagonal
// when the unknowns are interleaved per node.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "cylwave/error.hpp"

namespace cylwave {

namespace detail {
template <class T>
T conj_if(const T& v) {
  if constexpr (std::is_floating_point_v<T>) {
    return v;
  } else {
    return std::conj(v);
  }
}
}  // namespace detail

template <class T>
class BandedLU {
 public:
  BandedLU(std::size_t n, int kl, int ku)
      : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1), ab_(ldab_ * n, T{}), ipiv_(n, 0) {}

  std::size_t size() const { return n_; }

  /// Entry A(i, j); only valid inside the band |i-j| within (kl, ku).
  T& at(std::size_t i, std::size_t j) { return ab_[index(i, j)]; }
  const T& at(std::size_t i, std::size_t j) const { return ab_[index(i, j)]; }

  void factorize() {
    const int kv = ku_ + kl_;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(n_);
    std::ptrdiff_t ju = 0;
    for (std::ptrdiff_t j = 0; j < n; ++j) {
      const std::ptrdiff_t km = std::min<std::ptrdiff_t>(kl_, n - 1 - j);
      std::ptrdiff_t jp = 0;
      double best = -1.0;
      for (std::ptrdiff_t p = 0; p <= km; ++p) {
        const double m = std::abs(ab(kv + p, j));
        if (m > best) {
          best = m;
          jp = p;
        }
      }
      ipiv_[static_cast<std::size_t>(j)] = static_cast<std::size_t>(j + jp);
      if (!(best > 0.0) || !std::isfinite(best)) {
        throw Error(ErrorKind::numerical, "banded LU: singular matrix at column " + std::to_string(j));
      }
      ju = std::max(ju, std::min<std::ptrdiff_t>(j + ku_ + jp, n - 1));
      if (jp != 0) {
        for (std::ptrdiff_t c = j; c <= ju; ++c) std::swap(ab(kv + j - c, c), ab(kv + j + jp - c, c));
      }
      if (km > 0) {
        const T inv = T(1) / ab(kv, j);
        for (std::ptrdiff_t r = 1; r <= km; ++r) ab(kv + r, j) *= inv;
        for (std::ptrdiff_t c = j + 1; c <= ju; ++c) {
          const T u = ab(kv + j - c, c);
          if (u == T{}) continue;
          for (std::ptrdiff_t r = 1; r <= km; ++r) ab(kv + j + r - c, c) -= ab(kv + r, j) * u;
        }
      }
    }
    inv_pivot_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) inv_pivot_[j] = T(1) / ab(kv, static_cast<std::ptrdiff_t>(j));
    factored_ = true;
  }

  /// Overwrites rhs with the solution of A x = rhs.
  void solve(std::span<T> rhs) const {
    check(rhs.size());
    const int kv = ku_ + kl_;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(n_);
    for (std::ptrdiff_t j = 0; j + 1 < n; ++j) {
      const std::ptrdiff_t km = std::min<std::ptrdiff_t>(kl_, n - 1 - j);
      const auto l = static_cast<std::ptrdiff_t>(ipiv_[static_cast<std::size_t>(j)]);
      if (l != j) std::swap(rhs[static_cast<std::size_t>(l)], rhs[static_cast<std::size_t>(j)]);
      const T bj = rhs[static_cast<std::size_t>(j)];
      for (std::ptrdiff_t r = 1; r <= km; ++r) rhs[static_cast<std::size_t>(j + r)] -= ab(kv + r, j) * bj;
    }
    for (std::ptrdiff_t j = n - 1; j >= 0; --j) {
      T& xj = rhs[static_cast<std::size_t>(j)];
      xj *= inv_pivot_[static_cast<std::size_t>(j)];
      const T v = xj;
      for (std::ptrdiff_t i = std::max<std::ptrdiff_t>(0, j - kv); i < j; ++i) {
        rhs[static_cast<std::size_t>(i)] -= ab(kv + i - j, j) * v;
      }
    }
  }

  /// Overwrites rhs with the solution of A^H x = rhs (A^T for real T).
  void solve_adjoint(std::span<T> rhs) const {
    check(rhs.size());
    const int kv = ku_ + kl_;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(n_);
    for (std::ptrdiff_t j = 0; j < n; ++j) {
      T s = rhs[static_cast<std::size_t>(j)];
      for (std::ptrdiff_t i = std::max<std::ptrdiff_t>(0, j - kv); i < j; ++i) {
        s -= detail::conj_if(ab(kv + i - j, j)) * rhs[static_cast<std::size_t>(i)];
      }
      rhs[static_cast<std::size_t>(j)] = s * detail::conj_if(inv_pivot_[static_cast<std::size_t>(j)]);
    }
    for (std::ptrdiff_t j = n - 2; j >= 0; --j) {
      const std::ptrdiff_t km = std::min<std::ptrdiff_t>(kl_, n - 1 - j);
      T s = rhs[static_cast<std::size_t>(j)];
      for (std::ptrdiff_t r = 1; r <= km; ++r) s -= detail::conj_if(ab(kv + r, j)) * rhs[static_cast<std::size_t>(j + r)];
      rhs[static_cast<std::size_t>(j)] = s;
      const auto l = static_cast<std::ptrdiff_t>(ipiv_[static_cast<std::size_t>(j)]);
      if (l != j) std::swap(rhs[static_cast<std::size_t>(l)], rhs[static_cast<std::size_t>(j)]);
    }
  }

 private:
  std::size_t index(std::size_t i, std::size_t j) const {
    return j * ldab_ + static_cast<std::size_t>(kl_ + ku_ + static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(j));
  }
  T& ab(std::ptrdiff_t row, std::ptrdiff_t col) { return ab_[static_cast<std::size_t>(col) * ldab_ + static_cast<std::size_t>(row)]; }
  const T& ab(std::ptrdiff_t row, std::ptrdiff_t col) const {
    return ab_[static_cast<std::size_t>(col) * ldab_ + static_cast<std::size_t>(row)];
  }
  void check(std::size_t m) const {
    if (!factored_) throw Error(ErrorKind::numerical, "banded LU: solve before factorize");
    if (m != n_) throw Error(ErrorKind::validation, "banded LU: right-hand side has wrong length");
  }

  std::size_t n_;
  int kl_;
  int ku_;
  std::size_t ldab_;
  std::vector<T> ab_;
  std::vector<std::size_t> ipiv_;
  std::vector<T> inv_pivot_;
  bool factored_ = false;
};

}  // namespace cylwave
