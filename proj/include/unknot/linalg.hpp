#pragma once

// Exact integer linear algebra: determinants, adjugates, quadratic values
// and Smith normal form with tracked unimodular transforms.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "unknot/errors.hpp"
#include "unknot/int_matrix.hpp"
#include "unknot/rational.hpp"

namespace unknot {

/// Determinant by fraction-free (Bareiss) elimination with row pivoting on zero pivots.
inline BigInt det_exact(const IntMatrix& m) {
  if (!m.square()) throw dimension_error("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      a.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Δ_1 … Δ_n, the leading principal minors.
inline std::vector<BigInt> leading_minors(const IntMatrix& m) {
  if (!m.square()) throw dimension_error("leading minors of a non-square matrix");
  std::vector<BigInt> out;
  out.reserve(m.rows());
  for (std::size_t k = 1; k <= m.rows(); ++k) out.push_back(det_exact(m.leading(k)));
  return out;
}

/// Classical adjugate, adj(M)·M = det(M)·I.
inline IntMatrix adjugate(const IntMatrix& m) {
  if (!m.square()) throw dimension_error("adjugate of a non-square matrix");
  const std::size_t n = m.rows();
  IntMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      BigInt c = det_exact(m.minor_matrix(i, j));
      adj(j, i) = ((i + j) % 2 == 0) ? c : BigInt(-c);
    }
  return adj;
}

/// ξᵀ·A·ξ for an integer matrix A.
inline BigInt bilinear_value(const IntMatrix& a, std::span<const BigInt> xi) {
  if (!a.square() || a.rows() != xi.size()) throw dimension_error("form and vector sizes differ");
  BigInt total = 0;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (xi[i] == 0) continue;
    BigInt row = 0;
    for (std::size_t j = 0; j < xi.size(); ++j) row += a(i, j) * xi[j];
    total += xi[i] * row;
  }
  return total;
}

/// ξᵀ Q⁻¹ ξ, evaluated as ξᵀ adj(Q) ξ / det(Q).
inline Rational quadratic_value(const IntMatrix& q, std::span<const BigInt> xi) {
  if (!q.square() || q.rows() != xi.size()) throw dimension_error("form and covector sizes differ");
  const BigInt det = det_exact(q);
  if (det == 0) throw singular_form_error("quadratic value of a singular form");
  return Rational(bilinear_value(adjugate(q), xi), det);
}

/// Inverse of a matrix with determinant ±1.
inline IntMatrix unimodular_inverse(const IntMatrix& p) {
  const BigInt det = det_exact(p);
  if (det != 1 && det != -1) throw invalid_parameters_error("matrix is not unimodular");
  IntMatrix inv = adjugate(p);
  if (det == -1)
    for (std::size_t i = 0; i < inv.rows(); ++i) inv.negate_row(i);
  return inv;
}

struct SnfDecomposition {
  IntMatrix u;  // unimodular, acts on rows
  IntMatrix d;  // diagonal, non-negative, d_1 | d_2 | …
  IntMatrix v;  // unimodular, acts on columns

  std::vector<BigInt> diagonal() const {
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
    return out;
  }

  /// Diagonal entries greater than one: the invariant factors of coker(M).
  std::vector<BigInt> invariant_factors() const {
    std::vector<BigInt> out;
    for (auto& x : diagonal())
      if (x > 1) out.push_back(x);
    return out;
  }
};

/// Smith normal form U·M·V = D. Pivots on the smallest non-zero |entry|,
/// first in row-major order.
inline SnfDecomposition smith_normal_form(const IntMatrix& m) {
  if (!m.square()) throw dimension_error("Smith normal form of a non-square matrix");
  if (det_exact(m) == 0) throw unsupported_error("Smith normal form of a singular matrix");
  const std::size_t n = m.rows();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(n);
  IntMatrix v = IntMatrix::identity(n);

  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      std::optional<std::pair<std::size_t, std::size_t>> pivot;
      BigInt best = 0;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (a(i, j) == 0) continue;
          BigInt mag = abs(a(i, j));
          if (!pivot || mag < best) {
            best = mag;
            pivot = {i, j};
          }
        }
      // Non-singular input always leaves a non-zero entry.
      a.swap_rows(t, pivot->first);
      u.swap_rows(t, pivot->first);
      a.swap_cols(t, pivot->second);
      v.swap_cols(t, pivot->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (a(i, t) == 0) continue;
        BigInt q = a(i, t) / a(t, t);
        a.add_row(i, t, -q);
        u.add_row(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        BigInt q = a(t, j) / a(t, t);
        a.add_col(j, t, -q);
        v.add_col(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < n && !offending; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(i, j) % a(t, t) != 0) {
            offending = i;
            break;
          }
      if (!offending) break;
      a.add_row(t, *offending, 1);
      u.add_row(t, *offending, 1);
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }
  }
  return {std::move(u), std::move(a), std::move(v)};
}

}  // namespace unknot
