#pragma once

// Form-level predicates and transforms: positive-definiteness, the 2×2 block
// lift of a form congruent to the identity mod 2, the mod-4 diagonal census,
// and greedy basis reduction with a tracked transform.

#include <cstddef>
#include <utility>

#include "unknot/errors.hpp"
#include "unknot/int_matrix.hpp"
#include "unknot/linalg.hpp"

namespace unknot {

inline bool is_odd(const BigInt& x) { return (x % 2) != 0; }

/// Sylvester's criterion.
inline bool is_positive_definite(const IntMatrix& m) {
  if (!m.symmetric()) throw not_symmetric_error("positive-definiteness of a non-symmetric matrix");
  for (const auto& minor : leading_minors(m))
    if (minor <= 0) return false;
  return true;
}

/// Odd diagonal and even off-diagonal entries.
inline bool is_identity_mod2(const IntMatrix& q) {
  if (!q.square()) return false;
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j)
      if (is_odd(q(i, j)) != (i == j)) return false;
  return true;
}

/// Replaces each entry by a 2×2 block: 2m-1 ↦ [[m,1],[1,2]], 2a ↦ [[a,0],[0,0]].
inline IntMatrix lift_tilde(const IntMatrix& q) {
  if (!q.symmetric()) throw not_symmetric_error("lift of a non-symmetric form");
  if (!is_identity_mod2(q)) throw parity_error("lift requires a form congruent to the identity mod 2");
  const std::size_t r = q.rows();
  IntMatrix lifted(2 * r, 2 * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j) {
        lifted(2 * i, 2 * i) = (q(i, i) + 1) / 2;
        lifted(2 * i, 2 * i + 1) = 1;
        lifted(2 * i + 1, 2 * i) = 1;
        lifted(2 * i + 1, 2 * i + 1) = 2;
      } else {
        lifted(2 * i, 2 * j) = q(i, j) / 2;
      }
    }
  return lifted;
}

/// Number of diagonal entries congruent to 3 mod 4.
inline std::size_t diag_mod4_census(const IntMatrix& q) {
  if (!q.square()) throw dimension_error("census of a non-square matrix");
  std::size_t count = 0;
  for (std::size_t i = 0; i < q.rows(); ++i) {
    if (!is_odd(q(i, i))) throw parity_error("census requires an odd diagonal");
    if (mod_floor(q(i, i), 4) == 3) ++count;
  }
  return count;
}

/// The rank-2 form [[2m₁-1, 2a],[2a, 2m₂-1]].
struct Rank2Triple {
  std::int64_t m1 = 0;
  std::int64_t a = 0;
  std::int64_t m2 = 0;

  IntMatrix form() const { return {{2 * m1 - 1, 2 * a}, {2 * a, 2 * m2 - 1}}; }
  friend auto operator<=>(const Rank2Triple&, const Rank2Triple&) = default;
};

/// A candidate linking form together with its lift and census.
struct FormCandidate {
  IntMatrix form;
  IntMatrix lift;
  std::size_t neg_count = 0;

  static FormCandidate from(IntMatrix q) {
    FormCandidate c;
    c.lift = lift_tilde(q);
    c.neg_count = diag_mod4_census(q);
    c.form = std::move(q);
    return c;
  }
};

struct ReducedBasis {
  IntMatrix form;       // P·Q·Pᵀ
  IntMatrix transform;  // P, unimodular
};

inline BigInt diagonal_product(const IntMatrix& q) {
  BigInt p = 1;
  for (std::size_t i = 0; i < q.rows(); ++i) p *= q(i, i);
  return p;
}

/// Greedy size reduction: for each basis vector j in turn, subtract the best
/// integer multiple of it from every other vector i whenever that strictly
/// lowers Q_ii. Sweeps repeat until a full sweep changes nothing.
inline ReducedBasis reduce_basis(const IntMatrix& q) {
  if (!q.symmetric()) throw not_symmetric_error("reduction of a non-symmetric form");
  const std::size_t r = q.rows();
  IntMatrix form = q;
  IntMatrix p = IntMatrix::identity(r);

  auto reduced_diag = [&](std::size_t i, std::size_t j, const BigInt& k) {
    return form(i, i) - 2 * k * form(i, j) + k * k * form(j, j);
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t j = 0; j < r; ++j) {
      if (form(j, j) <= 0) throw invalid_parameters_error("reduction requires a positive-definite form");
      for (std::size_t i = 0; i < r; ++i) {
        if (i == j || form(i, j) == 0) continue;
        const BigInt lo = floor_div(form(i, j), form(j, j));
        const BigInt hi = lo + 1;
        const BigInt flo = reduced_diag(i, j, lo);
        const BigInt fhi = reduced_diag(i, j, hi);
        BigInt k = lo;
        BigInt best = flo;
        if (fhi < flo || (fhi == flo && abs(hi) < abs(lo))) {
          k = hi;
          best = fhi;
        }
        if (k == 0 || best >= form(i, i)) continue;
        // v_i <- v_i - k v_j
        form.add_row(i, j, -k);
        form.add_col(i, j, -k);
        p.add_row(i, j, -k);
        changed = true;
      }
    }
  }
  return {std::move(form), std::move(p)};
}

}  // namespace unknot
