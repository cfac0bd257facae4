#pragma once

// Candidate linking forms Q ≡ I (mod 2) with prescribed determinant and
// mod-4 diagonal census.
//
// Rank 2 is enumerated exactly as the triples (m₁, a, m₂). For general rank
// the enumeration returns a superset of representatives:
//
//   1. scan every integral form R with d₁ ≤ … ≤ d_r, ∏ d_i ≤ C_r·δ and
//      |2·R_ij| ≤ d_i (i < j); every GL(r,Z)-class has a Minkowski-reduced
//      member inside this range;
//   2. for each R, solve P̄·R̄·P̄ᵀ = I over F₂, lift P̄ to a unimodular P and
//      keep Q = P·R·Pᵀ. Every class of GL(r,Z)₂ sitting inside the class of
//      R is reached this way, since GL(r,Z)₂ is the kernel of reduction mod 2;
//   3. size-reduce Q with even moves, sort the diagonal and fix signs.
//
// Permuting the basis changes the GL(r,Z)₂-class but not the lifted
// correction table up to isomorphism, so sorting never loses a verdict.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "unknot/abelian_group.hpp"
#include "unknot/corrections.hpp"
#include "unknot/errors.hpp"
#include "unknot/int_matrix.hpp"
#include "unknot/linalg.hpp"
#include "unknot/quadforms.hpp"

namespace unknot {

/// All (m₁, a, m₂) with (2m₁-1)(2m₂-1) - 4a² = δ, 0 ≤ a < m₁ ≤ m₂ and exactly
/// n of m₁, m₂ even; sorted.
inline std::vector<Rank2Triple> enumerate_rank2(std::int64_t delta, std::int64_t n) {
  if (delta <= 0 || delta % 2 == 0) throw invalid_parameters_error("determinant must be odd and positive");
  std::vector<Rank2Triple> out;
  if (n < 0 || n > 2) return out;
  // d₁ ≥ 2a+1 and d₂ ≥ d₁ force (2a+1)² ≤ δ + 4a², i.e. 4a + 1 ≤ δ.
  for (std::int64_t a = 0; 4 * a + 1 <= delta; ++a) {
    const std::int64_t target = delta + 4 * a * a;
    for (std::int64_t d1 = 2 * a + 1; d1 * d1 <= target; d1 += 2) {
      if (target % d1 != 0) continue;
      const std::int64_t d2 = target / d1;
      const Rank2Triple t{(d1 + 1) / 2, a, (d2 + 1) / 2};
      const std::int64_t evens = (t.m1 % 2 == 0) + (t.m2 % 2 == 0);
      if (evens == n) out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Diagonal-product bound C_r for reduced forms of rank r, as ⌊num/den⌋·δ.
struct ProductBound {
  std::int64_t num = 1;
  std::int64_t den = 1;
};

inline ProductBound reduction_bound(std::size_t r) {
  switch (r) {
    case 1: return {1, 1};
    case 2: return {4, 3};
    case 3: return {2, 1};
    default: return {std::int64_t{1} << (r - 2), 1};
  }
}

/// Ranks above three use an unproven product bound.
inline bool rank_is_experimental(std::size_t r) { return r > 3; }

namespace detail {

/// Exact determinant of a small int64 matrix (Bareiss, 128-bit intermediates).
inline __int128 det_small(std::vector<std::int64_t> m, std::size_t n) {
  std::vector<__int128> a(m.begin(), m.end());
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t s = k + 1;
      while (s < n && a[s * n + k] == 0) ++s;
      if (s == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[s * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
      a[i * n + k] = 0;
    }
    prev = a[k * n + k];
  }
  return sign * a[n * n - 1];
}

/// Forms R of rank r and determinant δ with sorted diagonal, bounded product
/// and |2R_ij| ≤ d_i; positive-definite.
inline std::vector<IntMatrix> reduced_forms(std::size_t r, std::int64_t delta) {
  const ProductBound pb = reduction_bound(r);
  const std::int64_t limit = pb.num * delta / pb.den;
  std::vector<IntMatrix> out;
  std::vector<std::int64_t> diag(r);
  std::vector<std::int64_t> m(r * r, 0);

  std::function<void(std::size_t, std::size_t)> fill_offdiag;
  // Entries are filled column by column so each leading block is complete
  // before its minor is checked.
  fill_offdiag = [&](std::size_t col, std::size_t row) {
    if (col == r) {
      if (det_small(m, r) == delta) {
        IntMatrix q(r, r);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) q(i, j) = m[i * r + j];
        out.push_back(std::move(q));
      }
      return;
    }
    if (row == col) {
      std::vector<std::int64_t> lead((col + 1) * (col + 1));
      for (std::size_t i = 0; i <= col; ++i)
        for (std::size_t j = 0; j <= col; ++j) lead[i * (col + 1) + j] = m[i * r + j];
      if (det_small(lead, col + 1) <= 0) return;
      fill_offdiag(col + 1, 0);
      return;
    }
    const std::int64_t half = diag[row] / 2;
    for (std::int64_t v = -half; v <= half; ++v) {
      m[row * r + col] = m[col * r + row] = v;
      fill_offdiag(col, row + 1);
    }
    m[row * r + col] = m[col * r + row] = 0;
  };

  std::function<void(std::size_t, std::int64_t, std::int64_t)> fill_diag = [&](std::size_t i, std::int64_t lo,
                                                                                std::int64_t product) {
    if (i == r) {
      for (std::size_t k = 0; k < r; ++k) m[k * r + k] = diag[k];
      fill_offdiag(1, 0);
      return;
    }
    for (std::int64_t d = lo;; ++d) {
      // remaining r-i entries are each ≥ d
      std::int64_t p = product;
      bool over = false;
      for (std::size_t k = i; k < r; ++k) {
        p *= d;
        if (p > limit) {
          over = true;
          break;
        }
      }
      if (over) break;
      diag[i] = d;
      fill_diag(i + 1, d, product * d);
    }
  };
  if (limit >= 1) fill_diag(0, 1, 1);
  return out;
}

/// All P̄ over F₂ with P̄·R̄·P̄ᵀ = I; rows as bitmasks.
inline std::vector<std::vector<unsigned>> orthonormal_frames_mod2(const IntMatrix& form) {
  const std::size_t r = form.rows();
  std::vector<unsigned> rbar(r, 0);  // row i of R mod 2 as a mask
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (is_odd(form(i, j))) rbar[i] |= 1U << j;
  auto pair = [&](unsigned x, unsigned y) {
    unsigned acc = 0;
    for (std::size_t i = 0; i < r; ++i)
      if (x >> i & 1U) acc ^= static_cast<unsigned>(__builtin_popcount(rbar[i] & y) & 1);
    return acc;
  };
  std::vector<unsigned> unit;
  for (unsigned x = 1; x < (1U << r); ++x)
    if (pair(x, x) == 1) unit.push_back(x);

  std::vector<std::vector<unsigned>> frames;
  std::vector<unsigned> rows;
  std::function<void()> extend = [&] {
    if (rows.size() == r) {
      frames.push_back(rows);
      return;
    }
    for (unsigned x : unit) {
      bool ok = true;
      for (unsigned y : rows)
        if (pair(x, y) != 0) {
          ok = false;
          break;
        }
      if (!ok) continue;
      rows.push_back(x);
      extend();
      rows.pop_back();
    }
  };
  extend();
  return frames;
}

/// An integer matrix of determinant ±1 reducing to the given F₂ matrix.
inline IntMatrix lift_unimodular_mod2(const std::vector<unsigned>& rows_mod2) {
  const std::size_t r = rows_mod2.size();
  std::vector<unsigned> a = rows_mod2;
  struct Op {
    bool swap;
    std::size_t i, j;
  };
  std::vector<Op> ops;
  for (std::size_t c = 0; c < r; ++c) {
    std::size_t p = c;
    while (p < r && !(a[p] >> c & 1U)) ++p;
    if (p == r) throw invalid_parameters_error("matrix is singular mod 2");
    if (p != c) {
      std::swap(a[p], a[c]);
      ops.push_back({true, c, p});
    }
    for (std::size_t i = 0; i < r; ++i)
      if (i != c && (a[i] >> c & 1U)) {
        a[i] ^= a[c];
        ops.push_back({false, i, c});
      }
  }
  // E_m⋯E_1·P̄ = I, so P̄ = E_1⁻¹⋯E_m⁻¹; lift each inverse and multiply from the right end.
  IntMatrix x = IntMatrix::identity(r);
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    if (it->swap)
      x.swap_rows(it->i, it->j);
    else
      x.add_row(it->i, it->j, -1);
  }
  return x;
}

}  // namespace detail

/// Size-reduces Q ≡ I (mod 2) with moves v_i ← v_i - 2k·v_j, then sorts the
/// diagonal ascending and makes the first row non-negative by sign flips.
inline IntMatrix normalize_candidate(const IntMatrix& q) {
  const std::size_t r = q.rows();
  IntMatrix form = q;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t i = 0; i < r; ++i) {
        if (i == j) continue;
        // minimise q_ii - 4k q_ij + 4k² q_jj over integers k
        const BigInt lo = floor_div(form(i, j), 2 * form(j, j));
        BigInt best_k = 0;
        BigInt best = form(i, i);
        for (const BigInt& k : {lo, BigInt(lo + 1)}) {
          const BigInt v = form(i, i) - 4 * k * form(i, j) + 4 * k * k * form(j, j);
          if (v < best) {
            best = v;
            best_k = k;
          }
        }
        if (best_k == 0) continue;
        form.add_row(i, j, -2 * best_k);
        form.add_col(i, j, -2 * best_k);
        changed = true;
      }
  }
  std::vector<std::size_t> perm(r);
  for (std::size_t i = 0; i < r; ++i) perm[i] = i;
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return form(a, a) < form(b, b); });
  IntMatrix sorted(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) sorted(i, j) = form(perm[i], perm[j]);
  for (std::size_t j = 1; j < r; ++j)
    if (sorted(0, j) < 0) {
      sorted.negate_row(j);
      sorted.negate_col(j);
    }
  return sorted;
}

struct SupersetOptions {
  bool dedupe_by_fingerprint = false;
  unsigned jobs = 1;
};

/// Multiset fingerprint of a candidate: invariant factors and sorted values of m on its lift.
struct Fingerprint {
  std::vector<std::int64_t> factors;
  std::vector<Rational> values;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
  friend bool operator<(const Fingerprint& a, const Fingerprint& b) {
    if (a.factors != b.factors) return a.factors < b.factors;
    return std::lexicographical_compare(a.values.begin(), a.values.end(), b.values.begin(), b.values.end());
  }
};

inline Fingerprint table_fingerprint(const CorrectionTable& t) {
  return {t.group.invariant_factors(), t.sorted_values()};
}

/// Fingerprint of the lifted form Q̃ (scanned in a reduced basis).
inline Fingerprint lifted_fingerprint(const IntMatrix& q, unsigned jobs = 1) {
  const IntMatrix reduced = reduce_basis(lift_tilde(q)).form;
  return table_fingerprint(correction_table(reduced, {jobs, false}));
}

/// Superset of representatives of the GL(r,Z)₂-classes of positive-definite
/// Q ≡ I (mod 2) with det δ and exactly n diagonal entries ≡ 3 (mod 4).
inline std::vector<IntMatrix> enumerate_rank_r_superset(std::size_t r, std::int64_t delta, std::size_t n,
                                                        const SupersetOptions& opts = {}) {
  if (r == 0) throw invalid_parameters_error("rank must be positive");
  if (delta <= 0 || delta % 2 == 0) throw invalid_parameters_error("determinant must be odd and positive");
  std::set<IntMatrix> found;
  if (n > r) return {};
  for (const IntMatrix& base : detail::reduced_forms(r, delta)) {
    for (const auto& frame : detail::orthonormal_frames_mod2(base)) {
      const IntMatrix p = detail::lift_unimodular_mod2(frame);
      IntMatrix q = normalize_candidate(congruence(p, base));
      if (diag_mod4_census(q) != n) continue;
      found.insert(std::move(q));
    }
  }
  std::vector<IntMatrix> out(found.begin(), found.end());
  if (opts.dedupe_by_fingerprint && out.size() > 1) {
    std::vector<Fingerprint> prints(out.size());
    parallel_for(out.size(), opts.jobs, [&](std::size_t i) { prints[i] = lifted_fingerprint(out[i]); });
    std::set<Fingerprint> seen;
    std::vector<IntMatrix> kept;
    for (std::size_t i = 0; i < out.size(); ++i)
      if (seen.insert(prints[i]).second) kept.push_back(out[i]);
    out = std::move(kept);
  }
  return out;
}

/// Keeps the candidates presenting a group with the target's invariant factors.
inline std::vector<IntMatrix> filter_by_group(const std::vector<IntMatrix>& candidates, const AbelianGroup& target) {
  std::vector<IntMatrix> out;
  for (const auto& c : candidates) {
    std::vector<std::int64_t> factors;
    for (const auto& f : smith_normal_form(c).invariant_factors()) factors.push_back(static_cast<std::int64_t>(f));
    if (factors == target.invariant_factors()) out.push_back(c);
  }
  return out;
}

/// Rank-2 convenience: triple forms filtered by group.
inline std::vector<Rank2Triple> filter_triples_by_group(const std::vector<Rank2Triple>& triples,
                                                        const AbelianGroup& target) {
  std::vector<Rank2Triple> out;
  for (const auto& t : triples)
    if (!filter_by_group({t.form()}, target).empty()) out.push_back(t);
  return out;
}

/// Reads (m₁, a, m₂) off a normalized rank-2 form.
inline Rank2Triple triple_of(const IntMatrix& q) {
  if (q.rows() != 2 || !is_identity_mod2(q)) throw invalid_parameters_error("not a rank-2 form congruent to I mod 2");
  return {static_cast<std::int64_t>((q(0, 0) + 1) / 2), static_cast<std::int64_t>(q(0, 1) / 2),
          static_cast<std::int64_t>((q(1, 1) + 1) / 2)};
}

}  // namespace unknot
