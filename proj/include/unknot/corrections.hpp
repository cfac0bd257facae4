#pragma once

// The correction-term function
//
//   m_Q(g) = min { (ξᵀ Q⁻¹ ξ - r) / 4 : ξ characteristic, [ξ] = g }
//
// computed exactly by scanning the characteristic box -Q_ii ≤ ξ_i ≤ Q_ii - 2.
// Values are compared through the integer numerator ξᵀ·adj(Q)·ξ, so the scan
// itself never touches rationals. The scan runs on 64-bit integers when the
// numerator provably fits and on BigInt otherwise.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "unknot/abelian_group.hpp"
#include "unknot/errors.hpp"
#include "unknot/int_matrix.hpp"
#include "unknot/linalg.hpp"
#include "unknot/parallel.hpp"
#include "unknot/quadforms.hpp"
#include "unknot/rational.hpp"

namespace unknot {

/// Characteristic covectors with -Q_ii ≤ ξ_i ≤ Q_ii - 2, in lexicographic order.
class CharacteristicBox {
 public:
  explicit CharacteristicBox(const IntMatrix& q) {
    if (!q.square()) throw dimension_error("characteristic box of a non-square matrix");
    for (std::size_t i = 0; i < q.rows(); ++i) {
      if (q(i, i) <= 0) throw invalid_parameters_error("characteristic box needs a positive diagonal");
      if (!fits_int64(q(i, i))) throw unsupported_error("diagonal entry too large for enumeration");
      counts_.push_back(static_cast<std::int64_t>(q(i, i)));
    }
  }

  std::size_t rank() const { return counts_.size(); }
  std::int64_t lower(std::size_t i) const { return -counts_[i]; }
  /// Number of admissible values of coordinate i (= Q_ii).
  std::int64_t count(std::size_t i) const { return counts_[i]; }

  BigInt size() const {
    BigInt s = 1;
    for (auto c : counts_) s *= c;
    return s;
  }

  class iterator {
   public:
    using value_type = std::vector<std::int64_t>;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(const CharacteristicBox* box, bool end) : box_(box), end_(end || box->counts_.empty()) {
      if (!end_) {
        xi_.resize(box->rank());
        for (std::size_t i = 0; i < xi_.size(); ++i) xi_[i] = box->lower(i);
      }
    }
    const value_type& operator*() const { return xi_; }
    iterator& operator++() {
      for (std::size_t i = xi_.size(); i-- > 0;) {
        if (xi_[i] + 2 <= box_->lower(i) + 2 * (box_->count(i) - 1)) {
          xi_[i] += 2;
          return *this;
        }
        xi_[i] = box_->lower(i);
      }
      end_ = true;
      return *this;
    }
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.end_ == b.end_ && (a.end_ || a.xi_ == b.xi_); }

   private:
    const CharacteristicBox* box_ = nullptr;
    bool end_ = true;
    value_type xi_;
  };

  iterator begin() const { return iterator(this, false); }
  iterator end() const { return iterator(this, true); }

 private:
  std::vector<std::int64_t> counts_;
};

inline CharacteristicBox characteristic_box(const IntMatrix& q) { return CharacteristicBox(q); }

inline AbelianGroup::Element coset_label(const AbelianGroup& group, std::span<const BigInt> xi) {
  return group.project<BigInt>(xi);
}

struct CorrectionTable {
  IntMatrix form;
  AbelianGroup group;
  std::vector<Rational> values;   // indexed by group element
  std::vector<IntVector> argmin;  // first minimizing covector per element; may be empty

  const Rational& spin_value() const { return values.front(); }
  const Rational& value(AbelianGroup::Element g) const { return values.at(static_cast<std::size_t>(g)); }

  Rational min_value() const { return *std::min_element(values.begin(), values.end()); }

  /// Minimum over non-zero elements; empty for the trivial group.
  std::optional<Rational> min_nonzero() const {
    if (values.size() < 2) return std::nullopt;
    return *std::min_element(values.begin() + 1, values.end());
  }

  std::vector<Rational> sorted_values() const {
    std::vector<Rational> v = values;
    std::sort(v.begin(), v.end());
    return v;
  }
};

struct CorrectionOptions {
  unsigned jobs = 1;  // 0 = hardware concurrency
  bool record_argmin = true;
};

namespace detail {

template <class Int>
struct PartialMinima {
  std::vector<Int> best;
  std::vector<char> seen;
  std::vector<std::int64_t> argmin;  // rank entries per element
};

/// Scans the box restricted to first-coordinate value indices [first_lo, first_hi).
template <class Int>
PartialMinima<Int> scan_box(const CharacteristicBox& box, const std::vector<Int>& adj, const AbelianGroup& group,
                            const std::vector<std::vector<std::int64_t>>& proj, std::int64_t first_lo,
                            std::int64_t first_hi, bool record) {
  const std::size_t r = box.rank();
  const auto order = static_cast<std::size_t>(group.order());
  const auto& factors = group.invariant_factors();
  PartialMinima<Int> out;
  out.best.assign(order, Int(0));
  out.seen.assign(order, 0);
  if (record) out.argmin.assign(order * r, 0);
  if (first_lo >= first_hi) return out;

  std::vector<std::int64_t> xi(r);
  for (std::size_t i = 0; i < r; ++i) xi[i] = box.lower(i);
  xi[0] = box.lower(0) + 2 * first_lo;

  // w = adj·ξ, n = ξᵀ·adj·ξ, lab = projection of ξ
  std::vector<Int> w(r, Int(0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) w[i] += adj[i * r + j] * Int(xi[j]);
  Int n(0);
  for (std::size_t i = 0; i < r; ++i) n += Int(xi[i]) * w[i];
  std::vector<std::int64_t> lab(factors.size());
  for (std::size_t k = 0; k < factors.size(); ++k) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < r; ++j) acc = (acc + proj[k][j] * (xi[j] % factors[k])) % factors[k];
    lab[k] = acc < 0 ? acc + factors[k] : acc;
  }

  auto shift = [&](std::size_t c, std::int64_t delta) {
    const Int d(delta);
    n += Int(2) * d * w[c] + d * d * adj[c * r + c];
    for (std::size_t i = 0; i < r; ++i) w[i] += d * adj[i * r + c];
    for (std::size_t k = 0; k < factors.size(); ++k) {
      std::int64_t v = (lab[k] + (delta % factors[k]) * proj[k][c]) % factors[k];
      lab[k] = v < 0 ? v + factors[k] : v;
    }
    xi[c] += delta;
  };

  const std::int64_t first_last = box.lower(0) + 2 * (first_hi - 1);
  for (;;) {
    std::size_t e = 0;
    for (std::size_t k = 0; k < factors.size(); ++k) e = e * static_cast<std::size_t>(factors[k]) + static_cast<std::size_t>(lab[k]);
    if (!out.seen[e] || n < out.best[e]) {
      out.seen[e] = 1;
      out.best[e] = n;
      if (record) std::copy(xi.begin(), xi.end(), out.argmin.begin() + static_cast<std::ptrdiff_t>(e * r));
    }
    // odometer step, last coordinate fastest
    std::size_t c = r;
    bool done = false;
    for (;;) {
      if (c == 0) {
        done = true;
        break;
      }
      --c;
      const std::int64_t top = (c == 0) ? first_last : box.lower(c) + 2 * (box.count(c) - 1);
      if (xi[c] < top) {
        shift(c, 2);
        break;
      }
      if (c == 0) {
        done = true;
        break;
      }
      shift(c, box.lower(c) - xi[c]);
    }
    if (done) break;
  }
  return out;
}

template <class Int>
std::pair<std::vector<BigInt>, std::vector<IntVector>> minimize(const IntMatrix& adj, const CharacteristicBox& box,
                                                                const AbelianGroup& group,
                                                                const std::vector<std::vector<std::int64_t>>& proj,
                                                                const CorrectionOptions& opts) {
  const std::size_t r = box.rank();
  std::vector<Int> adj_flat;
  adj_flat.reserve(r * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) adj_flat.push_back(Int(adj(i, j)));

  const std::int64_t first_count = box.count(0);
  unsigned jobs = opts.jobs == 0 ? default_jobs() : opts.jobs;
  const auto chunks = static_cast<std::size_t>(std::min<std::int64_t>(std::max(1U, jobs), first_count));
  std::vector<PartialMinima<Int>> partials(chunks);
  parallel_for(chunks, jobs, [&](std::size_t c) {
    const std::int64_t lo = first_count * static_cast<std::int64_t>(c) / static_cast<std::int64_t>(chunks);
    const std::int64_t hi = first_count * static_cast<std::int64_t>(c + 1) / static_cast<std::int64_t>(chunks);
    partials[c] = scan_box<Int>(box, adj_flat, group, proj, lo, hi, opts.record_argmin);
  });

  // Chunks are in lexicographic order; strict comparison keeps the first argmin.
  const auto order = static_cast<std::size_t>(group.order());
  PartialMinima<Int>& acc = partials.front();
  for (std::size_t c = 1; c < chunks; ++c) {
    const auto& p = partials[c];
    for (std::size_t e = 0; e < order; ++e) {
      if (!p.seen[e]) continue;
      if (!acc.seen[e] || p.best[e] < acc.best[e]) {
        acc.seen[e] = 1;
        acc.best[e] = p.best[e];
        if (opts.record_argmin)
          std::copy_n(p.argmin.begin() + static_cast<std::ptrdiff_t>(e * r), r,
                      acc.argmin.begin() + static_cast<std::ptrdiff_t>(e * r));
      }
    }
  }

  std::vector<BigInt> best(order);
  std::vector<IntVector> witnesses;
  for (std::size_t e = 0; e < order; ++e) {
    if (!acc.seen[e]) throw error("characteristic box missed a coset; is the form positive-definite?");
    best[e] = BigInt(acc.best[e]);
  }
  if (opts.record_argmin) {
    witnesses.resize(order);
    for (std::size_t e = 0; e < order; ++e)
      for (std::size_t i = 0; i < r; ++i) witnesses[e].push_back(BigInt(acc.argmin[e * r + i]));
  }
  return {std::move(best), std::move(witnesses)};
}

inline void check_form_for_table(const IntMatrix& q) {
  if (!q.square() || q.rows() == 0) throw dimension_error("correction table needs a non-empty square form");
  if (!q.symmetric()) throw not_symmetric_error("correction table of a non-symmetric form");
  if (!is_positive_definite(q)) throw invalid_parameters_error("correction table needs a positive-definite form");
  if (!is_odd(det_exact(q))) throw unsupported_error("correction table needs an odd determinant");
}

}  // namespace detail

/// m_Q on every element of Γ_Q, by exhaustive scan of the characteristic box.
inline CorrectionTable correction_table(const IntMatrix& q, const CorrectionOptions& opts = {}) {
  detail::check_form_for_table(q);
  const std::size_t r = q.rows();
  const BigInt det = det_exact(q);
  const IntMatrix adj = adjugate(q);
  const CharacteristicBox box(q);

  CorrectionTable table;
  table.form = q;
  table.group = AbelianGroup::presented_by(q);

  std::vector<std::vector<std::int64_t>> proj;
  {
    // Projection rows reduced mod each factor, recovered from the group itself.
    const auto& factors = table.group.invariant_factors();
    proj.assign(factors.size(), std::vector<std::int64_t>(r));
    for (std::size_t j = 0; j < r; ++j) {
      IntVector unit(r);
      unit[j] = 1;
      const auto lab = table.group.label(table.group.project(unit));
      for (std::size_t k = 0; k < factors.size(); ++k) proj[k][j] = lab[k];
    }
  }

  // |ξᵀ adj ξ| and every incremental update stay below 8·max|adj|·(Σ Q_ii)².
  BigInt diag_sum = 0;
  for (std::size_t i = 0; i < r; ++i) diag_sum += q(i, i);
  const BigInt bound = 8 * adj.max_abs() * diag_sum * diag_sum;
  const bool small = bound < (BigInt(1) << 62);

  auto [numerators, witnesses] = small ? detail::minimize<std::int64_t>(adj, box, table.group, proj, opts)
                                       : detail::minimize<BigInt>(adj, box, table.group, proj, opts);
  table.values.reserve(numerators.size());
  const BigInt shift = BigInt(static_cast<std::int64_t>(r)) * det;
  for (const auto& num : numerators) table.values.emplace_back(num - shift, 4 * det);
  table.argmin = std::move(witnesses);
  return table;
}

/// Table of P·Q·Pᵀ obtained by relabelling through [ξ] ↦ [P·ξ].
inline CorrectionTable transport_table(const CorrectionTable& table, const IntMatrix& p) {
  if (!p.square() || p.rows() != table.form.rows()) throw dimension_error("transform size does not match the form");
  const BigInt det = det_exact(p);
  if (det != 1 && det != -1) throw invalid_parameters_error("transport requires a unimodular transform");

  CorrectionTable out;
  out.form = congruence(p, table.form);
  out.group = AbelianGroup::presented_by(out.form);
  const auto order = static_cast<std::size_t>(out.group.order());
  out.values.resize(order);
  std::vector<char> filled(order, 0);
  if (!table.argmin.empty()) out.argmin.resize(order);
  for (std::size_t g = 0; g < table.values.size(); ++g) {
    const IntVector moved = p * std::span<const BigInt>(table.group.lift(static_cast<std::int64_t>(g)));
    const auto image = static_cast<std::size_t>(out.group.project(moved));
    out.values[image] = table.values[g];
    filled[image] = 1;
    if (!table.argmin.empty()) out.argmin[image] = p * std::span<const BigInt>(table.argmin[g]);
  }
  if (std::find(filled.begin(), filled.end(), 0) != filled.end())
    throw error("transport did not induce a bijection of groups");
  return out;
}

struct ReducedTable {
  CorrectionTable table;   // labelled by the input form
  ReducedBasis reduction;  // the basis the scan actually ran in
};

/// Reduces the basis first, scans the smaller box, and transports back.
inline ReducedTable reduced_correction_table(const IntMatrix& q, const CorrectionOptions& opts = {}) {
  detail::check_form_for_table(q);
  ReducedBasis rb = reduce_basis(q);
  CorrectionTable reduced = correction_table(rb.form, opts);
  CorrectionTable table = transport_table(reduced, unimodular_inverse(rb.transform));
  table.form = q;
  return {std::move(table), std::move(rb)};
}

}  // namespace unknot
