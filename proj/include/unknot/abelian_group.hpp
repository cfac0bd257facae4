#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "unknot/errors.hpp"
#include "unknot/int_matrix.hpp"
#include "unknot/linalg.hpp"

namespace unknot {

/// Finite abelian group Z/d_1 ⊕ … ⊕ Z/d_k (d_1 | d_2 | …, all d_i > 1).
///
/// Elements are indexed 0..order()-1 in mixed radix, first factor most
/// significant, so index order equals lexicographic order of label tuples.
/// Index 0 is the identity. When built from a form Q the group is
/// Z^r / Q·Z^r and carries the projection from Z^r and a section back.
class AbelianGroup {
 public:
  using Element = std::int64_t;
  using Label = std::vector<std::int64_t>;

  AbelianGroup() = default;

  explicit AbelianGroup(std::vector<std::int64_t> factors) : factors_(std::move(factors)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (factors_[i] <= 1) throw invalid_parameters_error("invariant factors must exceed 1");
      if (i > 0 && factors_[i] % factors_[i - 1] != 0)
        throw invalid_parameters_error("invariant factors must form a divisibility chain");
    }
    compute_order();
  }

  /// The cokernel of a non-singular square matrix, with projection and section.
  static AbelianGroup presented_by(const IntMatrix& q) {
    const SnfDecomposition snf = smith_normal_form(q);
    const IntMatrix u_inv = unimodular_inverse(snf.u);
    AbelianGroup g;
    g.rank_ = q.rows();
    const auto diag = snf.diagonal();
    for (std::size_t pos = 0; pos < diag.size(); ++pos) {
      if (diag[pos] <= 1) continue;
      if (!fits_int64(diag[pos])) throw unsupported_error("group too large");
      const auto d = static_cast<std::int64_t>(diag[pos]);
      g.factors_.push_back(d);
      std::vector<std::int64_t> row(g.rank_);
      for (std::size_t j = 0; j < g.rank_; ++j) row[j] = static_cast<std::int64_t>(mod_floor(snf.u(pos, j), d));
      g.projection_.push_back(std::move(row));
      IntVector col(g.rank_);
      for (std::size_t i = 0; i < g.rank_; ++i) col[i] = u_inv(i, pos);
      g.section_.push_back(std::move(col));
    }
    g.compute_order();
    return g;
  }

  const std::vector<std::int64_t>& invariant_factors() const { return factors_; }
  std::int64_t order() const { return order_; }
  std::size_t num_factors() const { return factors_.size(); }
  /// Rank of the presenting lattice (0 for an abstract group).
  std::size_t lattice_rank() const { return rank_; }
  bool has_presentation() const { return rank_ > 0 || factors_.empty(); }

  Label label(Element e) const {
    Label out(factors_.size());
    for (std::size_t i = factors_.size(); i-- > 0;) {
      out[i] = e % factors_[i];
      e /= factors_[i];
    }
    return out;
  }

  Element index(std::span<const std::int64_t> lab) const {
    Element e = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      std::int64_t c = lab[i] % factors_[i];
      if (c < 0) c += factors_[i];
      e = e * factors_[i] + c;
    }
    return e;
  }

  Element add(Element a, Element b) const {
    Element e = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const std::int64_t d = factors_[i];
      const std::int64_t s = (digit(a, i) + digit(b, i)) % d;
      e = e * d + s;
    }
    return e;
  }

  Element negate(Element a) const {
    Element e = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const std::int64_t d = factors_[i];
      e = e * d + (d - digit(a, i)) % d;
    }
    return e;
  }

  Element scale(Element a, std::int64_t k) const {
    Element e = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const std::int64_t d = factors_[i];
      std::int64_t s = static_cast<std::int64_t>((static_cast<__int128>(digit(a, i)) * k) % d);
      if (s < 0) s += d;
      e = e * d + s;
    }
    return e;
  }

  std::int64_t element_order(Element a) const {
    std::int64_t ord = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const std::int64_t d = factors_[i];
      const std::int64_t x = digit(a, i);
      ord = std::lcm(ord, d / std::gcd(d, x));
    }
    return ord;
  }

  /// The canonical generator of the i-th cyclic factor.
  Element generator(std::size_t i) const {
    Label lab(factors_.size(), 0);
    lab[i] = 1;
    return index(lab);
  }

  /// Class of an integer vector in Z^r / Q·Z^r.
  template <class Int>
  Element project(std::span<const Int> xi) const {
    if (xi.size() != rank_) throw dimension_error("covector length does not match group presentation");
    Element e = 0;
    for (std::size_t k = 0; k < factors_.size(); ++k) {
      const std::int64_t d = factors_[k];
      std::int64_t acc = 0;
      for (std::size_t j = 0; j < rank_; ++j) {
        const std::int64_t xj = static_cast<std::int64_t>(Int(xi[j] % d));
        acc = static_cast<std::int64_t>((static_cast<__int128>(acc) + static_cast<__int128>(projection_[k][j]) * xj) % d);
      }
      if (acc < 0) acc += d;
      e = e * d + acc;
    }
    return e;
  }

  Element project(const IntVector& xi) const { return project<BigInt>(std::span<const BigInt>(xi)); }

  /// Some vector of Z^r in the class of e.
  IntVector lift(Element e) const {
    IntVector v(rank_);
    const Label lab = label(e);
    for (std::size_t k = 0; k < factors_.size(); ++k)
      for (std::size_t i = 0; i < rank_; ++i) v[i] += section_[k][i] * lab[k];
    return v;
  }

  std::string label_string(Element e) const {
    std::string s = "(";
    const Label lab = label(e);
    for (std::size_t i = 0; i < lab.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(lab[i]);
    }
    return s + ")";
  }

  bool same_structure(const AbelianGroup& other) const { return factors_ == other.factors_; }

 private:
  std::int64_t digit(Element e, std::size_t i) const {
    for (std::size_t j = factors_.size(); j-- > i + 1;) e /= factors_[j];
    return e % factors_[i];
  }

  void compute_order() {
    order_ = 1;
    for (auto d : factors_) {
      if (order_ > std::numeric_limits<std::int64_t>::max() / d) throw unsupported_error("group order overflows");
      order_ *= d;
    }
  }

  std::vector<std::int64_t> factors_;
  std::int64_t order_ = 1;
  std::size_t rank_ = 0;
  std::vector<std::vector<std::int64_t>> projection_;  // rows of U mod d_k
  std::vector<IntVector> section_;                     // columns of U⁻¹
};

}  // namespace unknot
