#pragma once

// Goeritz matrices from white-graph data or two-bridge parameters, and the
// side conditions (determinant, signature, crossing split) a knot problem
// must satisfy before the obstruction applies.

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unknot/errors.hpp"
#include "unknot/int_matrix.hpp"
#include "unknot/linalg.hpp"
#include "unknot/quadforms.hpp"

namespace unknot {

/// Multigraph on vertices 1..vertex_count; repeated edges encode multiplicity.
/// The last vertex is the one dropped when forming the Goeritz matrix.
struct WhiteGraph {
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // 1-based
};

struct CrossingSplit {
  std::int64_t positive = 0;  // p
  std::int64_t negative = 0;  // n
  std::int64_t total() const { return positive + negative; }
};

struct KnotProblem {
  std::string name;
  BigInt determinant;
  std::int64_t signature = 0;
  IntMatrix goeritz;
  CrossingSplit split;
  std::optional<std::int64_t> unknotting_upper_bound;
};

/// Full (k+1)×(k+1) Laplacian of the white graph: zero row sums.
inline IntMatrix white_graph_laplacian(const WhiteGraph& g) {
  const std::size_t n = g.vertex_count;
  if (n < 2) throw invalid_diagram_error("white graph needs at least two vertices");
  IntMatrix lap(n, n);
  for (auto [a, b] : g.edges) {
    if (a < 1 || b < 1 || a > n || b > n) throw invalid_diagram_error("edge endpoint out of range");
    if (a == b) throw invalid_diagram_error("white graph has a loop at vertex " + std::to_string(a));
    --a;
    --b;
    lap(a, a) += 1;
    lap(b, b) += 1;
    lap(a, b) -= 1;
    lap(b, a) -= 1;
  }
  // connectivity by union-find
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : g.edges) parent[find(a - 1)] = find(b - 1);
  for (std::size_t v = 1; v < n; ++v)
    if (find(v) != find(0)) throw invalid_diagram_error("white graph is disconnected");
  return lap;
}

/// Goeritz matrix over v_1..v_k (v_{k+1} dropped): degree on the diagonal,
/// minus the edge multiplicity off it.
inline IntMatrix goeritz_from_white_graph(const WhiteGraph& g) {
  const IntMatrix lap = white_graph_laplacian(g);
  const std::size_t k = g.vertex_count - 1;
  return lap.minor_matrix(k, k);
}

/// Coefficients of p/q = a_1 - 1/(a_2 - 1/(… - 1/a_k)), all a_i ≥ 2, for
/// 0 < q < p via the Euclidean algorithm with ceiling quotients.
inline std::vector<BigInt> minus_continued_fraction(BigInt p, BigInt q) {
  if (q <= 0 || p <= q) throw invalid_parameters_error("minus continued fraction needs 0 < q < p");
  std::vector<BigInt> coeffs;
  while (q != 0) {
    BigInt a = floor_div(p + q - 1, q);  // ceil(p/q)
    BigInt r = a * q - p;                // 0 <= r < q
    coeffs.push_back(a);
    p = std::move(q);
    q = std::move(r);
  }
  return coeffs;
}

/// Positive-definite tridiagonal Goeritz form of the two-bridge knot with
/// parameters (p, q); its determinant is p.
inline IntMatrix two_bridge_goeritz(const BigInt& p, const BigInt& q) {
  if (q <= 0 || p <= q) throw invalid_parameters_error("two-bridge parameters need 0 < q < p");
  if (gcd(p, q) != 1) throw invalid_parameters_error("two-bridge parameters must be coprime");
  const auto coeffs = minus_continued_fraction(p, q);
  return tridiagonal(coeffs);
}

inline BigInt inverse_mod(const BigInt& a, const BigInt& m) {
  BigInt old_r = mod_floor(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    BigInt quot = old_r / r;
    BigInt t = old_r - quot * r;
    old_r = std::move(r);
    r = std::move(t);
    t = old_s - quot * s;
    old_s = std::move(s);
    s = std::move(t);
  }
  if (old_r != 1) throw invalid_parameters_error("value is not invertible modulo m");
  return mod_floor(old_s, m);
}

/// The classical parameter variants of a two-bridge knot.
struct TwoBridgeVariants {
  BigInt q;              // as given
  BigInt q_inverse;      // q⁻¹ mod p, same knot
  BigInt mirror;         // p - q, mirror image
  BigInt mirror_inverse; // -q⁻¹ mod p, mirror image
};

inline TwoBridgeVariants normalize_two_bridge(const BigInt& p, const BigInt& q) {
  if (p <= 1 || gcd(p, q) != 1) throw invalid_parameters_error("two-bridge parameters must be coprime, p > 1");
  const BigInt q0 = mod_floor(q, p);
  const BigInt inv = inverse_mod(q0, p);
  return {q0, inv, mod_floor(-q0, p), mod_floor(-inv, p)};
}

/// σ(K) = k - μ for k white vertices (after dropping one) and μ positive crossings.
inline std::int64_t signature_from_diagram(std::int64_t k, std::int64_t mu) { return k - mu; }

struct ValidationFailure {
  std::string check;
  std::string detail;
};

struct ValidationResult {
  std::vector<ValidationFailure> failures;
  bool ok() const { return failures.empty(); }
};

/// Checks det(G) = determinant, G positive-definite, det ≡ σ+1 (mod 4) and n ≥ σ/2.
inline ValidationResult validate_problem(const KnotProblem& kp) {
  ValidationResult result;
  auto fail = [&](std::string check, std::string detail) {
    result.failures.push_back({std::move(check), std::move(detail)});
  };

  if (!kp.goeritz.square() || kp.goeritz.rows() == 0) {
    fail("goeritz_shape", "Goeritz matrix must be square and non-empty");
  } else if (!kp.goeritz.symmetric()) {
    fail("goeritz_symmetric", "Goeritz matrix must be symmetric");
  } else {
    const BigInt det = det_exact(kp.goeritz);
    if (det != kp.determinant)
      fail("determinant", "det(G) = " + det.str() + " but determinant = " + kp.determinant.str());
    if (!is_positive_definite(kp.goeritz)) fail("positive_definite", "Goeritz matrix is not positive-definite");
  }
  if (kp.determinant <= 0 || !is_odd(kp.determinant))
    fail("determinant_odd", "determinant must be odd and positive");
  if (kp.signature % 2 != 0) fail("signature_even", "signature must be even");
  if (mod_floor(kp.determinant - kp.signature - 1, 4) != 0)
    fail("det_signature_congruence",
         "determinant " + kp.determinant.str() + " is not congruent to signature + 1 = " +
             std::to_string(kp.signature + 1) + " mod 4");
  if (kp.split.positive < 0 || kp.split.negative < 0) fail("split_nonnegative", "p and n must be non-negative");
  if (2 * kp.split.negative < kp.signature)
    fail("negative_crossing_bound", "n = " + std::to_string(kp.split.negative) + " is below signature/2 = " +
                                        std::to_string(kp.signature / 2));
  return result;
}

}  // namespace unknot
