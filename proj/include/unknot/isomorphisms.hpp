#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "unknot/abelian_group.hpp"

namespace unknot {

/// A group isomorphism given by the images of the canonical generators of
/// the source, plus the image of every element.
struct GroupIsomorphism {
  std::vector<AbelianGroup::Element> generator_images;
  std::vector<AbelianGroup::Element> images;

  AbelianGroup::Element operator()(AbelianGroup::Element g) const { return images[static_cast<std::size_t>(g)]; }
};

namespace detail {

inline std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> primes;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    primes.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) primes.push_back(n);
  return primes;
}

inline std::int64_t prime_power_part(std::int64_t n, std::int64_t p) {
  std::int64_t q = 1;
  while (n % p == 0) {
    n /= p;
    q *= p;
  }
  return q;
}

inline std::int64_t inverse_mod64(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = a % m, r = m, old_s = 1, s = 0;
  if (old_r < 0) old_r += m;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
  }
  old_s %= m;
  return old_s < 0 ? old_s + m : old_s;
}

/// The p-primary part of a group in canonical form: generators g_i of order p^{e_i}.
struct PrimaryPart {
  std::int64_t prime = 0;
  std::vector<std::size_t> factor_index;              // which cyclic factor each generator comes from
  std::vector<AbelianGroup::Element> generators;      // g_i = (d_i / p^{e_i})·e_i
  std::vector<std::int64_t> orders;                   // p^{e_i}
};

inline PrimaryPart primary_part(const AbelianGroup& g, std::int64_t p) {
  PrimaryPart part;
  part.prime = p;
  const auto& factors = g.invariant_factors();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const std::int64_t q = prime_power_part(factors[i], p);
    if (q == 1) continue;
    part.factor_index.push_back(i);
    part.generators.push_back(g.scale(g.generator(i), factors[i] / q));
    part.orders.push_back(q);
  }
  return part;
}

/// Every element of the p-primary part.
inline std::vector<AbelianGroup::Element> primary_elements(const AbelianGroup& g, const PrimaryPart& part) {
  std::vector<AbelianGroup::Element> elems{0};
  for (std::size_t i = 0; i < part.generators.size(); ++i) {
    std::vector<AbelianGroup::Element> next;
    next.reserve(elems.size() * static_cast<std::size_t>(part.orders[i]));
    for (auto base : elems) {
      AbelianGroup::Element x = base;
      for (std::int64_t c = 0; c < part.orders[i]; ++c) {
        next.push_back(x);
        x = g.add(x, part.generators[i]);
      }
    }
    elems = std::move(next);
  }
  return elems;
}

/// All isomorphisms of p-primary parts, as images of the source generators.
inline std::vector<std::vector<AbelianGroup::Element>> primary_isomorphisms(const AbelianGroup& a,
                                                                            const PrimaryPart& pa,
                                                                            const AbelianGroup& b,
                                                                            const PrimaryPart& pb) {
  const std::vector<AbelianGroup::Element> pool = primary_elements(b, pb);
  const auto order_b = static_cast<std::size_t>(b.order());
  std::vector<std::vector<AbelianGroup::Element>> out;
  std::vector<AbelianGroup::Element> chosen;
  std::vector<char> span(order_b, 0);
  span[0] = 1;

  std::function<void(std::size_t)> extend = [&](std::size_t i) {
    if (i == pa.generators.size()) {
      out.push_back(chosen);
      return;
    }
    const std::int64_t target_order = pa.orders[i];
    for (auto x : pool) {
      if (b.element_order(x) != target_order) continue;
      // ⟨x⟩ meets the span trivially iff its order-p subgroup does.
      if (span[static_cast<std::size_t>(b.scale(x, target_order / pa.prime))]) continue;
      std::vector<char> saved = span;
      std::vector<AbelianGroup::Element> members;
      for (std::size_t e = 0; e < order_b; ++e)
        if (span[e]) members.push_back(static_cast<AbelianGroup::Element>(e));
      AbelianGroup::Element mult = x;
      for (std::int64_t c = 1; c < target_order; ++c) {
        for (auto s : members) span[static_cast<std::size_t>(b.add(s, mult))] = 1;
        mult = b.add(mult, x);
      }
      chosen.push_back(x);
      extend(i + 1);
      chosen.pop_back();
      span = std::move(saved);
    }
  };
  extend(0);
  (void)a;
  return out;
}

}  // namespace detail

/// Calls visit(φ) for every isomorphism a → b, each exactly once, until visit
/// returns false. Nothing is visited when the invariant factors differ.
/// Automorphisms are enumerated prime by prime and combined.
template <class Visit>
void for_each_isomorphism(const AbelianGroup& a, const AbelianGroup& b, Visit&& visit) {
  if (!a.same_structure(b)) return;
  const auto& factors = a.invariant_factors();
  const std::size_t k = factors.size();

  struct PrimeData {
    detail::PrimaryPart part_a;
    std::vector<std::vector<AbelianGroup::Element>> options;
    std::vector<std::int64_t> crt;  // e_i's p-component = crt_i · g_{p,i}
  };
  std::vector<PrimeData> primes;
  for (auto p : detail::prime_divisors(a.order())) {
    PrimeData pd;
    pd.part_a = detail::primary_part(a, p);
    const auto part_b = detail::primary_part(b, p);
    pd.options = detail::primary_isomorphisms(a, pd.part_a, b, part_b);
    if (pd.options.empty()) return;
    for (std::size_t j = 0; j < pd.part_a.generators.size(); ++j) {
      const std::int64_t d = factors[pd.part_a.factor_index[j]];
      const std::int64_t q = pd.part_a.orders[j];
      pd.crt.push_back(detail::inverse_mod64(d / q, q));
    }
    primes.push_back(std::move(pd));
  }

  std::vector<std::size_t> choice(primes.size(), 0);
  GroupIsomorphism phi;
  phi.images.resize(static_cast<std::size_t>(a.order()));
  for (;;) {
    phi.generator_images.assign(k, 0);
    for (std::size_t pi = 0; pi < primes.size(); ++pi) {
      const auto& pd = primes[pi];
      const auto& imgs = pd.options[choice[pi]];
      for (std::size_t j = 0; j < imgs.size(); ++j) {
        auto& slot = phi.generator_images[pd.part_a.factor_index[j]];
        slot = b.add(slot, b.scale(imgs[j], pd.crt[j]));
      }
    }
    for (AbelianGroup::Element g = 0; g < a.order(); ++g) {
      const auto lab = a.label(g);
      AbelianGroup::Element img = 0;
      for (std::size_t i = 0; i < k; ++i) img = b.add(img, b.scale(phi.generator_images[i], lab[i]));
      phi.images[static_cast<std::size_t>(g)] = img;
    }
    if (!visit(static_cast<const GroupIsomorphism&>(phi))) return;

    std::size_t pi = 0;
    while (pi < primes.size() && ++choice[pi] == primes[pi].options.size()) choice[pi++] = 0;
    if (pi == primes.size()) return;
  }
}

inline std::vector<GroupIsomorphism> enumerate_isomorphisms(const AbelianGroup& a, const AbelianGroup& b) {
  std::vector<GroupIsomorphism> out;
  for_each_isomorphism(a, b, [&](const GroupIsomorphism& phi) {
    out.push_back(phi);
    return true;
  });
  return out;
}

}  // namespace unknot
