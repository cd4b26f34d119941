#pragma once

// Brute-force invariant suites over the finite platforms. They back the
// `selftest` command and only use exhaustive enumeration and the Brent
// structure, never the oracle-based path they are meant to check.

#include <cstdint>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "sgdlp/core.hpp"
#include "sgdlp/platforms.hpp"
#include "sgdlp/structure.hpp"

namespace sgdlp::checks {

  using FinitePlatform
      = std::variant<ResidueMulPlatform, MatrixModPlatform, TransformationPlatform>;

  struct CorpusLimits {
    std::uint64_t max_modulus        = std::uint64_t{1} << 16;  // zmul
    std::uint64_t max_matrix_modulus = 64;
    std::size_t   max_matrix_dim     = 3;
    std::size_t   max_degree         = 8;
  };

  //! One of the three finite families, chosen uniformly, with random
  //! parameters inside `limits`.
  inline FinitePlatform random_finite_platform(Rng& rng, CorpusLimits const& limits = {}) {
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
      case 0:
        return ResidueMulPlatform(
            std::uniform_int_distribution<std::uint64_t>(2, limits.max_modulus)(rng));
      case 1: {
        auto m = std::uniform_int_distribution<std::uint64_t>(2, limits.max_matrix_modulus)(rng);
        auto d = std::uniform_int_distribution<std::size_t>(1, limits.max_matrix_dim)(rng);
        return MatrixModPlatform(m, d);
      }
      default:
        return TransformationPlatform(
            std::uniform_int_distribution<std::size_t>(1, limits.max_degree)(rng));
    }
  }

  //! Multiplication deliberately broken (the product is squared), for
  //! checking that the associativity suite notices.
  template <Semigroup P>
  class Corrupted {
   public:
    using element_type = element_t<P>;

    explicit Corrupted(P inner) : inner_(std::move(inner)) {}

    element_type multiply(element_type const& a, element_type const& b) const {
      auto x = inner_.multiply(a, b);
      return inner_.multiply(x, x);
    }

    Bytes serialize(element_type const& a) const {
      return inner_.serialize(a);
    }

    element_type deserialize(std::span<std::uint8_t const> bytes) const {
      return inner_.deserialize(bytes);
    }

    element_type random_element(Rng& rng) const {
      return inner_.random_element(rng);
    }

    std::string descriptor() const {
      return inner_.descriptor() + " (corrupted)";
    }

   private:
    P inner_;
  };

  //! Number of random triples with (ab)c != a(bc).
  template <Semigroup P>
  std::size_t associativity_failures(P const& p, Rng& rng, std::size_t triples) {
    std::size_t failures = 0;
    for (std::size_t i = 0; i < triples; ++i) {
      auto a = p.random_element(rng);
      auto b = p.random_element(rng);
      auto c = p.random_element(rng);
      if (!(p.multiply(p.multiply(a, b), c) == p.multiply(a, p.multiply(b, c)))) {
        ++failures;
      }
    }
    return failures;
  }

  //! Group properties of the view built from the brute-force structure:
  //! minimality of (l, n, t), e idempotent and neutral, r of order exactly n
  //! generating {g^(l+k)}, closure r^a r^b = r^((a+b-1 mod n)+1), inverses
  //! r^a r^(n-a) = e, and g^(sn) = g^(tn) for s in {t, t+1, t+2, 2t}. Pair
  //! checks are exhaustive for n <= `exhaustive_limit`, sampled otherwise.
  //! Returns a description of every violated property.
  template <Semigroup P>
  std::vector<std::string> cycle_group_violations(P const&              p,
                                             element_t<P> const&   g,
                                             CycleStructure const& cs,
                                             Rng&                  rng,
                                             std::uint64_t exhaustive_limit = 256) {
    std::vector<std::string> bad;
    auto                     pw = [&](Exponent const& k) { return power(p, g, k); };
    Exponent const&          l  = cs.index;
    Exponent const&          n  = cs.period;
    Exponent const&          t  = cs.threshold;

    element_t<P> const gl = pw(l);
    if (!(pw(l + n) == gl)) {
      bad.emplace_back("g^(l+n) != g^l");
    }
    if (l > 1 && pw(l - 1 + n) == pw(l - 1)) {
      bad.emplace_back("l is not minimal");
    }
    if (!(t * n > l) || !((t - 1) * n <= l)) {
      bad.emplace_back("t is not minimal with tn > l");
    }

    auto view = build_view(p, g, cs);
    if (!(p.multiply(view.e, view.e) == view.e)) {
      bad.emplace_back("e is not idempotent");
    }
    if (!(p.multiply(view.e, gl) == gl)) {
      bad.emplace_back("e is not neutral on g^l");
    }
    for (Exponent s : {t, Exponent(t + 1), Exponent(t + 2), Exponent(2 * t)}) {
      if (!(pw(s * n) == view.e)) {
        bad.emplace_back("g^(sn) != g^(tn) for s = " + s.str());
      }
    }

    if (n <= exhaustive_limit) {
      std::uint64_t const       order = to_u64(n);
      std::vector<element_t<P>> rp{view.r};  // rp[a-1] = r^a
      std::vector<element_t<P>> cycle{gl};   // cycle[k] = g^(l+k)
      for (std::uint64_t a = 1; a < order; ++a) {
        rp.push_back(p.multiply(rp.back(), view.r));
        cycle.push_back(p.multiply(cycle.back(), g));
      }
      if (!(p.multiply(rp.back(), view.r) == view.r)) {
        bad.emplace_back("r^(n+1) != r");
      }
      if (!(rp.back() == view.e)) {
        bad.emplace_back("r^n != e");
      }
      std::set<std::string> from_r, from_g;
      for (std::uint64_t a = 0; a < order; ++a) {
        from_r.insert(canonical_key(p, rp[a]));
        from_g.insert(canonical_key(p, cycle[a]));
        if (a + 1 < order && rp[a] == view.e) {
          bad.emplace_back("r has order below n");
        }
        if (a > 0 && cycle[a] == gl) {
          bad.emplace_back("n is not minimal");
        }
      }
      if (from_r.size() != order || from_r != from_g) {
        bad.emplace_back("<r> differs from {g^(l+k)}");
      }
      for (std::uint64_t a = 1; a <= order; ++a) {
        auto const& ra = rp[a - 1];
        if (!(p.multiply(view.e, ra) == ra) || !(p.multiply(ra, view.e) == ra)) {
          bad.emplace_back("e is not neutral on r^" + std::to_string(a));
        }
        std::uint64_t inv = order - (a % order);
        if (!(p.multiply(ra, rp[inv - 1]) == view.e)) {
          bad.emplace_back("r^" + std::to_string(a) + " has no inverse");
        }
        for (std::uint64_t b = 1; b <= order; ++b) {
          if (!(p.multiply(ra, rp[b - 1]) == rp[(a + b - 1) % order])) {
            bad.emplace_back("closure fails at a=" + std::to_string(a)
                             + " b=" + std::to_string(b));
            break;
          }
        }
      }
    } else {
      for (int i = 0; i < 64; ++i) {
        Exponent a = uniform_exponent(rng, 1, n);
        Exponent b = uniform_exponent(rng, 1, n);
        auto     ra = power(p, view.r, a);
        if (!(p.multiply(ra, power(p, view.r, b)) == power(p, view.r, (a + b - 1) % n + 1))) {
          bad.emplace_back("closure fails at a=" + a.str() + " b=" + b.str());
        }
        if (!(p.multiply(ra, power(p, view.r, n - a % n)) == view.e)) {
          bad.emplace_back("r^" + a.str() + " has no inverse");
        }
        if (!(p.multiply(view.e, ra) == ra)) {
          bad.emplace_back("e is not neutral on r^" + a.str());
        }
        Exponent m = uniform_exponent(rng, 1, n - 1);
        if (pw(l + m) == gl) {
          bad.emplace_back("n is not minimal");
        }
      }
      if (!(power(p, view.r, n) == view.e)) {
        bad.emplace_back("r^n != e");
      }
    }
    return bad;
  }

  //! is_member(g^x) == (x >= l) for every 1 <= x <= l + 2n. Returns the
  //! first failing x, or 0.
  template <Semigroup P>
  std::uint64_t membership_first_failure(P const& p, element_t<P> const& g, CycleStructure const& cs) {
    auto                view = build_view(p, g, cs);
    std::uint64_t const l    = to_u64(cs.index);
    std::uint64_t const last = l + 2 * to_u64(cs.period);
    element_t<P>        x    = g;
    for (std::uint64_t i = 1; i <= last; ++i) {
      if (is_member(p, view, x) != (i >= l)) {
        return i;
      }
      x = p.multiply(x, g);
    }
    return 0;
  }

}  // namespace sgdlp::checks
