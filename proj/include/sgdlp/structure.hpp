#pragma once

// Cycle structure of a periodic element g: the index l, the period n, the
// cyclic group G = {g^(l+k) : 0 <= k < n} and the searches that locate
// exponents relative to G.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "sgdlp/core.hpp"
#include "sgdlp/oracles.hpp"

namespace sgdlp {

  ////////////////////////////////////////////////////////////////////////
  // Brute-force structure (independent oracle)
  ////////////////////////////////////////////////////////////////////////

  //! Exact (l, n, t) by Brent cycle detection on g, g^2, g^3, ... in O(1)
  //! memory and O(l + n) products. Gives up with AperiodicAtCap once the
  //! search window passes 4 * cap, which never happens when l + n <= cap.
  template <Semigroup P>
  CycleStructure brute_force_structure(P const&            p,
                                       element_t<P> const& g,
                                       std::uint64_t       cap) {
    auto next = [&](element_t<P> const& x) { return p.multiply(x, g); };

    std::uint64_t window = 1, lam = 1;
    element_t<P>  tortoise = g;
    element_t<P>  hare     = next(g);
    while (!(tortoise == hare)) {
      if (window == lam) {
        if (window > 4 * cap) {
          throw AperiodicAtCap("no cycle found with l + n <= "
                               + std::to_string(cap));
        }
        tortoise = hare;
        window *= 2;
        lam = 0;
      }
      hare = next(hare);
      ++lam;
    }

    tortoise = g;
    hare     = g;
    for (std::uint64_t i = 0; i < lam; ++i) {
      hare = next(hare);
    }
    std::uint64_t mu = 0;
    while (!(tortoise == hare)) {
      tortoise = next(tortoise);
      hare     = next(hare);
      ++mu;
    }
    Exponent l = mu + 1;
    Exponent n = lam;
    return CycleStructure{l, n, threshold_for(l, n)};
  }

  ////////////////////////////////////////////////////////////////////////
  // The cyclic group G
  ////////////////////////////////////////////////////////////////////////

  //! G presented through its base g: gn = g^n (membership test), e = g^(tn)
  //! (neutral element) and r = g^(tn+1) (generator). The index l is only
  //! filled in when known.
  template <Semigroup P>
  struct SubgroupView {
    element_t<P>            g;
    Exponent                period;
    Exponent                threshold;
    std::optional<Exponent> index;
    element_t<P>            gn;
    element_t<P>            e;
    element_t<P>            r;

    Exponent identity_exp() const {
      return threshold * period;
    }

    Exponent generator_exp() const {
      return threshold * period + 1;
    }
  };

  template <Semigroup P>
  SubgroupView<P> build_view(P const&            p,
                             element_t<P> const& g,
                             Exponent const&     n,
                             Exponent const&     t) {
    if (n < 1 || t < 1) {
      throw InvalidArgument("build_view: n and t must be >= 1");
    }
    element_t<P> gn = power(p, g, n);
    element_t<P> e  = power(p, gn, t);
    if (!(p.multiply(e, e) == e)) {
      throw InternalInconsistency("build_view: g^(tn) is not idempotent; "
                                  "(n, t) do not describe g");
    }
    element_t<P> r = p.multiply(e, g);
    return SubgroupView<P>{g, n, t, std::nullopt, std::move(gn), std::move(e), std::move(r)};
  }

  template <Semigroup P>
  SubgroupView<P> build_view(P const& p, element_t<P> const& g, CycleStructure const& cs) {
    auto view  = build_view(p, g, cs.period, cs.threshold);
    view.index = cs.index;
    return view;
  }

  //! h = g^x lies in G iff g^n * h = h. One product.
  template <Semigroup P>
  bool is_member(P const& p, SubgroupView<P> const& view, element_t<P> const& h) {
    return p.multiply(view.gn, h) == h;
  }

  ////////////////////////////////////////////////////////////////////////
  // Threshold t
  ////////////////////////////////////////////////////////////////////////

  //! Minimal t with t*n > l, given the true period n.
  //!
  //! The search finds the minimal s with g^(sn) idempotent: b doubles (each
  //! step one squaring) until g^(nb) is idempotent, then bisection on (a, b]
  //! with midpoint floor((a+b)/2). That s is the minimal one with sn >= l; a
  //! single membership test on g^(sn-1) separates sn > l from sn = l.
  template <Semigroup P>
  Exponent find_t(P const& p, element_t<P> const& g, Exponent const& n) {
    PowerCache<P> gn_cache(p, power(p, g, n), 2);
    element_t<P>  gn = gn_cache.base();

    Exponent     b = 1;
    element_t<P> x = gn;
    for (std::size_t doublings = 0;; ++doublings) {
      element_t<P> sq = p.multiply(x, x);
      if (sq == x) {
        break;
      }
      if (doublings > 512) {
        throw InvalidArgument("find_t: " + n.str() + " is not a period of g");
      }
      b *= 2;
      x = std::move(sq);
    }
    element_t<P> const e = x;

    Exponent a = b / 2;
    while (b - a > 1) {
      Exponent c = (a + b) / 2;
      if (!(gn_cache.power(c) == e)) {
        a = c;
      } else {
        b = c;
      }
    }

    Exponent const below = b * n - 1;
    if (below == 0) {
      return b + 1;
    }
    element_t<P> y = power(p, g, below);
    return p.multiply(gn, y) == y ? b : b + 1;
  }

  ////////////////////////////////////////////////////////////////////////
  // Shift searches
  ////////////////////////////////////////////////////////////////////////

  //! Minimal b >= 1 with g^(bn) * h in G, for h = g^x outside G: b doubles
  //! until membership holds, then bisection on (b/2, b]. `gn_cache` caches
  //! powers of g^n.
  template <Semigroup P>
  Exponent find_min_shift_b(P const&               p,
                            SubgroupView<P> const& view,
                            element_t<P> const&    h,
                            PowerCache<P>&         gn_cache) {
    auto shifted_member = [&](Exponent const& b) {
      return is_member(p, view, p.multiply(gn_cache.power(b), h));
    };
    Exponent b = 1;
    for (std::size_t doublings = 0; !shifted_member(b); ++doublings) {
      if (doublings > 256) {
        throw PromiseViolation("no shift g^(bn) h enters G; h is not a power of g");
      }
      b *= 2;
    }
    Exponent a = b / 2;
    while (b - a > 1) {
      Exponent c = (a + b) / 2;
      if (!shifted_member(c)) {
        a = c;
      } else {
        b = c;
      }
    }
    return b;
  }

  template <Semigroup P>
  Exponent find_min_shift_b(P const& p, SubgroupView<P> const& view, element_t<P> const& h) {
    PowerCache<P> gn_cache(p, view.gn, 2);
    return find_min_shift_b(p, view, h, gn_cache);
  }

  //! Maximal c >= 0 with k - cn > 0 and g^(k-cn) in G, for g^k in G.
  //! Membership of g^(k-cn) holds exactly while k - cn >= l, so the
  //! predicate is monotone in c and bisection over [0, floor((k-1)/n)]
  //! applies. `g_cache` caches powers of g.
  template <Semigroup P>
  Exponent find_max_unshift_c(P const&               p,
                              SubgroupView<P> const& view,
                              Exponent const&        k,
                              PowerCache<P>&         g_cache) {
    Exponent const& n      = view.period;
    auto            member = [&](Exponent const& c) {
      return is_member(p, view, g_cache.power(k - c * n));
    };
    if (k < 1 || !member(0)) {
      throw InvalidArgument("find_max_unshift_c: g^k must lie in G");
    }
    Exponent lo = 0;
    Exponent hi = (k - 1) / n;
    if (member(hi)) {
      return hi;
    }
    while (hi - lo > 1) {
      Exponent mid = (lo + hi) / 2;
      if (member(mid)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return lo;
  }

  template <Semigroup P>
  Exponent find_max_unshift_c(P const& p, SubgroupView<P> const& view, Exponent const& k) {
    PowerCache<P> g_cache(p, view.g, 2 * k);
    return find_max_unshift_c(p, view, k, g_cache);
  }

  //! The index l as the minimal x with g^x in G, by bisection over
  //! [1, tn]. Used for reporting only.
  template <Semigroup P>
  Exponent find_index(P const& p, SubgroupView<P> const& view) {
    PowerCache<P> g_cache(p, view.g, 2 * view.identity_exp());
    Exponent      lo = 0;  // g^lo outside G (lo = 0 stands for "before g")
    Exponent      hi = view.identity_exp();
    while (hi - lo > 1) {
      Exponent mid = (lo + hi) / 2;
      if (is_member(p, view, g_cache.power(mid))) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return hi;
  }

  ////////////////////////////////////////////////////////////////////////
  // Period via a group DLP oracle
  ////////////////////////////////////////////////////////////////////////

  struct PeriodSearchParams {
    Exponent                   initial_N     = Exponent(1) << 16;
    std::size_t                diff_samples  = 16;
    std::size_t                stable_window = 4;
    std::size_t                max_doublings = 16;
    std::optional<std::size_t> element_samples;  // default: element_samples_for(N)
  };

  //! max(8, 2 * ceil(log2(log2(N + 4) + 1))) sampled elements h per round.
  inline std::size_t element_samples_for(Exponent const& N) {
    double const lg    = std::log2(Exponent(N + 4).convert_to<double>());
    auto const   inner = static_cast<std::size_t>(std::ceil(std::log2(lg + 1.0)));
    return std::max<std::size_t>(8, 2 * inner);
  }

  struct PeriodResult {
    Exponent      period;
    Exponent      N;
    std::size_t   rounds             = 0;
    std::uint64_t oracle_calls       = 0;
    bool          minimality_checked = true;
  };

  namespace detail {
    //! ord(h) == order, tested without inverses: h^(order+1) = h and no
    //! order/q (q prime) has the same property.
    template <Semigroup P>
    bool is_exact_order(P const& p, element_t<P> const& h, Exponent const& order) {
      if (!(power(p, h, order + 1) == h)) {
        return false;
      }
      for (auto const& q : prime_factors(order)) {
        if (power(p, h, order / q + 1) == h) {
          return false;
        }
      }
      return true;
    }

    inline Exponent abs_diff(Exponent const& a, Exponent const& b) {
      return a < b ? Exponent(b - a) : Exponent(a - b);
    }
  }  // namespace detail

  //! n = |G| from a group DLP oracle.
  //!
  //! Each round fixes N and samples elements h = g^k with k uniform in
  //! {ceil(N/2), .., N}. For each h the order of <h> is the gcd of
  //! differences k - log_h(h^k) over random k in {1, .., N}, stopping early
  //! once the gcd is verified to be the exact order. The running lcm over
  //! elements is the candidate; the round stops early when it has been stable
  //! for `stable_window` elements. A candidate is accepted when
  //! g^N * g^n = g^N and g^(N + n/q) != g^N for every prime q | n. Otherwise
  //! N doubles.
  //! `oracle` is a DlpOracle or any callable with the same signature.
  template <Semigroup P, typename Oracle = DlpOracle>
  PeriodResult find_period_via_oracle(P const&                  p,
                                      element_t<P> const&       g,
                                      Oracle const&             oracle,
                                      Rng&                      rng,
                                      PeriodSearchParams const& params = {}) {
    PeriodResult result;
    Exponent     N = params.initial_N;
    for (std::size_t doubling = 0; doubling <= params.max_doublings; ++doubling, N *= 2) {
      ++result.rounds;
      std::size_t const samples
          = params.element_samples.value_or(element_samples_for(N));
      PowerCache<P> g_cache(p, g, 2 * N);

      Exponent    candidate = 1;
      std::size_t stable    = 0;
      bool        failed    = false;
      for (std::size_t i = 0; i < samples && !failed; ++i) {
        Exponent const     k = uniform_exponent(rng, ceil_div(N, 2), N);
        element_t<P> const h = g_cache.power(k);

        Exponent order = 0;
        for (std::size_t j = 0; j < params.diff_samples; ++j) {
          Exponent const     kk = uniform_exponent(rng, 1, N);
          element_t<P> const y  = power(p, h, kk);
          Exponent           answer;
          ++result.oracle_calls;
          try {
            answer = oracle(p, h, y, N, std::nullopt, rng);
          } catch (NotFound const&) {
            failed = true;
            break;
          }
          order = boost::multiprecision::gcd(order, detail::abs_diff(kk, answer));
          if (order > 0 && bit_length(order) <= 64
              && detail::is_exact_order(p, h, order)) {
            break;
          }
        }
        if (failed) {
          break;
        }
        if (order == 0) {
          order = 1;
        }
        if (!(power(p, h, order + 1) == h)) {
          failed = true;
          break;
        }
        Exponent next = boost::multiprecision::lcm(candidate, order);
        stable        = (next == candidate) ? stable + 1 : 0;
        candidate     = std::move(next);
        if (stable >= params.stable_window) {
          break;
        }
      }
      if (failed) {
        continue;
      }

      element_t<P> const gN = g_cache.power(N);
      if (!(g_cache.power(N + candidate) == gN)) {
        continue;
      }
      bool minimal = true;
      if (bit_length(candidate) <= 64) {
        for (auto const& q : prime_factors(candidate)) {
          if (g_cache.power(N + candidate / q) == gN) {
            minimal = false;
            break;
          }
        }
      } else {
        result.minimality_checked = false;
      }
      if (!minimal) {
        continue;
      }
      result.period = std::move(candidate);
      result.N      = N;
      return result;
    }
    throw RetryBudgetExhausted("find_period_via_oracle: no validated period after "
                               + std::to_string(params.max_doublings)
                               + " doublings of N");
  }

}  // namespace sgdlp
