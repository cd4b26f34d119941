#pragma once

// Discrete logarithms in periodic semigroups via a DLP oracle for the cycle
// group G, and the length-function heuristic for elements of infinite order.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sgdlp/core.hpp"
#include "sgdlp/oracles.hpp"
#include "sgdlp/structure.hpp"

namespace sgdlp {

  //! A base g and a challenge h promised to be a power of g.
  template <Semigroup P>
  struct DlpInstance {
    element_t<P> g;
    element_t<P> h;
  };

  //! What a periodic solve did, for `--trace` and the tests.
  struct SolveTrace {
    Exponent                period;
    Exponent                threshold;
    std::string             generator_hex;
    bool                    member = false;
    std::optional<Exponent> shift_b;
    Exponent                x_prime;
    std::optional<Exponent> unshift_c;
    Exponent                k;
    Exponent                N;
    std::size_t             rounds          = 0;
    std::uint64_t           oracle_calls    = 0;
    std::uint64_t           products        = 0;
    std::uint64_t           oracle_products = 0;

    //! Line-oriented key=value records.
    std::string records() const {
      std::ostringstream out;
      out << "n=" << period << "\n";
      out << "t=" << threshold << "\n";
      out << "r=" << generator_hex << "\n";
      out << "case=" << (member ? "member" : "tail") << "\n";
      if (shift_b) {
        out << "b=" << *shift_b << "\n";
      }
      out << "x_prime=" << x_prime << "\n";
      if (unshift_c) {
        out << "c=" << *unshift_c << "\n";
      }
      out << "k=" << k << "\n";
      out << "N=" << N << "\n";
      out << "rounds=" << rounds << "\n";
      out << "oracle_calls=" << oracle_calls << "\n";
      out << "products=" << products << "\n";
      out << "oracle_products=" << oracle_products << "\n";
      return out.str();
    }
  };

  struct DlpSolution {
    Exponent   k;
    SolveTrace trace;
  };

  struct SolveOptions {
    DlpOracle          oracle;
    PeriodSearchParams period;
    //! Reduce k to the smallest exponent with g^k = h.
    bool minimal = false;
  };

  //! g^k = h by canonical equality.
  template <Semigroup P>
  bool verify(P const& p, DlpInstance<P> const& inst, Exponent const& k) {
    if (k < 1) {
      throw InvalidArgument("verify: exponent must be >= 1");
    }
    return power(p, inst.g, k) == inst.h;
  }

  //! Smallest exponent representing the same element as g^k: in G that is
  //! the unique one in [l, l + n); outside G, k is already unique.
  template <Semigroup P>
  Exponent minimal_exponent(P const& p, SubgroupView<P> const& view, Exponent const& k) {
    PowerCache<P> g_cache(p, view.g, Exponent(2 * k));
    if (!is_member(p, view, g_cache.power(k))) {
      return k;
    }
    return k - find_max_unshift_c(p, view, k, g_cache) * view.period;
  }

  //! Solves g^k = h for periodic g.
  //!
  //! n comes from the oracle-based period search and t from the idempotent
  //! search; r = g^(tn+1) generates G. If h is in G, k = x'(tn+1) with
  //! x' = log_r h. Otherwise b is the minimal shift with g^(bn) h in G,
  //! x' = log_r(g^(bn) h), c the maximal unshift of x'(tn+1) staying in G, and
  //! k = x'(tn+1) - cn - bn, which is the exact exponent.
  template <Semigroup P>
  DlpSolution solve_periodic(P const&              platform,
                             DlpInstance<P> const& inst,
                             Rng&                  rng,
                             SolveOptions const&   options = {}) {
    Counting<P> p(platform);
    Counting<P> oracle_platform(platform);
    SolveTrace  trace;

    auto oracle = [&](auto const&,
                      element_t<P> const&            h,
                      element_t<P> const&            y,
                      Exponent const&                bound,
                      std::optional<Exponent> const& order,
                      Rng&                           r) {
      return options.oracle(oracle_platform, h, y, bound, order, r);
    };

    auto period = find_period_via_oracle(p, inst.g, oracle, rng, options.period);
    trace.period       = period.period;
    trace.N            = period.N;
    trace.rounds       = period.rounds;
    trace.oracle_calls = period.oracle_calls;

    Exponent const& n = period.period;
    trace.threshold   = find_t(p, inst.g, n);
    auto view         = build_view(p, inst.g, n, trace.threshold);
    trace.generator_hex = to_hex(p.serialize(view.r));

    Exponent const gen_exp = view.generator_exp();
    auto           log_r   = [&](element_t<P> const& y) {
      ++trace.oracle_calls;
      try {
        return oracle(p, view.r, y, n, n, rng);
      } catch (NotFound const&) {
        throw PromiseViolation("challenge is not a power of g (no logarithm "
                               "to the generator of G)");
      }
    };

    Exponent k;
    if (is_member(p, view, inst.h)) {
      trace.member  = true;
      trace.x_prime = log_r(inst.h);
      k             = trace.x_prime * gen_exp;
    } else {
      PowerCache<Counting<P>> gn_cache(p, view.gn, 2);
      Exponent      b = find_min_shift_b(p, view, inst.h, gn_cache);
      trace.shift_b = b;
      trace.x_prime = log_r(p.multiply(gn_cache.power(b), inst.h));
      Exponent const upper = trace.x_prime * gen_exp;
      PowerCache<Counting<P>> g_cache(p, inst.g, Exponent(2 * upper));
      Exponent       c = find_max_unshift_c(p, view, upper, g_cache);
      trace.unshift_c  = c;
      k                = upper - c * n - b * n;
    }
    if (k < 1) {
      throw InternalInconsistency("solver produced exponent " + k.str()
                                  + "\n" + trace.records());
    }
    if (options.minimal) {
      k = minimal_exponent(p, view, k);
    }
    trace.k               = k;
    trace.products        = p.products();
    trace.oracle_products = oracle_platform.products();
    if (!verify(platform, inst, k)) {
      throw PromiseViolation("g^k != h for the recovered k; h is not a power "
                             "of g\n"
                             + trace.records());
    }
    return DlpSolution{std::move(k), std::move(trace)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Infinite order
  ////////////////////////////////////////////////////////////////////////

  struct InfiniteOrderParams {
    Exponent    P     = 16;  // random re-powering exponent drawn from [ceil(P/2), P]
    std::size_t tries = 8;   // m
  };

  struct InfiniteOutcome {
    std::optional<Exponent> k;
    std::size_t             tries = 0;
    std::vector<Exponent>   candidates;
  };

  //! Recovers k from h = g^k for g of infinite order, if the representation
  //! length tracks the exponent. Each try draws r in [ceil(P/2), P], forms
  //! g~ = g^r and h~ = h^r, and takes the maximal k with
  //! len(g~^k) <= len(h~) (bracketing by doubling, then bisection). The first
  //! candidate with g^k = h is returned; otherwise the outcome records every
  //! candidate tried.
  template <LengthMeasured P>
  InfiniteOutcome solve_infinite(P const&                   p,
                                 DlpInstance<P> const&      inst,
                                 InfiniteOrderParams const& params,
                                 Rng&                       rng) {
    if (params.P < 1 || params.tries < 1) {
      throw InvalidArgument("solve_infinite: need P >= 1 and m >= 1");
    }
    InfiniteOutcome out;
    for (std::size_t i = 0; i < params.tries; ++i) {
      ++out.tries;
      Exponent const      r       = uniform_exponent(rng, ceil_div(params.P, 2), params.P);
      element_t<P> const  g_tilde = power(p, inst.g, r);
      std::uint64_t const target  = p.length(power(p, inst.h, r));

      PowerCache<P> cache(p, g_tilde, 2);
      if (p.length(g_tilde) > target) {
        continue;
      }
      Exponent lo = 1, hi = 2;
      bool     bracketed = true;
      while (p.length(cache.power(hi)) <= target) {
        lo = hi;
        hi *= 2;
        if (bit_length(hi) > 40) {
          bracketed = false;
          break;
        }
      }
      if (!bracketed) {
        continue;
      }
      while (hi - lo > 1) {
        Exponent mid = (lo + hi) / 2;
        if (p.length(cache.power(mid)) <= target) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      out.candidates.push_back(lo);
      if (power(p, inst.g, lo) == inst.h) {
        out.k = lo;
        return out;
      }
    }
    return out;
  }

}  // namespace sgdlp
