#pragma once

// Classic discrete-log solvers for a cyclic group sitting inside a semigroup.
// The platform has no inverse operation, so every solver works with
// positive exponents only; inverses appear as h^(ord - m) when the order is
// known.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sgdlp/core.hpp"

namespace sgdlp {

  enum class Strategy { brute, bsgs, rho };

  inline std::string_view to_string(Strategy s) noexcept {
    switch (s) {
      case Strategy::brute:
        return "brute";
      case Strategy::bsgs:
        return "bsgs";
      case Strategy::rho:
        return "rho";
    }
    return "?";
  }

  inline std::optional<Strategy> parse_strategy(std::string_view s) noexcept {
    if (s == "brute") {
      return Strategy::brute;
    } else if (s == "bsgs") {
      return Strategy::bsgs;
    } else if (s == "rho") {
      return Strategy::rho;
    }
    return std::nullopt;
  }

  namespace detail {

    //! Reduces k into [1, order] when the order is known, then checks
    //! h^k = y. Nothing unverified leaves an oracle.
    template <Semigroup P>
    Exponent finish_dlog(P const&                       p,
                         element_t<P> const&            h,
                         element_t<P> const&            y,
                         Exponent                       k,
                         std::optional<Exponent> const& order) {
      if (order) {
        k %= *order;
        if (k <= 0) {
          k += *order;
        }
      }
      if (k < 1 || !(power(p, h, k) == y)) {
        throw NotFound("oracle answer failed verification; the base may not "
                       "lie in a cyclic group");
      }
      return k;
    }

    inline std::uint64_t isqrt_ceil(Exponent const& n) {
      Exponent r = boost::multiprecision::sqrt(n);
      if (r * r < n) {
        ++r;
      }
      return to_u64(r);
    }

    //! Inverse of a modulo m, assuming gcd(a, m) = 1.
    inline Exponent inverse_mod(Exponent a, Exponent const& m) {
      Exponent r0 = m, r1 = a % m, s0 = 0, s1 = 1;
      while (r1 != 0) {
        Exponent q = r0 / r1;
        Exponent r = r0 - q * r1;
        r0         = r1;
        r1         = r;
        Exponent s = s0 - q * s1;
        s0         = s1;
        s1         = s;
      }
      s0 %= m;
      if (s0 < 0) {
        s0 += m;
      }
      return s0;
    }

    //! Three-way partition of canonical forms: salted FNV-1a of the bytes.
    template <Semigroup P>
    unsigned partition3(P const& p, element_t<P> const& x, std::uint64_t salt) {
      std::uint64_t hash = 14695981039346656037ULL ^ salt;
      for (auto b : p.serialize(x)) {
        hash ^= b;
        hash *= 1099511628211ULL;
      }
      hash ^= hash >> 29;
      return static_cast<unsigned>(hash % 3);
    }

  }  // namespace detail

  //! Minimal k in [1, cap] with h^k = y, by walking h, h^2, ...
  template <Semigroup P>
  Exponent dlog_brute(P const&            p,
                      element_t<P> const& h,
                      element_t<P> const& y,
                      Exponent const&     cap) {
    element_t<P> x = h;
    for (Exponent k = 1; k <= cap; ++k) {
      if (x == y) {
        return k;
      }
      x = p.multiply(x, h);
    }
    throw NotFound("dlog_brute: no k <= " + cap.str() + " with h^k = y");
  }

  //! Baby-step giant-step with m = ceil(sqrt(order_bound)).
  //!
  //! Known order: baby steps h^j (1 <= j <= m), giant steps y * (h^-m)^i with
  //! h^-m = h^(ord - m mod ord); answer im + j reduced into [1, ord].
  //!
  //! Unknown order: baby steps y * h^j (0 <= j < m), giant steps h^(im) for
  //! i = 1 .. m + 1; a match gives h^(im - j) = y inside a group. The answer
  //! is at most m(m + 1).
  template <Semigroup P>
  Exponent dlog_bsgs(P const&                       p,
                     element_t<P> const&            h,
                     element_t<P> const&            y,
                     Exponent                       order_bound,
                     std::optional<Exponent> const& order = std::nullopt) {
    if (order && order_bound < *order) {
      order_bound = *order;
    }
    if (order_bound < 1) {
      order_bound = 1;
    }
    std::uint64_t const m = detail::isqrt_ceil(order_bound);
    if (m > (std::uint64_t{1} << 26)) {
      throw InvalidArgument("dlog_bsgs: order bound too large for a table");
    }
    std::unordered_map<std::string, std::uint64_t> table;
    table.reserve(m);

    if (order) {
      element_t<P> x = h;
      for (std::uint64_t j = 1; j <= m; ++j) {
        table.try_emplace(canonical_key(p, x), j);
        if (j < m) {
          x = p.multiply(x, h);
        }
      }
      Exponent c = (*order - Exponent(m) % *order) % *order;
      if (c == 0) {
        c = *order;
      }
      element_t<P> const giant = power(p, h, c);
      element_t<P>       z     = y;
      for (std::uint64_t i = 0; i <= m; ++i) {
        if (auto it = table.find(canonical_key(p, z)); it != table.end()) {
          return detail::finish_dlog(
              p, h, y, Exponent(i) * m + it->second, order);
        }
        z = p.multiply(z, giant);
      }
    } else {
      element_t<P> x = y;
      for (std::uint64_t j = 0; j < m; ++j) {
        table.try_emplace(canonical_key(p, x), j);
        if (j + 1 < m) {
          x = p.multiply(x, h);
        }
      }
      element_t<P> const giant = power(p, h, Exponent(m));
      element_t<P>       z     = giant;
      for (std::uint64_t i = 1; i <= m + 1; ++i) {
        if (auto it = table.find(canonical_key(p, z)); it != table.end()) {
          return detail::finish_dlog(
              p, h, y, Exponent(i) * m - it->second, order);
        }
        z = p.multiply(z, giant);
      }
    }
    throw NotFound("dlog_bsgs: y not in <h> within order bound "
                   + order_bound.str());
  }

  //! Order of h by an additive walk x -> x * h^(c_j) on powers of h: a cycle
  //! yields a multiple M of ord(h) (checked as h^(M+1) = h), which is then
  //! stripped to the exact order.
  template <Semigroup P>
  Exponent rho_order(P const& p, element_t<P> const& h, Exponent const& bound, Rng& rng) {
    std::uint64_t const limit = 8 * detail::isqrt_ceil(bound) + 64;
    std::uint64_t const salt  = rng();
    Exponent            steps[3];
    element_t<P>        jumps[3] = {h, h, h};
    for (int j = 0; j < 3; ++j) {
      steps[j] = uniform_exponent(rng, 1, bound);
      jumps[j] = power(p, h, steps[j]);
    }
    Exponent     a0 = uniform_exponent(rng, 1, bound);
    element_t<P> x0 = power(p, h, a0);

    element_t<P> tort = x0, hare = x0;
    Exponent     ta = a0, ha = a0;
    auto         step = [&](element_t<P>& x, Exponent& a) {
      unsigned j = detail::partition3(p, x, salt);
      x          = p.multiply(x, jumps[j]);
      a += steps[j];
    };
    step(hare, ha);
    std::uint64_t pow2 = 1, lam = 1, taken = 1;
    while (!(tort == hare)) {
      if (++taken > limit) {
        throw NotFound("rho_order: no cycle within step limit");
      }
      if (pow2 == lam) {
        tort = hare;
        ta   = ha;
        pow2 *= 2;
        lam = 0;
      }
      step(hare, ha);
      ++lam;
    }
    Exponent multiple = ha - ta;
    if (!(power(p, h, multiple + 1) == h)) {
      throw NotFound("rho_order: h does not lie in a cyclic group");
    }
    if (bit_length(multiple) > 80) {
      throw NotFound("rho_order: cycle length too large to factor");
    }
    for (auto const& q : prime_factors(multiple)) {
      while (multiple % q == 0 && power(p, h, multiple / q + 1) == h) {
        multiple /= q;
      }
    }
    return multiple;
  }

  //! Pollard rho with the three-way walk x*y, x^2, x*h on x = h^a y^b and
  //! Brent cycle detection. Exponents are tracked mod ord(h); when the order
  //! is not supplied it is first found with rho_order (bounded by `bound`).
  //! Failed walks retry with a fresh partition; after `retries` failures the
  //! query falls back to baby-step giant-step.
  template <Semigroup P>
  Exponent dlog_pollard_rho(P const&                p,
                            element_t<P> const&     h,
                            element_t<P> const&     y,
                            std::optional<Exponent> order,
                            Exponent const&         bound,
                            Rng&                    rng,
                            std::size_t             retries = 8) {
    if (!order) {
      order = rho_order(p, h, bound, rng);
    }
    Exponent const& n = *order;
    if (n == 1) {
      return detail::finish_dlog(p, h, y, Exponent(1), order);
    }
    std::uint64_t const limit = 8 * detail::isqrt_ceil(n) + 64;

    for (std::size_t attempt = 0; attempt < retries; ++attempt) {
      std::uint64_t const salt = rng();
      Exponent            a0   = uniform_exponent(rng, 1, n);
      Exponent            b0   = uniform_exponent(rng, 1, n);
      element_t<P> x0 = p.multiply(power(p, h, a0), power(p, y, b0));

      auto step = [&](element_t<P>& x, Exponent& a, Exponent& b) {
        switch (detail::partition3(p, x, salt)) {
          case 0:
            x = p.multiply(x, y);
            b = (b + 1) % n;
            break;
          case 1:
            x = p.multiply(x, x);
            a = (2 * a) % n;
            b = (2 * b) % n;
            break;
          default:
            x = p.multiply(x, h);
            a = (a + 1) % n;
            break;
        }
      };

      element_t<P>  tort = x0, hare = x0;
      Exponent      ta = a0 % n, tb = b0 % n, ha = ta, hb = tb;
      std::uint64_t pow2 = 1, lam = 1, taken = 1;
      step(hare, ha, hb);
      bool found = true;
      while (!(tort == hare)) {
        if (++taken > limit) {
          found = false;
          break;
        }
        if (pow2 == lam) {
          tort = hare;
          ta   = ha;
          tb   = hb;
          pow2 *= 2;
          lam = 0;
        }
        step(hare, ha, hb);
        ++lam;
      }
      if (!found) {
        continue;
      }
      // h^ta y^tb = h^ha y^hb  =>  ta - ha = k (hb - tb)  (mod n)
      Exponent u = ((hb - tb) % n + n) % n;
      Exponent v = ((ta - ha) % n + n) % n;
      if (u == 0) {
        continue;
      }
      Exponent d = boost::multiprecision::gcd(u, n);
      if (v % d != 0 || d > 4096) {
        continue;
      }
      Exponent const reduced = n / d;
      Exponent       k0      = (v / d) * detail::inverse_mod(u / d, reduced) % reduced;
      for (Exponent i = 0; i < d; ++i) {
        Exponent k = k0 + i * reduced;
        if (k == 0) {
          k = n;
        }
        if (power(p, h, k) == y) {
          return detail::finish_dlog(p, h, y, k, order);
        }
      }
    }
    return dlog_bsgs(p, h, y, n, order);
  }

  //! A group DLP oracle: given a generator h of a cyclic group inside the
  //! platform and a power y of h, returns k >= 1 with h^k = y. `bound` is an
  //! upper estimate of ord(h), used when `order` is absent.
  struct DlpOracle {
    Strategy    strategy    = Strategy::bsgs;
    std::size_t rho_retries = 8;

    template <Semigroup P>
    Exponent operator()(P const&                       p,
                        element_t<P> const&            h,
                        element_t<P> const&            y,
                        Exponent const&                bound,
                        std::optional<Exponent> const& order,
                        Rng&                           rng) const {
      switch (strategy) {
        case Strategy::brute:
          return detail::finish_dlog(
              p, h, y, dlog_brute(p, h, y, order ? *order : bound), order);
        case Strategy::bsgs:
          return dlog_bsgs(p, h, y, bound, order);
        case Strategy::rho:
          return dlog_pollard_rho(p, h, y, order, bound, rng, rho_retries);
      }
      throw InvalidArgument("unknown oracle strategy");
    }
  };

}  // namespace sgdlp
