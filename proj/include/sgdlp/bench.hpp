#pragma once

// Size sweeps over residue semigroups with a known cycle structure, counting
// semigroup products and oracle calls per solve.

#include <chrono>
#include <cstdint>
#include <sstream>
#include <string>

#include <boost/multiprecision/miller_rabin.hpp>

#include "sgdlp/core.hpp"
#include "sgdlp/oracles.hpp"
#include "sgdlp/platforms.hpp"
#include "sgdlp/solver.hpp"
#include "sgdlp/structure.hpp"

namespace sgdlp::bench {

  inline constexpr char const* csv_header
      = "platform,size,l,n,products,oracle_calls,wall_ns";

  struct Row {
    std::string   platform;
    Exponent      size;
    Exponent      l;
    Exponent      n;
    std::uint64_t products     = 0;
    std::uint64_t oracle_calls = 0;
    std::int64_t  wall_ns      = 0;
    Exponent      x;  // true exponent, not part of the CSV

    std::string csv() const {
      std::ostringstream out;
      out << platform << ',' << size << ',' << l << ',' << n << ',' << products
          << ',' << oracle_calls << ',' << wall_ns;
      return out.str();
    }
  };

  inline Exponent next_prime(Exponent p) {
    Rng rng(0x5eed);
    if (p <= 2) {
      return 2;
    }
    if (p % 2 == 0) {
      ++p;
    }
    while (!boost::multiprecision::miller_rabin_test(p, 25, rng)) {
      p += 2;
    }
    return p;
  }

  //! Residue semigroup Z_(4p), p the first prime >= 2^bits, with
  //! g = 2 (mod 4) and g a primitive root mod p. Then l = 2 and n = p - 1.
  struct ZmulInstance {
    ResidueMulPlatform platform;
    Residue            g;
    Exponent           p;
  };

  inline ZmulInstance zmul_instance(unsigned bits, Rng& rng) {
    Exponent const p      = next_prime(Exponent(1) << bits);
    auto const     factors = prime_factors(p - 1);
    Exponent       u;
    while (true) {
      u         = uniform_exponent(rng, 2, p - 1);
      bool prim = true;
      for (auto const& q : factors) {
        if (boost::multiprecision::powm(u, (p - 1) / q, p) == 1) {
          prim = false;
          break;
        }
      }
      if (prim) {
        break;
      }
    }
    // g = u (mod p), g = 2 (mod 4)
    Exponent g = u;
    while (g % 4 != 2) {
      g += p;
    }
    ResidueMulPlatform platform(to_u64(Exponent(4 * p)));
    return ZmulInstance{platform, platform.element(to_u64(g)), p};
  }

  //! One row of the zmul sweep: a random exponent x in [1, 2^30], h = g^x,
  //! solved with `oracle`; l and n come from the brute-force structure.
  inline Row zmul_row(unsigned bits, std::uint64_t seed, DlpOracle const& oracle, bool timing) {
    Rng            rng(seed);
    auto           inst = zmul_instance(bits, rng);
    auto const&    z    = inst.platform;
    CycleStructure cs   = brute_force_structure(z, inst.g, 4 * to_u64(inst.p) + 16);

    Row row;
    row.platform = "zmul";
    row.size     = z.modulus();
    row.l        = cs.index;
    row.n        = cs.period;
    row.x        = uniform_exponent(rng, 1, Exponent(1) << 30);

    DlpInstance<ResidueMulPlatform> problem{inst.g, power(z, inst.g, row.x)};
    SolveOptions                    options;
    options.oracle   = oracle;
    auto const start = std::chrono::steady_clock::now();
    auto       sol   = solve_periodic(z, problem, rng, options);
    auto const stop  = std::chrono::steady_clock::now();
    row.products     = sol.trace.products;
    row.oracle_calls = sol.trace.oracle_calls;
    if (timing) {
      row.wall_ns
          = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
    }
    return row;
  }

  //! Per-row seed, independent of the order rows are computed in.
  inline std::uint64_t row_seed(std::uint64_t seed, unsigned bits, unsigned index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(bits),
                      static_cast<std::uint32_t>(index)};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (std::uint64_t{out[0]} << 32) | out[1];
  }

}  // namespace sgdlp::bench
