#pragma once

// Element contract, exponentiation, power caches and the cycle-structure
// data model shared by every algorithm in the library.

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include "sgdlp/errors.hpp"

namespace sgdlp {

  //! Arbitrary-precision exponent. Element powers are only formed for
  //! exponents >= 1: a semigroup need not contain an identity.
  using Exponent = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                                 boost::multiprecision::et_off>;

  using Bytes = std::vector<std::uint8_t>;

  //! Every randomized procedure takes one of these explicitly.
  using Rng = std::mt19937_64;

  //! A semigroup platform: a value type of canonical elements, an associative
  //! product and a canonical byte serialization (tag byte + payload).
  template <typename P>
  concept Semigroup = requires(P const&                              p,
                               typename P::element_type const&       a,
                               std::span<std::uint8_t const> const bytes,
                               Rng&                                  rng) {
    typename P::element_type;
    { p.multiply(a, a) } -> std::same_as<typename P::element_type>;
    { p.serialize(a) } -> std::same_as<Bytes>;
    { p.deserialize(bytes) } -> std::same_as<typename P::element_type>;
    { p.random_element(rng) } -> std::same_as<typename P::element_type>;
    { p.descriptor() } -> std::convertible_to<std::string>;
    { a == a } -> std::convertible_to<bool>;
  };

  //! Platforms with a representation-length function (used by the
  //! infinite-order heuristic).
  template <typename P>
  concept LengthMeasured
      = Semigroup<P>
        && requires(P const& p, typename P::element_type const& a) {
             { p.length(a) } -> std::convertible_to<std::uint64_t>;
           };

  template <Semigroup P>
  using element_t = typename P::element_type;

  ////////////////////////////////////////////////////////////////////////
  // Exponent helpers
  ////////////////////////////////////////////////////////////////////////

  inline Exponent uniform_exponent(Rng& rng, Exponent const& lo, Exponent const& hi) {
    if (hi < lo) {
      throw InvalidArgument("uniform_exponent: empty range");
    }
    boost::random::uniform_int_distribution<Exponent> dist(lo, hi);
    return dist(rng);
  }

  inline std::uint64_t to_u64(Exponent const& e) {
    return e.convert_to<std::uint64_t>();
  }

  inline std::string to_decimal(Exponent const& e) {
    return e.str();
  }

  inline Exponent ceil_div(Exponent const& a, Exponent const& b) {
    return (a + b - 1) / b;
  }

  //! Number of bits needed to write e (0 for e == 0).
  inline std::size_t bit_length(Exponent const& e) {
    return e == 0 ? 0 : boost::multiprecision::msb(e) + 1;
  }

  //! Distinct prime factors by trial division. Only meant for the small
  //! orders met at test scale.
  inline std::vector<Exponent> prime_factors(Exponent n) {
    std::vector<Exponent> result;
    for (Exponent p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
      if (n % p == 0) {
        result.push_back(p);
        while (n % p == 0) {
          n /= p;
        }
      }
    }
    if (n > 1) {
      result.push_back(n);
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Hex encoding of canonical forms
  ////////////////////////////////////////////////////////////////////////

  inline std::string to_hex(std::span<std::uint8_t const> bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * bytes.size());
    for (auto b : bytes) {
      out.push_back(digits[b >> 4]);
      out.push_back(digits[b & 0xF]);
    }
    return out;
  }

  inline Bytes from_hex(std::string_view text) {
    auto nibble = [&](std::size_t i) -> std::uint8_t {
      char c = text[i];
      if (c >= '0' && c <= '9') {
        return static_cast<std::uint8_t>(c - '0');
      }
      if (c >= 'a' && c <= 'f') {
        return static_cast<std::uint8_t>(c - 'a' + 10);
      }
      if (c >= 'A' && c <= 'F') {
        return static_cast<std::uint8_t>(c - 'A' + 10);
      }
      throw ParseError("invalid hex digit at offset " + std::to_string(i), i);
    };
    if (text.size() % 2 != 0) {
      throw ParseError("odd number of hex digits", text.size());
    }
    Bytes out(text.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = static_cast<std::uint8_t>(nibble(2 * i) << 4 | nibble(2 * i + 1));
    }
    return out;
  }

  //! Canonical byte string as a hashable key.
  template <Semigroup P>
  std::string canonical_key(P const& p, element_t<P> const& a) {
    Bytes b = p.serialize(a);
    return std::string(b.begin(), b.end());
  }

  ////////////////////////////////////////////////////////////////////////
  // Product counting
  ////////////////////////////////////////////////////////////////////////

  //! Forwards to another platform and counts semigroup products. The counter
  //! belongs to this wrapper, so one wrapper per instance and thread.
  template <Semigroup P>
  class Counting {
   public:
    using element_type = element_t<P>;

    explicit Counting(P const& inner) : inner_(&inner) {}

    element_type multiply(element_type const& a, element_type const& b) const {
      ++products_;
      return inner_->multiply(a, b);
    }

    Bytes serialize(element_type const& a) const {
      return inner_->serialize(a);
    }

    element_type deserialize(std::span<std::uint8_t const> bytes) const {
      return inner_->deserialize(bytes);
    }

    element_type random_element(Rng& rng) const {
      return inner_->random_element(rng);
    }

    std::string descriptor() const {
      return inner_->descriptor();
    }

    std::uint64_t length(element_type const& a) const
      requires LengthMeasured<P>
    {
      return inner_->length(a);
    }

    P const& inner() const noexcept {
      return *inner_;
    }

    std::uint64_t products() const noexcept {
      return products_;
    }

   private:
    P const*              inner_;
    mutable std::uint64_t products_ = 0;
  };

  ////////////////////////////////////////////////////////////////////////
  // Exponentiation
  ////////////////////////////////////////////////////////////////////////

  //! g^k by left-to-right square-and-multiply; O(log k) products.
  template <Semigroup P>
  element_t<P> power(P const& p, element_t<P> const& g, Exponent const& k) {
    if (k < 1) {
      throw InvalidArgument("power: exponent must be >= 1, got " + k.str());
    }
    element_t<P> result = g;
    for (std::size_t i = bit_length(k) - 1; i-- > 0;) {
      result = p.multiply(result, result);
      if (boost::multiprecision::bit_test(k, static_cast<unsigned>(i))) {
        result = p.multiply(result, g);
      }
    }
    return result;
  }

  enum class CachePolicy { extend, strict };

  //! Table of g^(2^i) for i = 0 .. ceil(log2(bound)). A power within the
  //! bound costs popcount(k) - 1 products.
  template <Semigroup P>
  class PowerCache {
   public:
    using element_type = element_t<P>;

    PowerCache(P const&        platform,
               element_type    base,
               Exponent const& bound  = 2,
               CachePolicy     policy = CachePolicy::extend)
        : platform_(platform), policy_(policy) {
      powers_.push_back(std::move(base));
      grow_to(bound < 1 ? Exponent(1) : bound);
    }

    element_type const& base() const noexcept {
      return powers_.front();
    }

    //! Largest exponent representable without extending.
    Exponent bound() const {
      return (Exponent(1) << powers_.size()) - 1;
    }

    std::span<element_type const> powers() const noexcept {
      return powers_;
    }

    element_type power(Exponent const& k) {
      if (k < 1) {
        throw InvalidArgument("power_via_cache: exponent must be >= 1");
      }
      if (k > bound()) {
        if (policy_ == CachePolicy::strict) {
          throw InvalidArgument("power_via_cache: exponent " + k.str()
                                + " exceeds cache bound " + bound().str());
        }
        // doubles on demand
        Exponent target = bound() + 1;
        while (target <= k) {
          target <<= 1;
        }
        grow_to(target);
      }
      std::optional<element_type> result;
      std::size_t const           bits = bit_length(k);
      for (std::size_t i = 0; i < bits; ++i) {
        if (boost::multiprecision::bit_test(k, static_cast<unsigned>(i))) {
          result = result ? platform_.get().multiply(*result, powers_[i])
                          : powers_[i];
        }
      }
      return *result;
    }

   private:
    void grow_to(Exponent const& bound) {
      std::size_t const want = bit_length(bound);
      while (powers_.size() < want) {
        powers_.push_back(
            platform_.get().multiply(powers_.back(), powers_.back()));
      }
    }

    std::reference_wrapper<P const> platform_;
    CachePolicy                     policy_;
    std::vector<element_type>       powers_;
  };

  ////////////////////////////////////////////////////////////////////////
  // Cycle structure
  ////////////////////////////////////////////////////////////////////////

  //! (l, n, t) for a periodic element g: l and n minimal with
  //! g^(l+n) = g^l, t minimal with t*n > l. G = {g^(l+k) : 0 <= k < n} is
  //! cyclic of order n with neutral element g^(tn) and generator g^(tn+1).
  struct CycleStructure {
    Exponent index;      // l
    Exponent period;     // n
    Exponent threshold;  // t

    Exponent identity_exp() const {
      return threshold * period;
    }

    Exponent generator_exp() const {
      return threshold * period + 1;
    }

    bool operator==(CycleStructure const&) const = default;

    friend std::ostream& operator<<(std::ostream& out, CycleStructure const& cs) {
      return out << "(l=" << cs.index << ", n=" << cs.period << ", t=" << cs.threshold << ")";
    }
  };

  //! Minimal t with t*n > l.
  inline Exponent threshold_for(Exponent const& index, Exponent const& period) {
    return index / period + 1;
  }

}  // namespace sgdlp
