#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "sgdlp/core.hpp"
#include "sgdlp/platforms/encoding.hpp"

namespace sgdlp {

  //! Square integer matrix, row-major, unbounded entries.
  struct IntMatrix {
    std::vector<Exponent> entries;

    bool operator==(IntMatrix const&) const = default;
  };

  //! d x d integer matrices under the matrix product: a semigroup in which
  //! most elements have infinite order.
  //!
  //! Canonical form: tag 0x04, then for each entry row-major a sign byte
  //! (0 nonnegative, 1 negative), a 4-byte big-endian length L and L bytes of
  //! big-endian magnitude without leading zero bytes (zero has L = 0).
  //!
  //! length() is the bit-length of that serialization with the leading zero
  //! bits of each magnitude dropped, so it grows with every entry.
  class IntMatrixPlatform {
   public:
    using element_type = IntMatrix;

    static constexpr std::uint8_t tag = 0x04;

    static constexpr std::int64_t default_low  = -16;
    static constexpr std::int64_t default_high = 16;

    explicit IntMatrixPlatform(std::size_t  dim,
                               std::int64_t low  = default_low,
                               std::int64_t high = default_high)
        : dim_(dim), low_(low), high_(high) {
      if (dim < 2) {
        throw InvalidArgument("intmat: dimension must be >= 2");
      }
      if (high < low) {
        throw InvalidArgument("intmat: empty entry range");
      }
    }

    std::size_t dimension() const noexcept {
      return dim_;
    }

    IntMatrix element(std::initializer_list<std::int64_t> values) const {
      if (values.size() != dim_ * dim_) {
        throw InvalidArgument("intmat: expected " + std::to_string(dim_ * dim_)
                              + " entries");
      }
      IntMatrix a;
      for (auto v : values) {
        a.entries.emplace_back(v);
      }
      return a;
    }

    IntMatrix multiply(IntMatrix const& a, IntMatrix const& b) const {
      IntMatrix c{std::vector<Exponent>(dim_ * dim_)};
      Exponent  tmp;
      for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
          auto& cij = c.entries[i * dim_ + j];
          for (std::size_t k = 0; k < dim_; ++k) {
            tmp = a.entries[i * dim_ + k] * b.entries[k * dim_ + j];
            cij += tmp;
          }
        }
      }
      return c;
    }

    Bytes serialize(IntMatrix const& a) const {
      Bytes out{tag};
      Bytes mag;
      for (auto const& v : a.entries) {
        mag.clear();
        if (v != 0) {
          mag.resize((mpz_sizeinbase(v.backend().data(), 2) + 7) / 8);
          std::size_t written = 0;
          mpz_export(mag.data(), &written, 1, 1, 1, 0, v.backend().data());
          mag.resize(written);
        }
        out.push_back(v < 0 ? 1 : 0);
        detail::put_be(out, mag.size(), 4);
        out.insert(out.end(), mag.begin(), mag.end());
      }
      return out;
    }

    IntMatrix deserialize(std::span<std::uint8_t const> bytes) const {
      detail::Reader in(bytes);
      in.expect_tag(tag);
      IntMatrix a;
      a.entries.reserve(dim_ * dim_);
      for (std::size_t i = 0; i < dim_ * dim_; ++i) {
        std::size_t  at   = in.offset();
        std::uint8_t sign = in.byte();
        if (sign > 1) {
          in.fail("invalid sign byte", at);
        }
        std::size_t len_at = in.offset();
        auto        len    = static_cast<std::size_t>(in.be(4));
        if (len > in.remaining()) {
          in.fail("entry length exceeds payload", len_at);
        }
        std::size_t mag_at = in.offset();
        auto        mag    = in.take(len);
        if (len == 0 && sign == 1) {
          in.fail("negative zero", at);
        }
        if (len > 0 && mag[0] == 0) {
          in.fail("magnitude has a leading zero byte", mag_at);
        }
        Exponent v;
        if (len > 0) {
          mpz_import(v.backend().data(), len, 1, 1, 1, 0, mag.data());
        }
        a.entries.push_back(sign == 1 ? Exponent(-v) : v);
      }
      in.finish();
      return a;
    }

    IntMatrix random_element(Rng& rng) const {
      std::uniform_int_distribution<std::int64_t> dist(low_, high_);
      IntMatrix                                   a;
      for (std::size_t i = 0; i < dim_ * dim_; ++i) {
        a.entries.emplace_back(dist(rng));
      }
      return a;
    }

    std::uint64_t length(IntMatrix const& a) const {
      std::uint64_t bits = 8;
      for (auto const& v : a.entries) {
        bits += 40 + bit_length(boost::multiprecision::abs(v));
      }
      return bits;
    }

    //! True when the entries of g^k grow exponentially in k (spectral radius
    //! above 1). Decided on g^1024: exponential growth with an algebraic
    //! integer radius > 1 gives hundreds of bits there, polynomial growth
    //! stays far below the threshold for moderate dimensions and entries.
    bool has_exponential_growth(IntMatrix const& g) const {
      IntMatrix   x    = power(*this, g, Exponent(1024));
      std::size_t bits = 0;
      for (auto const& v : x.entries) {
        bits = std::max(bits, bit_length(boost::multiprecision::abs(v)));
      }
      return bits >= 160;
    }

    //! Draws until the element has exponential growth; these are the
    //! generators used for the infinite-order heuristic.
    IntMatrix random_expanding_element(Rng& rng) const {
      while (true) {
        IntMatrix g = random_element(rng);
        if (has_exponential_growth(g)) {
          return g;
        }
      }
    }

    std::int64_t low() const noexcept {
      return low_;
    }

    std::int64_t high() const noexcept {
      return high_;
    }

    std::string descriptor() const {
      std::string s = "intmat d=" + std::to_string(dim_);
      if (low_ != default_low || high_ != default_high) {
        s += " lo=" + std::to_string(low_) + " hi=" + std::to_string(high_);
      }
      return s;
    }

   private:
    std::size_t  dim_;
    std::int64_t low_;
    std::int64_t high_;
  };

}  // namespace sgdlp
