#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "sgdlp/core.hpp"
#include "sgdlp/platforms/encoding.hpp"

namespace sgdlp {

  struct Residue {
    std::uint64_t value;

    bool operator==(Residue const&) const = default;
  };

  //! Residues 0 .. m-1 under multiplication mod m.
  //!
  //! Canonical form: tag 0x01, then the residue big-endian in the fixed width
  //! needed for m - 1.
  class ResidueMulPlatform {
   public:
    using element_type = Residue;

    static constexpr std::uint8_t tag = 0x01;

    explicit ResidueMulPlatform(std::uint64_t modulus)
        : modulus_(modulus), width_(detail::width_for(modulus - 1)) {
      if (modulus < 2) {
        throw InvalidArgument("zmul: modulus must be >= 2");
      }
    }

    std::uint64_t modulus() const noexcept {
      return modulus_;
    }

    Residue element(std::uint64_t v) const noexcept {
      return Residue{v % modulus_};
    }

    Residue multiply(Residue a, Residue b) const noexcept {
      return Residue{static_cast<std::uint64_t>(
          static_cast<unsigned __int128>(a.value) * b.value % modulus_)};
    }

    Bytes serialize(Residue a) const {
      Bytes out{tag};
      detail::put_be(out, a.value, width_);
      return out;
    }

    Residue deserialize(std::span<std::uint8_t const> bytes) const {
      detail::Reader in(bytes);
      in.expect_tag(tag);
      std::size_t   at = in.offset();
      std::uint64_t v  = in.be(width_);
      if (v >= modulus_) {
        in.fail("residue out of range", at);
      }
      in.finish();
      return Residue{v};
    }

    Residue random_element(Rng& rng) const {
      std::uniform_int_distribution<std::uint64_t> dist(0, modulus_ - 1);
      return Residue{dist(rng)};
    }

    std::string descriptor() const {
      return "zmul m=" + std::to_string(modulus_);
    }

   private:
    std::uint64_t modulus_;
    std::size_t   width_;
  };

}  // namespace sgdlp
