#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "sgdlp/core.hpp"
#include "sgdlp/platforms/encoding.hpp"

namespace sgdlp {

  //! Square matrix over Z_m, row-major, entries reduced.
  struct ModMatrix {
    std::vector<std::uint64_t> entries;

    bool operator==(ModMatrix const&) const = default;
  };

  //! All d x d matrices over Z_m (invertible or not) under the matrix product.
  //!
  //! Canonical form: tag 0x02, then d*d entries row-major, each big-endian in
  //! the fixed width needed for m - 1.
  class MatrixModPlatform {
   public:
    using element_type = ModMatrix;

    static constexpr std::uint8_t tag = 0x02;

    MatrixModPlatform(std::uint64_t modulus, std::size_t dim)
        : modulus_(modulus), dim_(dim), width_(detail::width_for(modulus - 1)) {
      if (modulus < 2) {
        throw InvalidArgument("matmod: modulus must be >= 2");
      }
      if (dim < 1) {
        throw InvalidArgument("matmod: dimension must be >= 1");
      }
    }

    std::uint64_t modulus() const noexcept {
      return modulus_;
    }

    std::size_t dimension() const noexcept {
      return dim_;
    }

    //! Builds a matrix from row-major values, reducing each mod m.
    ModMatrix element(std::initializer_list<std::uint64_t> values) const {
      return element(std::vector<std::uint64_t>(values));
    }

    ModMatrix element(std::vector<std::uint64_t> values) const {
      if (values.size() != dim_ * dim_) {
        throw InvalidArgument("matmod: expected " + std::to_string(dim_ * dim_)
                              + " entries");
      }
      for (auto& v : values) {
        v %= modulus_;
      }
      return ModMatrix{std::move(values)};
    }

    ModMatrix multiply(ModMatrix const& a, ModMatrix const& b) const {
      ModMatrix c{std::vector<std::uint64_t>(dim_ * dim_, 0)};
      for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t k = 0; k < dim_; ++k) {
          unsigned __int128 const aik = a.entries[i * dim_ + k];
          if (aik == 0) {
            continue;
          }
          for (std::size_t j = 0; j < dim_; ++j) {
            auto& cij = c.entries[i * dim_ + j];
            cij       = static_cast<std::uint64_t>(
                (cij + aik * b.entries[k * dim_ + j] % modulus_) % modulus_);
          }
        }
      }
      return c;
    }

    Bytes serialize(ModMatrix const& a) const {
      Bytes out{tag};
      out.reserve(1 + width_ * a.entries.size());
      for (auto v : a.entries) {
        detail::put_be(out, v, width_);
      }
      return out;
    }

    ModMatrix deserialize(std::span<std::uint8_t const> bytes) const {
      detail::Reader in(bytes);
      in.expect_tag(tag);
      ModMatrix a;
      a.entries.reserve(dim_ * dim_);
      for (std::size_t i = 0; i < dim_ * dim_; ++i) {
        std::size_t   at = in.offset();
        std::uint64_t v  = in.be(width_);
        if (v >= modulus_) {
          in.fail("matrix entry out of range", at);
        }
        a.entries.push_back(v);
      }
      in.finish();
      return a;
    }

    ModMatrix random_element(Rng& rng) const {
      std::uniform_int_distribution<std::uint64_t> dist(0, modulus_ - 1);
      ModMatrix                                    a;
      a.entries.resize(dim_ * dim_);
      for (auto& v : a.entries) {
        v = dist(rng);
      }
      return a;
    }

    std::string descriptor() const {
      return "matmod m=" + std::to_string(modulus_)
             + " d=" + std::to_string(dim_);
    }

   private:
    std::uint64_t modulus_;
    std::size_t   dim_;
    std::size_t   width_;
  };

}  // namespace sgdlp
