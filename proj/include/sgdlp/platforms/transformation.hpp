#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "sgdlp/core.hpp"
#include "sgdlp/platforms/encoding.hpp"

namespace sgdlp {

  //! A total function on {0, .., k-1}; images[i] is the image of point i.
  struct Transformation {
    std::vector<std::uint32_t> images;

    bool operator==(Transformation const&) const = default;
  };

  //! The full transformation semigroup of degree k, composed left to right:
  //! (f * g)(x) = g(f(x)).
  //!
  //! Points are written 0-based. Canonical form: tag 0x03, then the k images
  //! big-endian in the fixed width needed for k - 1.
  class TransformationPlatform {
   public:
    using element_type = Transformation;

    static constexpr std::uint8_t tag = 0x03;

    explicit TransformationPlatform(std::size_t degree)
        : degree_(degree), width_(detail::width_for(degree - 1)) {
      if (degree < 1 || degree > (std::size_t{1} << 32)) {
        throw InvalidArgument("transf: degree must be in [1, 2^32]");
      }
    }

    std::size_t degree() const noexcept {
      return degree_;
    }

    Transformation element(std::initializer_list<std::uint32_t> images) const {
      return element(std::vector<std::uint32_t>(images));
    }

    Transformation element(std::vector<std::uint32_t> images) const {
      if (images.size() != degree_) {
        throw InvalidArgument("transf: expected " + std::to_string(degree_)
                              + " images");
      }
      for (auto x : images) {
        if (x >= degree_) {
          throw InvalidArgument("transf: image out of range");
        }
      }
      return Transformation{std::move(images)};
    }

    Transformation multiply(Transformation const& f,
                            Transformation const& g) const {
      Transformation h{std::vector<std::uint32_t>(degree_)};
      for (std::size_t x = 0; x < degree_; ++x) {
        h.images[x] = g.images[f.images[x]];
      }
      return h;
    }

    Bytes serialize(Transformation const& f) const {
      Bytes out{tag};
      out.reserve(1 + width_ * degree_);
      for (auto x : f.images) {
        detail::put_be(out, x, width_);
      }
      return out;
    }

    Transformation deserialize(std::span<std::uint8_t const> bytes) const {
      detail::Reader in(bytes);
      in.expect_tag(tag);
      Transformation f;
      f.images.reserve(degree_);
      for (std::size_t i = 0; i < degree_; ++i) {
        std::size_t   at = in.offset();
        std::uint64_t x  = in.be(width_);
        if (x >= degree_) {
          in.fail("image out of range", at);
        }
        f.images.push_back(static_cast<std::uint32_t>(x));
      }
      in.finish();
      return f;
    }

    Transformation random_element(Rng& rng) const {
      std::uniform_int_distribution<std::uint32_t> dist(
          0, static_cast<std::uint32_t>(degree_ - 1));
      Transformation f{std::vector<std::uint32_t>(degree_)};
      for (auto& x : f.images) {
        x = dist(rng);
      }
      return f;
    }

    std::string descriptor() const {
      return "transf k=" + std::to_string(degree_);
    }

   private:
    std::size_t degree_;
    std::size_t width_;
  };

}  // namespace sgdlp
