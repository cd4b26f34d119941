#pragma once

// Big-endian field helpers shared by the platform serializers.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "sgdlp/core.hpp"

namespace sgdlp::detail {

  //! Bytes needed to write every value in [0, max_value], at least 1.
  constexpr std::size_t width_for(std::uint64_t max_value) noexcept {
    std::size_t w = 1;
    while (w < 8 && (max_value >> (8 * w)) != 0) {
      ++w;
    }
    return w;
  }

  inline void put_be(Bytes& out, std::uint64_t value, std::size_t width) {
    for (std::size_t i = width; i-- > 0;) {
      out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
    }
  }

  //! Sequential reader that reports the offset of whatever it rejects.
  class Reader {
   public:
    explicit Reader(std::span<std::uint8_t const> bytes) : bytes_(bytes) {}

    std::size_t offset() const noexcept {
      return pos_;
    }

    std::size_t remaining() const noexcept {
      return bytes_.size() - pos_;
    }

    void expect_tag(std::uint8_t tag) {
      std::uint8_t got = byte();
      if (got != tag) {
        fail("platform tag mismatch: expected " + std::to_string(tag)
                 + ", got " + std::to_string(got),
             0);
      }
    }

    std::uint8_t byte() {
      need(1);
      return bytes_[pos_++];
    }

    std::uint64_t be(std::size_t width) {
      need(width);
      std::uint64_t v = 0;
      for (std::size_t i = 0; i < width; ++i) {
        v = (v << 8) | bytes_[pos_++];
      }
      return v;
    }

    std::span<std::uint8_t const> take(std::size_t n) {
      need(n);
      auto s = bytes_.subspan(pos_, n);
      pos_ += n;
      return s;
    }

    void finish() const {
      if (pos_ != bytes_.size()) {
        fail("trailing bytes after element", pos_);
      }
    }

    [[noreturn]] void fail(std::string const& what, std::size_t at) const {
      throw ParseError(what + " (offset " + std::to_string(at) + ")", at);
    }

   private:
    void need(std::size_t n) const {
      if (remaining() < n) {
        fail("truncated payload", bytes_.size());
      }
    }

    std::span<std::uint8_t const> bytes_;
    std::size_t                   pos_ = 0;
  };

}  // namespace sgdlp::detail
