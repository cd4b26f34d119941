#pragma once

// The concrete platforms and the text format that names them.

#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sgdlp/core.hpp"
#include "sgdlp/platforms/int_matrix.hpp"
#include "sgdlp/platforms/matrix_mod.hpp"
#include "sgdlp/platforms/residue_mul.hpp"
#include "sgdlp/platforms/transformation.hpp"

namespace sgdlp {

  using AnyPlatform = std::variant<ResidueMulPlatform,
                                   MatrixModPlatform,
                                   TransformationPlatform,
                                   IntMatrixPlatform>;

  namespace detail {
    inline std::vector<std::string> split_ws(std::string_view line) {
      std::vector<std::string> out;
      std::istringstream       in{std::string(line)};
      std::string              word;
      while (in >> word) {
        out.push_back(word);
      }
      return out;
    }

    template <typename Int>
    Int parse_int(std::string const& key, std::string const& text, std::size_t line) {
      Int  v{};
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError("line " + std::to_string(line) + ": bad value for "
                             + key + ": '" + text + "'",
                         line);
      }
      return v;
    }
  }  // namespace detail

  //! Parses `<tag> key=value ...`, e.g. `zmul m=12`, `matmod m=5 d=3`,
  //! `transf k=6`, `intmat d=2`. `line` only labels errors.
  inline AnyPlatform parse_platform(std::string_view spec, std::size_t line = 1) {
    auto words = detail::split_ws(spec);
    if (words.empty()) {
      throw ParseError("line " + std::to_string(line) + ": missing platform tag",
                       line);
    }
    std::map<std::string, std::string> params;
    for (std::size_t i = 1; i < words.size(); ++i) {
      auto eq = words[i].find('=');
      if (eq == std::string::npos || eq == 0) {
        throw ParseError("line " + std::to_string(line)
                             + ": expected key=value, got '" + words[i] + "'",
                         line);
      }
      params[words[i].substr(0, eq)] = words[i].substr(eq + 1);
    }
    auto take = [&](std::string const& key) -> std::optional<std::string> {
      auto it = params.find(key);
      if (it == params.end()) {
        return std::nullopt;
      }
      std::string v = it->second;
      params.erase(it);
      return v;
    };
    auto required = [&](std::string const& key) {
      auto v = take(key);
      if (!v) {
        throw ParseError("line " + std::to_string(line) + ": platform '"
                             + words[0] + "' needs " + key + "=",
                         line);
      }
      return *v;
    };

    auto build = [&]() -> AnyPlatform {
      try {
        std::string const& tag = words[0];
        if (tag == "zmul") {
          return ResidueMulPlatform(
              detail::parse_int<std::uint64_t>("m", required("m"), line));
        } else if (tag == "matmod") {
          auto m = detail::parse_int<std::uint64_t>("m", required("m"), line);
          auto d = detail::parse_int<std::size_t>("d", required("d"), line);
          return MatrixModPlatform(m, d);
        } else if (tag == "transf") {
          return TransformationPlatform(
              detail::parse_int<std::size_t>("k", required("k"), line));
        } else if (tag == "intmat") {
          auto d  = detail::parse_int<std::size_t>("d", required("d"), line);
          auto lo = take("lo");
          auto hi = take("hi");
          return IntMatrixPlatform(
              d,
              lo ? detail::parse_int<std::int64_t>("lo", *lo, line)
                 : IntMatrixPlatform::default_low,
              hi ? detail::parse_int<std::int64_t>("hi", *hi, line)
                 : IntMatrixPlatform::default_high);
        }
      } catch (InvalidArgument const& e) {
        throw ParseError("line " + std::to_string(line) + ": " + e.what(), line);
      }
      throw ParseError("line " + std::to_string(line) + ": unknown platform '"
                           + words[0] + "'",
                       line);
    };
    AnyPlatform p = build();
    if (!params.empty()) {
      throw ParseError("line " + std::to_string(line) + ": unknown parameter '"
                           + params.begin()->first + "'",
                       line);
    }
    return p;
  }

  inline std::string descriptor(AnyPlatform const& p) {
    return std::visit([](auto const& q) { return q.descriptor(); }, p);
  }

  //! A platform, a base element and an optional challenge, each element held
  //! as its canonical bytes.
  //!
  //!     # comment
  //!     platform zmul m=24
  //!     g 0102
  //!     h 0108
  struct InstanceDocument {
    AnyPlatform          platform;
    Bytes                g;
    std::optional<Bytes> h;
  };

  inline InstanceDocument parse_instance(std::string_view text) {
    std::optional<AnyPlatform> platform;
    std::optional<Bytes>       g;
    std::optional<Bytes>       h;
    std::size_t                line_no = 0;
    std::istringstream         in{std::string(text)};
    std::string                line;

    auto element = [&](std::string const& hex, char which) {
      Bytes bytes;
      try {
        bytes = from_hex(hex);
      } catch (ParseError const& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what(),
                         line_no);
      }
      try {
        // validates the payload against the platform
        std::visit([&](auto const& p) { (void) p.deserialize(bytes); }, *platform);
      } catch (ParseError const& e) {
        throw ParseError("line " + std::to_string(line_no) + ": element " + which
                             + ": " + e.what(),
                         line_no);
      }
      return bytes;
    };

    while (std::getline(in, line)) {
      ++line_no;
      auto words = detail::split_ws(line);
      if (words.empty() || words[0].front() == '#') {
        continue;
      }
      if (!platform) {
        if (words[0] != "platform") {
          throw ParseError("line " + std::to_string(line_no)
                               + ": expected 'platform <tag> <params>'",
                           line_no);
        }
        platform = parse_platform(std::string_view(line).substr(line.find("platform") + 8),
                                  line_no);
      } else if (words[0] == "g" && !g && words.size() == 2) {
        g = element(words[1], 'g');
      } else if (words[0] == "h" && g && !h && words.size() == 2) {
        h = element(words[1], 'h');
      } else {
        throw ParseError("line " + std::to_string(line_no) + ": unexpected '"
                             + line + "'",
                         line_no);
      }
    }
    if (!platform) {
      throw ParseError("missing platform line", line_no);
    }
    if (!g) {
      throw ParseError("missing 'g <hex>' line", line_no);
    }
    return InstanceDocument{std::move(*platform), std::move(*g), std::move(h)};
  }

  inline std::string format_instance(InstanceDocument const& doc) {
    std::string out = "platform " + descriptor(doc.platform) + "\n";
    out += "g " + to_hex(doc.g) + "\n";
    if (doc.h) {
      out += "h " + to_hex(*doc.h) + "\n";
    }
    return out;
  }

}  // namespace sgdlp
