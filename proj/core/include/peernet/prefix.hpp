#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace peernet {

// IPv4 prefix in host byte order. Host bits below the mask are kept at zero.
class Prefix {
 public:
  constexpr Prefix() = default;
  constexpr Prefix(uint32_t bits, uint8_t len)
      : bits_(len == 0 ? 0 : (bits & maskFor(len))), len_(len) {}

  static constexpr Prefix any() { return Prefix(0, 0); }
  static std::optional<Prefix> parse(std::string_view text);
  static std::optional<uint32_t> parseAddress(std::string_view text);

  constexpr uint32_t bits() const { return bits_; }
  constexpr uint8_t length() const { return len_; }
  constexpr bool isAny() const { return len_ == 0; }

  // Inclusive containment: p.contains(p) is true.
  constexpr bool contains(const Prefix& other) const {
    return len_ <= other.len_ && (len_ == 0 || (other.bits_ & maskFor(len_)) == bits_);
  }
  constexpr bool contains(uint32_t address) const {
    return len_ == 0 || (address & maskFor(len_)) == bits_;
  }
  constexpr bool bit(uint8_t index) const { return (bits_ >> (31 - index)) & 1u; }

  std::string str() const;

  friend constexpr auto operator<=>(const Prefix&, const Prefix&) = default;

 private:
  static constexpr uint32_t maskFor(uint8_t len) {
    return len == 0 ? 0 : ~uint32_t{0} << (32 - len);
  }

  uint32_t bits_ = 0;
  uint8_t len_ = 0;
};

std::string formatAddress(uint32_t address);

// A (source prefix, destination prefix) rectangle in the 2-D address space.
struct Region {
  Prefix src;
  Prefix dst;

  // Number of fixed bits; higher means a smaller, higher-priority region.
  int specificity() const { return int(src.length()) + int(dst.length()); }
  bool contains(const Region& other) const {
    return src.contains(other.src) && dst.contains(other.dst);
  }
  bool containsPoint(uint32_t srcAddr, uint32_t dstAddr) const {
    return src.contains(srcAddr) && dst.contains(dstAddr);
  }
  std::string str() const;

  friend constexpr auto operator<=>(const Region&, const Region&) = default;
};

enum class Overlap { Disjoint, Equal, AContainsB, BContainsA, Cross };

// Figure-style taxonomy for two prefix pairs: in each dimension the prefixes
// either nest or are disjoint, so two regions are disjoint, equal, nested, or
// cross (each more specific in one dimension).
Overlap classifyOverlap(const Region& a, const Region& b);

std::optional<Region> intersect(const Region& a, const Region& b);

const char* overlapName(Overlap o);

}  // namespace peernet
