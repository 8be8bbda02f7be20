#include "peernet/prefix.hpp"

#include <charconv>
#include <cstdio>

namespace peernet {

std::optional<uint32_t> Prefix::parseAddress(std::string_view text) {
  uint32_t out = 0;
  const char* p = text.data();
  const char* end = text.data() + text.size();
  for (int octet = 0; octet < 4; ++octet) {
    unsigned value = 0;
    auto [next, ec] = std::from_chars(p, end, value);
    if (ec != std::errc{} || value > 255) return std::nullopt;
    out = (out << 8) | value;
    p = next;
    if (octet < 3) {
      if (p == end || *p != '.') return std::nullopt;
      ++p;
    }
  }
  if (p != end) return std::nullopt;
  return out;
}

std::optional<Prefix> Prefix::parse(std::string_view text) {
  if (text == "*") return Prefix::any();
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto addr = parseAddress(text);
    if (!addr) return std::nullopt;
    return Prefix(*addr, 32);
  }
  auto addr = parseAddress(text.substr(0, slash));
  if (!addr) return std::nullopt;
  unsigned len = 0;
  auto lenText = text.substr(slash + 1);
  auto [next, ec] = std::from_chars(lenText.data(), lenText.data() + lenText.size(), len);
  if (ec != std::errc{} || next != lenText.data() + lenText.size() || len > 32) {
    return std::nullopt;
  }
  return Prefix(*addr, uint8_t(len));
}

std::string formatAddress(uint32_t address) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%u.%u.%u.%u", (address >> 24) & 0xff,
                (address >> 16) & 0xff, (address >> 8) & 0xff, address & 0xff);
  return buf;
}

std::string Prefix::str() const {
  if (isAny()) return "*";
  return formatAddress(bits_) + "/" + std::to_string(len_);
}

std::string Region::str() const {
  return "<" + src.str() + "," + dst.str() + ">";
}

Overlap classifyOverlap(const Region& a, const Region& b) {
  const bool srcAinB = b.src.contains(a.src);
  const bool srcBinA = a.src.contains(b.src);
  const bool dstAinB = b.dst.contains(a.dst);
  const bool dstBinA = a.dst.contains(b.dst);
  if ((!srcAinB && !srcBinA) || (!dstAinB && !dstBinA)) return Overlap::Disjoint;
  if (srcAinB && srcBinA && dstAinB && dstBinA) return Overlap::Equal;
  if (srcBinA && dstBinA) return Overlap::AContainsB;
  if (srcAinB && dstAinB) return Overlap::BContainsA;
  return Overlap::Cross;
}

std::optional<Region> intersect(const Region& a, const Region& b) {
  if (classifyOverlap(a, b) == Overlap::Disjoint) return std::nullopt;
  Region out;
  out.src = a.src.length() >= b.src.length() ? a.src : b.src;
  out.dst = a.dst.length() >= b.dst.length() ? a.dst : b.dst;
  return out;
}

const char* overlapName(Overlap o) {
  switch (o) {
    case Overlap::Disjoint: return "disjoint";
    case Overlap::Equal: return "equal";
    case Overlap::AContainsB: return "aContainsB";
    case Overlap::BContainsA: return "bContainsA";
    case Overlap::Cross: return "cross";
  }
  return "?";
}

}  // namespace peernet
