#include "doctest.h"
#include "peernet/prefix.hpp"

using namespace peernet;

namespace {
Prefix pfx(const char* s) {
  auto p = Prefix::parse(s);
  REQUIRE(p.has_value());
  return *p;
}
Region region(const char* src, const char* dst) { return {pfx(src), pfx(dst)}; }
}  // namespace

TEST_CASE("prefix parse and format round trip") {
  CHECK(pfx("192.168.0.0/16").str() == "192.168.0.0/16");
  CHECK(pfx("*").isAny());
  CHECK(pfx("10.1.2.3").length() == 32);
  CHECK(!Prefix::parse("10.1.2/8"));
  CHECK(!Prefix::parse("10.0.0.0/33"));
  CHECK(!Prefix::parse("256.0.0.0/8"));
  // Host bits are masked off.
  CHECK(Prefix(0xc0a80a05, 24).str() == "192.168.10.0/24");
}

TEST_CASE("containment is inclusive") {
  CHECK(pfx("192.168.0.0/16").contains(pfx("192.168.10.0/24")));
  CHECK(!pfx("192.168.0.0/16").contains(pfx("10.0.0.0/8")));
  CHECK(pfx("10.0.0.0/8").contains(pfx("10.0.0.0/8")));
  CHECK(pfx("*").contains(pfx("1.2.3.4")));
  CHECK(!pfx("192.168.10.0/24").contains(pfx("192.168.0.0/16")));
}

TEST_CASE("overlap taxonomy") {
  // Both regions appear in the worked controller example.
  CHECK(classifyOverlap(region("*", "1.1.1.0/24"), region("2.2.0.0/16", "1.1.1.0/24")) ==
        Overlap::AContainsB);
  CHECK(classifyOverlap(region("1.0.0.0/8", "2.2.0.0/16"),
                        region("1.1.0.0/16", "2.0.0.0/8")) == Overlap::Cross);
  CHECK(classifyOverlap(region("1.0.0.0/8", "2.0.0.0/8"),
                        region("1.0.0.0/8", "2.0.0.0/8")) == Overlap::Equal);
  CHECK(classifyOverlap(region("1.0.0.0/8", "2.0.0.0/8"),
                        region("3.0.0.0/8", "2.0.0.0/8")) == Overlap::Disjoint);
  CHECK(classifyOverlap(region("2.2.0.0/16", "1.1.1.0/24"), region("*", "1.1.1.0/24")) ==
        Overlap::BContainsA);
}

TEST_CASE("intersection clips to the more specific prefix per dimension") {
  auto r = intersect(region("2.2.0.0/16", "*"), region("*", "1.1.1.0/24"));
  REQUIRE(r.has_value());
  CHECK(r->str() == "<2.2.0.0/16,1.1.1.0/24>");
  CHECK(r->specificity() == 40);
  CHECK(!intersect(region("1.0.0.0/8", "*"), region("2.0.0.0/8", "*")));
}
