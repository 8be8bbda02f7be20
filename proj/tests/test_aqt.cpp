#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "peernet/aqt.hpp"

using namespace peernet;

namespace {

Prefix pfx(const char* s) { return *Prefix::parse(s); }
Region region(const char* src, const char* dst) { return {pfx(src), pfx(dst)}; }

// Random region generator following the evaluation setup: prefixes of
// length 0, 8, 16, 24 nested under a handful of top octets.
struct RegionGen {
  std::mt19937 rng;
  explicit RegionGen(uint32_t seed) : rng(seed) {}

  Prefix prefix() {
    static const uint8_t lens[] = {0, 8, 16, 24};
    uint8_t len = lens[rng() % 4];
    uint32_t bits = rng();
    // Keep the universe small so regions actually collide.
    bits = (bits & 0x03030300u) | 0x0a000000u;
    return Prefix(bits, len);
  }
  Region next() { return {prefix(), prefix()}; }
};

}  // namespace

TEST_CASE("aqt placement and exact lookup") {
  Aqt<int> tree;
  tree.insert(region("2.2.0.0/16", "1.1.1.0/24"), 7);
  tree.insert(region("*", "*"), 1);
  tree.insert(region("*", "1.1.1.0/24"), 2);
  CHECK(tree.size() == 3);
  CHECK(tree.checkPlacement());
  REQUIRE(tree.get(region("2.2.0.0/16", "1.1.1.0/24")));
  CHECK(*tree.get(region("2.2.0.0/16", "1.1.1.0/24")) == 7);
  CHECK(!tree.get(region("2.2.0.0/16", "1.1.0.0/16")));

  // Upsert replaces the stored value for an identical region.
  tree.insert(region("*", "*"), 11);
  CHECK(tree.size() == 3);
  CHECK(*tree.get(region("*", "*")) == 11);
}

TEST_CASE("aqt query returns overlapping filters") {
  Aqt<int> tree;
  tree.insert(region("*", "1.1.1.0/24"), 1);
  tree.insert(region("2.2.0.0/16", "1.1.1.0/24"), 2);
  auto hits = tree.query(region("*", "1.1.1.0/24"));
  CHECK(hits.size() == 2);
  CHECK(tree.query(region("9.0.0.0/8", "9.0.0.0/8")).empty());
}

TEST_CASE("aqt remove") {
  Aqt<int> tree;
  CHECK(!tree.remove(region("1.0.0.0/8", "*")));
  tree.insert(region("1.0.0.0/8", "*"), 1);
  CHECK(tree.remove(region("1.0.0.0/8", "*")));
  CHECK(!tree.remove(region("1.0.0.0/8", "*")));
  CHECK(tree.empty());
}

TEST_CASE("aqt agrees with a linear-scan shadow over random operations") {
  Aqt<int> tree;
  std::map<Region, int> shadow;
  RegionGen gen(42);
  std::mt19937 rng(7);

  auto bruteQuery = [&](const Region& probe) {
    std::set<std::pair<Region, int>> out;
    for (const auto& [r, v] : shadow) {
      if (classifyOverlap(r, probe) != Overlap::Disjoint) out.insert({r, v});
    }
    return out;
  };

  for (int i = 0; i < 4000; ++i) {
    const int op = int(rng() % 3);
    Region r = gen.next();
    if (op == 0) {
      int value = int(rng() % 1000);
      tree.insert(r, value);
      shadow[r] = value;
    } else if (op == 1) {
      bool removed = tree.remove(r);
      CHECK(removed == (shadow.erase(r) > 0));
    } else {
      auto got = tree.query(r);
      std::set<std::pair<Region, int>> gotSet(got.begin(), got.end());
      CHECK(gotSet == bruteQuery(r));
    }
    REQUIRE(tree.size() == shadow.size());
  }
  CHECK(tree.checkPlacement());
}

TEST_CASE("aqt remove does not disturb other filters") {
  Aqt<int> tree;
  std::map<Region, int> shadow;
  RegionGen gen(99);
  for (int i = 0; i < 500; ++i) {
    Region r = gen.next();
    tree.insert(r, i);
    shadow[r] = i;
  }
  std::mt19937 rng(5);
  while (!shadow.empty()) {
    auto it = shadow.begin();
    std::advance(it, rng() % shadow.size());
    REQUIRE(tree.remove(it->first));
    shadow.erase(it);
    for (const auto& [r, v] : shadow) {
      REQUIRE(tree.get(r));
      REQUIRE(*tree.get(r) == v);
    }
    if (shadow.size() > 40) {
      // Deleting one by one with full verification is quadratic; thin out.
      for (int i = 0; i < 8 && !shadow.empty(); ++i) {
        auto victim = shadow.begin();
        REQUIRE(tree.remove(victim->first));
        shadow.erase(victim);
      }
    }
  }
  CHECK(tree.empty());
}
