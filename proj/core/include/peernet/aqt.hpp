#pragma once

#include <cassert>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "peernet/prefix.hpp"

namespace peernet {

// Area-based quad tree over (source, destination) prefix pairs.
//
// A filter lives at the level of its less specific dimension: the node whose
// square matches the first min(srcLen, dstLen) bits of both prefixes.  There
// the filter exactly spans the square in the less specific dimension and is
// indexed by the remaining bits of the other one in a per-dimension binary
// trie.  Queries walk the squares that overlap the probe and, within a node,
// walk each trie along the probe's bits in the indexed dimension.
template <typename V>
class Aqt {
 public:
  using Entry = std::pair<Region, V>;

  // Upsert: inserting an identical region replaces the stored value.
  void insert(const Region& region, V value) {
    QuadNode* node = descend(region, /*create=*/true);
    const uint8_t level = node->level;
    const bool srcKeyed = region.src.length() >= region.dst.length();
    Trie& trie = srcKeyed ? node->bySrc : node->byDst;
    const Prefix& keyed = srcKeyed ? region.src : region.dst;
    TrieNode* slot = trie.walk(keyed, level, /*create=*/true);
    if (!slot->entry) ++size_;
    slot->entry.emplace(region, std::move(value));
  }

  bool remove(const Region& region) {
    QuadNode* node = descend(region, /*create=*/false);
    if (!node) return false;
    const bool srcKeyed = region.src.length() >= region.dst.length();
    Trie& trie = srcKeyed ? node->bySrc : node->byDst;
    const Prefix& keyed = srcKeyed ? region.src : region.dst;
    if (!trie.erase(keyed, node->level)) return false;
    --size_;
    prune(region);
    return true;
  }

  const V* get(const Region& region) const {
    const QuadNode* node = descendConst(region);
    if (!node) return nullptr;
    const bool srcKeyed = region.src.length() >= region.dst.length();
    const Trie& trie = srcKeyed ? node->bySrc : node->byDst;
    const Prefix& keyed = srcKeyed ? region.src : region.dst;
    const TrieNode* slot = const_cast<Trie&>(trie).walk(keyed, node->level, false);
    if (!slot || !slot->entry || slot->entry->first != region) return nullptr;
    return &slot->entry->second;
  }

  // All stored filters whose region overlaps the probe, in unspecified order.
  std::vector<Entry> query(const Region& probe) const {
    std::vector<Entry> out;
    if (root_) queryNode(*root_, probe, out);
    return out;
  }

  size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  void forEach(const std::function<void(const Region&, const V&)>& fn) const {
    if (root_) forEachNode(*root_, fn);
  }

  // Structural check used by tests: every filter sits at level
  // min(srcLen, dstLen), on the matching bit path, in the trie of its more
  // specific dimension.
  bool checkPlacement() const {
    bool ok = true;
    if (root_) checkNode(*root_, ok);
    return ok;
  }

 private:
  struct TrieNode {
    std::unique_ptr<TrieNode> child[2];
    std::optional<Entry> entry;
    bool dead() const { return !entry && !child[0] && !child[1]; }
  };

  struct Trie {
    std::unique_ptr<TrieNode> root;

    TrieNode* walk(const Prefix& keyed, uint8_t fromBit, bool create) {
      if (!root) {
        if (!create) return nullptr;
        root = std::make_unique<TrieNode>();
      }
      TrieNode* node = root.get();
      for (uint8_t i = fromBit; i < keyed.length(); ++i) {
        const int b = keyed.bit(i);
        if (!node->child[b]) {
          if (!create) return nullptr;
          node->child[b] = std::make_unique<TrieNode>();
        }
        node = node->child[b].get();
      }
      return node;
    }

    bool erase(const Prefix& keyed, uint8_t fromBit) {
      TrieNode* node = walk(keyed, fromBit, false);
      if (!node || !node->entry) return false;
      node->entry.reset();
      // Drop now-empty suffix chains.
      compact(root);
      return true;
    }

    static void compact(std::unique_ptr<TrieNode>& node) {
      if (!node) return;
      compact(node->child[0]);
      compact(node->child[1]);
      if (node->dead()) node.reset();
    }

    bool empty() const { return !root; }
  };

  struct QuadNode {
    uint8_t level = 0;
    uint32_t srcPath = 0;  // top `level` bits
    uint32_t dstPath = 0;
    std::unique_ptr<QuadNode> child[4];
    Trie bySrc;  // filters with srcLen >= dstLen, keyed by src bits past level
    Trie byDst;  // filters with dstLen > srcLen, keyed by dst bits past level

    bool dead() const {
      return bySrc.empty() && byDst.empty() && !child[0] && !child[1] &&
             !child[2] && !child[3];
    }
  };

  static int childIndex(const Region& r, uint8_t level) {
    return (r.src.bit(level) << 1) | r.dst.bit(level);
  }

  QuadNode* descend(const Region& region, bool create) {
    const uint8_t target = std::min(region.src.length(), region.dst.length());
    if (!root_) {
      if (!create) return nullptr;
      root_ = std::make_unique<QuadNode>();
    }
    QuadNode* node = root_.get();
    for (uint8_t level = 0; level < target; ++level) {
      const int idx = childIndex(region, level);
      if (!node->child[idx]) {
        if (!create) return nullptr;
        auto child = std::make_unique<QuadNode>();
        child->level = level + 1;
        child->srcPath = region.src.bits() & pathMask(level + 1);
        child->dstPath = region.dst.bits() & pathMask(level + 1);
        node->child[idx] = std::move(child);
      }
      node = node->child[idx].get();
    }
    return node;
  }

  const QuadNode* descendConst(const Region& region) const {
    return const_cast<Aqt*>(this)->descend(region, false);
  }

  static uint32_t pathMask(uint8_t level) {
    return level == 0 ? 0 : ~uint32_t{0} << (32 - level);
  }

  void prune(const Region& region) {
    prunePath(root_, region, 0);
  }

  static void prunePath(std::unique_ptr<QuadNode>& node, const Region& region,
                        uint8_t level) {
    if (!node) return;
    const uint8_t target = std::min(region.src.length(), region.dst.length());
    if (level < target) {
      prunePath(node->child[childIndex(region, level)], region, level + 1);
    }
    if (node->dead()) node.reset();
  }

  static void collectTrie(const TrieNode* node, std::vector<Entry>& out) {
    if (!node) return;
    if (node->entry) out.push_back(*node->entry);
    collectTrie(node->child[0].get(), out);
    collectTrie(node->child[1].get(), out);
  }

  // Collect filters in `trie` (keyed by `probeDim` bits past `level`) that
  // overlap the probe in the keyed dimension; the other dimension matches the
  // node square and therefore already overlaps.
  static void queryTrie(const Trie& trie, const Prefix& probeDim, uint8_t level,
                        std::vector<Entry>& out) {
    const TrieNode* node = trie.root.get();
    if (!node) return;
    if (probeDim.length() <= level) {
      collectTrie(node, out);
      return;
    }
    for (uint8_t i = level; i < probeDim.length(); ++i) {
      if (node->entry) out.push_back(*node->entry);  // filter covers probe
      node = node->child[probeDim.bit(i)].get();
      if (!node) return;
    }
    collectTrie(node, out);  // filters at or below probe
  }

  static void queryNode(const QuadNode& node, const Region& probe,
                        std::vector<Entry>& out) {
    queryTrie(node.bySrc, probe.src, node.level, out);
    queryTrie(node.byDst, probe.dst, node.level, out);
    const uint8_t level = node.level;
    if (level >= 32) return;
    const bool srcFixed = probe.src.length() > level;
    const bool dstFixed = probe.dst.length() > level;
    for (int idx = 0; idx < 4; ++idx) {
      const QuadNode* child = node.child[idx].get();
      if (!child) continue;
      if (srcFixed && ((idx >> 1) & 1) != probe.src.bit(level)) continue;
      if (dstFixed && (idx & 1) != probe.dst.bit(level)) continue;
      queryNode(*child, probe, out);
    }
  }

  static void forEachTrie(const TrieNode* node,
                          const std::function<void(const Region&, const V&)>& fn) {
    if (!node) return;
    if (node->entry) fn(node->entry->first, node->entry->second);
    forEachTrie(node->child[0].get(), fn);
    forEachTrie(node->child[1].get(), fn);
  }

  static void forEachNode(const QuadNode& node,
                          const std::function<void(const Region&, const V&)>& fn) {
    forEachTrie(node.bySrc.root.get(), fn);
    forEachTrie(node.byDst.root.get(), fn);
    for (const auto& child : node.child) {
      if (child) forEachNode(*child, fn);
    }
  }

  static void checkEntries(const QuadNode& node, const Trie& trie, bool srcKeyed,
                           bool& ok) {
    forEachTrie(trie.root.get(), [&](const Region& r, const V&) {
      const uint8_t level = std::min(r.src.length(), r.dst.length());
      if (level != node.level) ok = false;
      if ((r.src.bits() & pathMask(node.level)) != node.srcPath) ok = false;
      if ((r.dst.bits() & pathMask(node.level)) != node.dstPath) ok = false;
      const bool expectSrc = r.src.length() >= r.dst.length();
      if (expectSrc != srcKeyed) ok = false;
    });
  }

  static void checkNode(const QuadNode& node, bool& ok) {
    checkEntries(node, node.bySrc, true, ok);
    checkEntries(node, node.byDst, false, ok);
    for (const auto& child : node.child) {
      if (child) checkNode(*child, ok);
    }
  }

  std::unique_ptr<QuadNode> root_;
  size_t size_ = 0;
};

}  // namespace peernet
