#include "peernet/route.hpp"

#include <algorithm>

namespace peernet {

const char* policyKindName(PolicyKind kind) {
  return kind == PolicyKind::Inbound ? "inbound" : "outbound";
}

std::optional<Tag> Tag::fromTerm(const logic::Term& t) {
  const auto* list = t.asList();
  if (!list || list->items.size() != 2 || list->tail) return std::nullopt;
  const auto* root = list->items[0].asPid();
  const auto* name = list->items[1].asSymbol();
  if (!root || !name) return std::nullopt;
  return Tag{*root, name->name};
}

Policy Policy::implicitOutbound(const Pid& self) {
  Policy p;
  p.kind = PolicyKind::Outbound;
  p.region = {Prefix::any(), Prefix::any()};
  p.acl = {TagRef::any()};
  p.owner = self;
  return p;
}

Policy Policy::implicitInbound(const Pid& owner, Prefix dstPrefix) {
  Policy p;
  p.kind = PolicyKind::Inbound;
  p.region = {Prefix::any(), dstPrefix};
  p.acl = {TagRef::any()};
  p.owner = owner;
  return p;
}

std::optional<Policy> Policy::fromCertificate(const Certificate& cert,
                                              const Token& token) {
  Policy p;
  p.certToken = token;
  p.owner = cert.issuer;
  bool haveKind = false;
  bool haveRegion = false;
  for (const auto& st : cert.payload) {
    if (!st.isFact()) continue;
    if (st.head.pred == "policyKind" && st.head.args.size() == 1) {
      const auto* sym = st.head.args[0].asSymbol();
      if (!sym) return std::nullopt;
      if (sym->name == "inbound") {
        p.kind = PolicyKind::Inbound;
      } else if (sym->name == "outbound") {
        p.kind = PolicyKind::Outbound;
      } else {
        return std::nullopt;
      }
      haveKind = true;
    } else if (st.head.pred == "nspTagAclEntry" && st.head.args.size() == 3) {
      const auto* src = st.head.args[0].asPrefix();
      const auto* dst = st.head.args[1].asPrefix();
      if (!src || !dst) return std::nullopt;
      Region region{*src, *dst};
      if (haveRegion && !(region == p.region)) return std::nullopt;
      p.region = region;
      haveRegion = true;
      const auto& tagTerm = st.head.args[2];
      if (const auto* sym = tagTerm.asSymbol(); sym && sym->name == "any") {
        p.acl.push_back(TagRef::any());
      } else if (auto tag = Tag::fromTerm(tagTerm)) {
        p.acl.push_back(TagRef::of(*tag));
      } else {
        return std::nullopt;
      }
    }
  }
  if (!haveKind || !haveRegion || p.acl.empty()) return std::nullopt;
  return p;
}

logic::Term Route::pathTerm() const {
  std::vector<logic::Term> items;
  items.reserve(path.size());
  for (const auto& pid : path) items.emplace_back(pid);
  return logic::Term::list(std::move(items));
}

bool Route::hasLoopThrough(const Pid& pid) const {
  return std::find(path.begin(), path.end(), pid) != path.end();
}

bool preferRoute(const Route& a, const Route& b) {
  if (a.path.size() != b.path.size()) return a.path.size() < b.path.size();
  return std::lexicographical_compare(a.path.begin(), a.path.end(), b.path.begin(),
                                      b.path.end());
}

bool preferRoute(const Route& a, const Route* b) {
  return b == nullptr || preferRoute(a, *b);
}

}  // namespace peernet
