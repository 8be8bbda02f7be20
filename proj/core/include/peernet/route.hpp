#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "peernet/cert.hpp"
#include "peernet/crypto.hpp"
#include "peernet/logic.hpp"
#include "peernet/prefix.hpp"

namespace peernet {

// Self-certifying attribute: identity is (controlling root, name).
struct Tag {
  Pid root;
  std::string name;

  friend auto operator<=>(const Tag&, const Tag&) = default;
  logic::Term term() const {
    return logic::Term::list({logic::Term(root), logic::Term::sym(name)});
  }
  static std::optional<Tag> fromTerm(const logic::Term& t);
};

// ACL element: a concrete tag or the reserved wildcard that matches every
// principal.
struct TagRef {
  std::optional<Tag> tag;  // nullopt = any

  bool isAny() const { return !tag.has_value(); }
  static TagRef any() { return TagRef{}; }
  static TagRef of(Tag t) { return TagRef{std::move(t)}; }
  logic::Term term() const {
    return tag ? tag->term() : logic::Term::sym("any");
  }
  friend auto operator<=>(const TagRef&, const TagRef&) = default;
};

enum class PolicyKind { Inbound, Outbound };

const char* policyKindName(PolicyKind kind);

// Path-control rule: region scope plus a disjunctive tag ACL.
struct Policy {
  PolicyKind kind;
  Region region;
  std::vector<TagRef> acl;
  Token certToken;  // zero for the implicit defaults
  Pid owner;

  bool isDefault() const { return certToken.isZero(); }
  bool anyOnly() const {
    for (const auto& t : acl) {
      if (t.isAny()) return true;
    }
    return false;
  }

  static Policy implicitOutbound(const Pid& self);
  static Policy implicitInbound(const Pid& owner, Prefix dstPrefix);
  // Parses a path-policy certificate (kind marker + ACL entries sharing one
  // region). Returns nothing when the payload is not a well-formed policy.
  static std::optional<Policy> fromCertificate(const Certificate& cert,
                                               const Token& token);
};

struct PolicyPair {
  std::shared_ptr<const Policy> outbound;
  std::shared_ptr<const Policy> inbound;
};

// A validated advertisement: head of `path` is the advertising neighbor the
// route was learned from, the last element is the origin owner.
struct Route {
  Prefix dstPrefix;
  std::vector<Pid> path;
  Token certToken;
  std::vector<Token> inboundPolicyTokens;
  Pid learnedFrom;

  const Pid& origin() const { return path.back(); }
  logic::Term pathTerm() const;
  bool hasLoopThrough(const Pid& pid) const;
};

// Strict preference order: shorter paths win, equal lengths are ordered by
// the lexicographic pid sequence so selection is deterministic.
bool preferRoute(const Route& a, const Route& b);
// a preferred over (possibly absent) b.
bool preferRoute(const Route& a, const Route* b);

}  // namespace peernet
