#pragma once

#include <optional>
#include <string>
#include <vector>

#include "peernet/cert.hpp"
#include "peernet/route.hpp"

namespace peernet {
namespace governance {

// Issuer operations. Each builds one signed certificate and posts it to the
// store; chains are rejected lazily by the guards, not at issuance.

// allocate(holder, prefix), linked to the issuer's own ownership evidence.
Token delegatePrefix(CertStore& store, const Principal& issuer, const Pid& holder,
                     Prefix prefix, std::optional<Token> parent = std::nullopt,
                     uint64_t now = 0);

// tagAccess(tag, subject), optionally linked to the endorsement that makes
// the issuer a valid delegate for the tag.
Token endorseTag(CertStore& store, const Principal& issuer, const Pid& subject,
                 const Tag& tag, std::optional<Token> parent = std::nullopt,
                 uint64_t now = 0);

// Labeled "tags" set for a principal: an empty-payload certificate linking
// the endorsements the principal presents along its route advertisements.
Token publishTagSet(CertStore& store, const Principal& subject,
                    std::vector<Token> endorsements, uint64_t now = 0);

// Origin advertisement advertise(dst, [owner], target) linking the ownership
// chain, the attached inbound policy certificates, and the owner's tag set.
Token originateRoute(CertStore& store, const Principal& owner, Prefix dstPrefix,
                     const Pid& target, const Token& ipCert,
                     const std::vector<Token>& policyTokens, uint64_t now = 0);

// Hop advertisement advertise(dst, [nsp | prevPath], target) linking the
// predecessor advertisement and the nsp's tag set. newPath must start with
// the signer.
Token signRouteHop(CertStore& store, const Principal& nsp, Prefix dstPrefix,
                   const std::vector<Pid>& newPath, const Pid& target,
                   const Token& prevToken, uint64_t now = 0);

// Path-control policy: one nspTagAclEntry(src, dst, tag) per ACL tag
// (disjunctive) plus a kind marker, labeled "nsp-tag-acl", linked to the
// owner's ownership evidence when supplied. Throws on an empty ACL.
Token issuePathPolicy(CertStore& store, const Principal& owner, PolicyKind kind,
                      Prefix src, Prefix dst, const std::vector<TagRef>& tags,
                      std::optional<Token> ipCert = std::nullopt, uint64_t now = 0);

// Connectivity ACL for a subnet, labeled "conn-policy".
Token issueConnectivityPolicy(CertStore& store, const Principal& owner,
                              const std::vector<Tag>& allowTags,
                              const std::vector<Pid>& allowPids, uint64_t now = 0);

constexpr const char* kTagSetLabel = "tags";
constexpr const char* kPathPolicyLabel = "nsp-tag-acl";
constexpr const char* kConnPolicyLabel = "conn-policy";

}  // namespace governance
}  // namespace peernet
