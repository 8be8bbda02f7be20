#include "peernet/issuers.hpp"

#include <stdexcept>

namespace peernet {
namespace governance {

using logic::Statement;
using logic::Term;

namespace {

Statement fact(const std::string& pred, std::vector<Term> args) {
  Statement st;
  st.head.pred = pred;
  st.head.args = std::move(args);
  return st;
}

}  // namespace

Token delegatePrefix(CertStore& store, const Principal& issuer, const Pid& holder,
                     Prefix prefix, std::optional<Token> parent, uint64_t now) {
  std::vector<Token> links;
  if (parent) links.push_back(*parent);
  auto [cert, token] = issueCertificate(
      store, issuer, {fact("allocate", {Term(holder), Term(prefix)})}, std::move(links),
      "", 0, now);
  return token;
}

Token endorseTag(CertStore& store, const Principal& issuer, const Pid& subject,
                 const Tag& tag, std::optional<Token> parent, uint64_t now) {
  std::vector<Token> links;
  if (parent) links.push_back(*parent);
  auto [cert, token] = issueCertificate(
      store, issuer, {fact("tagAccess", {tag.term(), Term(subject)})},
      std::move(links), "", 0, now);
  return token;
}

Token publishTagSet(CertStore& store, const Principal& subject,
                    std::vector<Token> endorsements, uint64_t now) {
  auto [cert, token] = issueCertificate(store, subject, {}, std::move(endorsements),
                                        kTagSetLabel, 0, now);
  return token;
}

Token originateRoute(CertStore& store, const Principal& owner, Prefix dstPrefix,
                     const Pid& target, const Token& ipCert,
                     const std::vector<Token>& policyTokens, uint64_t now) {
  std::vector<Token> links{ipCert};
  for (const auto& t : policyTokens) links.push_back(t);
  if (auto tags = store.lookupLabel(owner.pid, kTagSetLabel)) {
    links.push_back(*tags);
  }
  Term path = Term::list({Term(owner.pid)});
  auto [cert, token] = issueCertificate(
      store, owner,
      {fact("advertise", {Term(dstPrefix), std::move(path), Term(target)})},
      std::move(links), "", 0, now);
  return token;
}

Token signRouteHop(CertStore& store, const Principal& nsp, Prefix dstPrefix,
                   const std::vector<Pid>& newPath, const Pid& target,
                   const Token& prevToken, uint64_t now) {
  if (newPath.empty() || !(newPath.front() == nsp.pid)) {
    throw std::invalid_argument("route hop must be signed by the path head");
  }
  std::vector<Token> links{prevToken};
  if (auto tags = store.lookupLabel(nsp.pid, kTagSetLabel)) {
    links.push_back(*tags);
  }
  std::vector<Term> items;
  items.reserve(newPath.size());
  for (const auto& pid : newPath) items.emplace_back(pid);
  auto [cert, token] = issueCertificate(
      store, nsp,
      {fact("advertise",
            {Term(dstPrefix), Term::list(std::move(items)), Term(target)})},
      std::move(links), "", 0, now);
  return token;
}

Token issuePathPolicy(CertStore& store, const Principal& owner, PolicyKind kind,
                      Prefix src, Prefix dst, const std::vector<TagRef>& tags,
                      std::optional<Token> ipCert, uint64_t now) {
  if (tags.empty()) {
    throw std::invalid_argument("path policy needs at least one tag or the wildcard");
  }
  std::vector<Statement> payload;
  payload.push_back(fact("policyKind", {Term::sym(policyKindName(kind))}));
  for (const auto& tag : tags) {
    payload.push_back(fact("nspTagAclEntry", {Term(src), Term(dst), tag.term()}));
  }
  std::vector<Token> links;
  if (ipCert) links.push_back(*ipCert);
  auto [cert, token] = issueCertificate(store, owner, std::move(payload),
                                        std::move(links), kPathPolicyLabel, 0, now);
  return token;
}

Token issueConnectivityPolicy(CertStore& store, const Principal& owner,
                              const std::vector<Tag>& allowTags,
                              const std::vector<Pid>& allowPids, uint64_t now) {
  std::vector<Statement> payload;
  for (const auto& tag : allowTags) {
    payload.push_back(fact("connAllowTag", {tag.term()}));
  }
  for (const auto& pid : allowPids) {
    payload.push_back(fact("connAllowPid", {Term(pid)}));
  }
  auto [cert, token] = issueCertificate(store, owner, std::move(payload), {},
                                        kConnPolicyLabel, 0, now);
  return token;
}

}  // namespace governance
}  // namespace peernet
