#include "peernet/guards.hpp"

#include <algorithm>

#include "peernet/rules.hpp"

namespace peernet {
namespace guards {

using logic::Literal;
using logic::Term;

namespace {

Literal goal(const std::string& pred, std::vector<Term> args) {
  Literal lit;
  lit.atom.pred = pred;
  lit.atom.args = std::move(args);
  return lit;
}

// Guard queries run over certificate-supplied statements; a crafted context
// could drive the engine into its depth bound, which we treat as a denial.
template <typename Fn>
Verdict guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const logic::DepthLimitExceeded& e) {
    return Verdict::deny(Verdict::Reason::EngineError, e.what());
  } catch (const logic::BuiltinError& e) {
    return Verdict::deny(Verdict::Reason::EngineError, e.what());
  }
}

}  // namespace

const char* reasonName(Verdict::Reason reason) {
  switch (reason) {
    case Verdict::Reason::None: return "none";
    case Verdict::Reason::MissingOwnership: return "missing ownership";
    case Verdict::Reason::BrokenChain: return "broken chain";
    case Verdict::Reason::NonCompliantHop: return "non-compliant hop";
    case Verdict::Reason::ConnectivityDenied: return "connectivity denied";
    case Verdict::Reason::ExpiredCertificate: return "expired certificate";
    case Verdict::Reason::StitchDenied: return "stitch denied";
    case Verdict::Reason::EngineError: return "engine error";
  }
  return "?";
}

Verdict checkOwnPrefix(const logic::Context& ctx, const Pid& holder, Prefix prefix,
                       std::span<const Pid> trustRoots) {
  return guarded([&] {
    const auto pkg = rules::ownership(trustRoots);
    if (logic::queryHolds(ctx, goal("ownPrefix", {Term(holder), Term(prefix)}), pkg)) {
      return Verdict::ok();
    }
    return Verdict::deny(Verdict::Reason::MissingOwnership,
                         "no delegation chain from a trust root for " + prefix.str());
  });
}

Verdict checkAuthorizedRoute(const logic::Context& ctx, const Pid& owner,
                             Prefix dstPrefix, std::span<const Pid> path,
                             const Pid& target, std::span<const Pid> trustRoots) {
  return guarded([&] {
    std::vector<logic::Statement> pkg = rules::ownership(trustRoots);
    for (const auto& st : rules::routeValidation()) pkg.push_back(st);
    std::vector<Term> items;
    for (const auto& pid : path) items.emplace_back(pid);
    Literal g = goal("authorizedRoute", {Term(owner), Term(dstPrefix),
                                         Term::list(std::move(items)), Term(target)});
    if (logic::queryHolds(ctx, g, pkg)) return Verdict::ok();
    // Distinguish a bad origin from a broken hop chain for diagnostics.
    Verdict own = checkOwnPrefix(ctx, owner, dstPrefix, trustRoots);
    if (!own.allowed) return own;
    return Verdict::deny(Verdict::Reason::BrokenChain,
                         "advertisement chain does not validate end-to-end");
  });
}

Verdict checkCompliantPath(const logic::Context& ctx,
                           std::span<const Policy> policies,
                           std::span<const Pid> path) {
  if (path.empty()) return Verdict::ok();
  return guarded([&] {
    for (const Policy& policy : policies) {
      if (policy.anyOnly()) continue;
      std::vector<Term> items;
      for (const auto& pid : path) items.emplace_back(pid);
      Literal g = goal("compliantPath",
                       {Term(policy.owner), Term(policy.region.src),
                        Term(policy.region.dst), Term::list(std::move(items))});
      if (logic::queryHolds(ctx, g, rules::compliance())) continue;
      // Name the first hop that fails the ACL.
      for (const auto& pid : path) {
        if (!pidSatisfiesAcl(ctx, policy, pid)) {
          return Verdict::deny(Verdict::Reason::NonCompliantHop,
                               "hop " + pid.shortHex() + " fails " +
                                   policyKindName(policy.kind) + " policy " +
                                   policy.region.str());
        }
      }
      return Verdict::deny(Verdict::Reason::NonCompliantHop,
                           "path fails policy " + policy.region.str());
    }
    return Verdict::ok();
  });
}

bool pidSatisfiesAcl(const logic::Context& ctx, const Policy& policy, const Pid& pid) {
  if (policy.anyOnly()) return true;
  Literal g = goal("authorizedAS", {Term(policy.owner), Term(policy.region.src),
                                    Term(policy.region.dst), Term(pid)});
  try {
    return logic::queryHolds(ctx, g, rules::compliance());
  } catch (const logic::DepthLimitExceeded&) {
    return false;
  } catch (const logic::BuiltinError&) {
    return false;
  }
}

Verdict checkConnectivity(const logic::Context& ctx, const Pid& srcSubnet,
                          const Pid& dstSubnet) {
  return guarded([&] {
    const auto& pkg = rules::connectivity();
    const bool dstAdmits =
        logic::queryHolds(ctx, goal("connAdmit", {Term(dstSubnet), Term(srcSubnet)}), pkg);
    const bool srcAdmits =
        logic::queryHolds(ctx, goal("connAdmit", {Term(srcSubnet), Term(dstSubnet)}), pkg);
    if (dstAdmits && srcAdmits) return Verdict::ok();
    return Verdict::deny(Verdict::Reason::ConnectivityDenied,
                         dstAdmits ? "source subnet does not admit the destination"
                                   : "destination subnet does not admit the source");
  });
}

Verdict authorizeStitch(const Pid& requester, const std::string& secret,
                        std::span<const Pid> acl, const std::string& expectedSecret) {
  if (secret != expectedSecret) {
    return Verdict::deny(Verdict::Reason::StitchDenied, "passcode mismatch");
  }
  if (std::find(acl.begin(), acl.end(), requester) == acl.end()) {
    return Verdict::deny(Verdict::Reason::StitchDenied, "requester not on the ACL");
  }
  return Verdict::ok();
}

}  // namespace guards
}  // namespace peernet
