#pragma once

#include <span>
#include <string>
#include <vector>

#include "peernet/engine.hpp"
#include "peernet/route.hpp"

namespace peernet {
namespace guards {

struct Verdict {
  enum class Reason {
    None,
    MissingOwnership,
    BrokenChain,
    NonCompliantHop,
    ConnectivityDenied,
    ExpiredCertificate,
    StitchDenied,
    EngineError,
  };

  bool allowed = false;
  Reason reason = Reason::None;
  std::string detail;

  static Verdict ok() { return {true, Reason::None, ""}; }
  static Verdict deny(Reason reason, std::string detail = "") {
    return {false, reason, std::move(detail)};
  }
  explicit operator bool() const { return allowed; }
};

const char* reasonName(Verdict::Reason reason);

// Origin authentication: some trust root allocates the prefix to the holder,
// directly or through a containment-checked delegation chain in ctx.
Verdict checkOwnPrefix(const logic::Context& ctx, const Pid& holder, Prefix prefix,
                       std::span<const Pid> trustRoots);

// Route validation over the advertisement chain in ctx: the path was signed
// hop by hop down to an origin that owns the destination prefix.
Verdict checkAuthorizedRoute(const logic::Context& ctx, const Pid& owner,
                             Prefix dstPrefix, std::span<const Pid> path,
                             const Pid& target, std::span<const Pid> trustRoots);

// Path control: every pid on the path wields at least one ACL tag of every
// supplied policy. The empty path (zero-hop self delivery) is allowed.
Verdict checkCompliantPath(const logic::Context& ctx,
                           std::span<const Policy> policies,
                           std::span<const Pid> path);

// Whether one principal satisfies a single policy's ACL; used for export
// filtering and ingress whitelists.
bool pidSatisfiesAcl(const logic::Context& ctx, const Policy& policy, const Pid& pid);

// Mutual consent: dst's connectivity policy admits src and src's admits dst.
Verdict checkConnectivity(const logic::Context& ctx, const Pid& srcSubnet,
                          const Pid& dstSubnet);

// Stitch authorization: ACL membership plus the one-time passcode.
Verdict authorizeStitch(const Pid& requester, const std::string& secret,
                        std::span<const Pid> acl, const std::string& expectedSecret);

}  // namespace guards
}  // namespace peernet
