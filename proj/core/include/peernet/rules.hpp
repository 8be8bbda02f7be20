#pragma once

#include <span>
#include <vector>

#include "peernet/crypto.hpp"
#include "peernet/logic.hpp"

namespace peernet {
namespace rules {

// Prefix ownership: a principal holds a prefix if a trust root allocates it,
// or an upstream holder allocates it with containment at every step. One
// base rule is instantiated per accepted trust root. `ownsCovering` extends
// the check to any prefix inside an owned one.
std::vector<logic::Statement> ownership(std::span<const Pid> trustRoots);

// Route validation over a signed advertisement chain: the origin advertises
// its own singleton path and owns the prefix; every later hop advertises the
// extended path and links the predecessor's advertisement.
const std::vector<logic::Statement>& routeValidation();

// Path control compliance. Every hop must be authorized by the policy
// owner's tag ACL (disjunctive; `any` admits every principal); tag
// endorsements are valid only when grounded at the tag's root, which is the
// head of the self-certifying tag term.
const std::vector<logic::Statement>& compliance();

// Connectivity policy: a subnet admits a peer listed by pid or wielding an
// allowed tag.
const std::vector<logic::Statement>& connectivity();

}  // namespace rules
}  // namespace peernet
