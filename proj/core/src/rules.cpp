#include "peernet/rules.hpp"

namespace peernet {
namespace rules {

using logic::Literal;
using logic::Statement;
using logic::Term;
using logic::parseStatements;

std::vector<Statement> ownership(std::span<const Pid> trustRoots) {
  std::vector<Statement> out;
  for (const Pid& root : trustRoots) {
    Statement base;
    base.head = logic::parseStatement("ownPrefix(?Holder,?Prefix).").head;
    Literal lit;
    lit.speaker = Term(root);
    lit.atom = logic::parseStatement("allocate(?Holder,?Prefix).").head;
    base.body.push_back(std::move(lit));
    out.push_back(std::move(base));
  }
  for (auto& st : parseStatements(
           "ownPrefix(?Holder,?Prefix) :- ?UpStream: allocate(?Holder,?Prefix), "
           "  ownPrefix(?UpStream,?SupPrefix), ?Prefix <: ?SupPrefix."
           "ownsCovering(?Holder,?Prefix) :- ownPrefix(?Holder,?SupPrefix), "
           "  ?Prefix <: ?SupPrefix.")) {
    out.push_back(std::move(st));
  }
  return out;
}

const std::vector<Statement>& routeValidation() {
  static const std::vector<Statement> pkg = parseStatements(
      "authorizedRoute(?Owner,?DstIP,?Path,?AS) :-"
      "  eq([?Owner|?Tail],?Path), eq(?Tail,[]),"
      "  ?Owner: advertise(?DstIP,?Path,?AS),"
      "  ownPrefix(?Owner,?DstIP)."
      "authorizedRoute(?Owner,?DstIP,?Path,?AS) :-"
      "  eq([?Head|?Tail],?Path),"
      "  ?Head: advertise(?DstIP,?Path,?AS),"
      "  authorizedRoute(?Owner,?DstIP,?Tail,?Head).");
  return pkg;
}

const std::vector<Statement>& compliance() {
  static const std::vector<Statement> pkg = parseStatements(
      "compliantPath(?Owner,?SrcIP,?DstIP,?Path) :-"
      "  eq([?Head|?Tail],?Path), eq(?Tail,[]),"
      "  authorizedAS(?Owner,?SrcIP,?DstIP,?Head)."
      "compliantPath(?Owner,?SrcIP,?DstIP,?Path) :-"
      "  eq([?Head|?Tail],?Path),"
      "  authorizedAS(?Owner,?SrcIP,?DstIP,?Head),"
      "  compliantPath(?Owner,?SrcIP,?DstIP,?Tail)."
      "authorizedAS(?Owner,?SrcIP,?DstIP,?AS) :-"
      "  ?Owner: nspTagAclEntry(?SrcIP,?DstIP,?Tag),"
      "  validTagAccess(?Tag,?AS)."
      "authorizedAS(?Owner,?SrcIP,?DstIP,?AS) :-"
      "  ?Owner: nspTagAclEntry(?SrcIP,?DstIP,any)."
      "validTagAccess(?Tag,?Root) :- eq([?Root|?Rest],?Tag)."
      "validTagAccess(?Tag,?Subject) :-"
      "  ?Endorser: tagAccess(?Tag,?Subject),"
      "  validTagAccess(?Tag,?Endorser).");
  return pkg;
}

const std::vector<Statement>& connectivity() {
  static const std::vector<Statement> pkg = [] {
    std::vector<Statement> out = parseStatements(
        "connAdmit(?Owner,?Peer) :- ?Owner: connAllowPid(?Peer)."
        "connAdmit(?Owner,?Peer) :- ?Owner: connAllowTag(?Tag), "
        "  validTagAccess(?Tag,?Peer).");
    for (const auto& st : compliance()) {
      if (st.head.pred == "validTagAccess") out.push_back(st);
    }
    return out;
  }();
  return pkg;
}

}  // namespace rules
}  // namespace peernet
