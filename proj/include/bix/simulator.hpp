#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "bix/games.hpp"

namespace bix::sim {

enum class MsgKind {
  CertRequest,
  IssuerOffer,
  CounterSigned,
  ChainBroadcast,
  ChainQuery,
  ChainResponse,
};

const char* kind_name(MsgKind kind);

struct CertPair {
  Certificate completed_tail;
  Certificate new_tail;
};

struct ProtocolMessage {
  MsgKind kind;
  std::string sender;
  std::variant<std::monostate, CertRequest, IssuerOffer, CertPair,
               CertificateChain>
      payload;
};

enum class PartyState { Uncertified, AwaitingOffer, AwaitingChain, Certified };

struct Party {
  std::string name;
  Identity identity;
  CertificateChain local_chain;  // empty until certified
  PartyState state = PartyState::Uncertified;
  std::optional<IssuanceRound> pending_round;
};

struct ScriptOp {
  enum class Kind { Root, Join, AttackMidchain, Exchange, Query };
  Kind kind;
  std::string a;
  std::string b;
  size_t i = 0;
  size_t j = 0;
};

struct Scenario {
  std::vector<ScriptOp> ops;
};

/// Line-oriented script: `root <id>`, `join <id>`, `attack midchain <i> <j>`,
/// `exchange <id> <id>`, `query <id>`. Blank lines and `#` comments allowed.
/// Throws ScriptError before any step executes.
Scenario parse_script(const std::string& text);

struct SimOutcome {
  std::vector<std::string> transcript;
  std::map<std::string, Party> parties;
  std::vector<std::string> join_order;
  Certificate trusted_root;

  std::string transcript_text() const;
};

SimOutcome run_simulation(const Scenario& scenario, uint64_t seed,
                          const SchemeHandle& scheme);

}  // namespace bix::sim
