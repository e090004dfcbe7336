#include "bix/simulator.hpp"

#include <deque>
#include <set>
#include <sstream>

#include "bix/errors.hpp"

namespace bix::sim {

namespace {

const char* kSimDate = "2026-01-01";

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

size_t parse_index(const std::string& tok, const char* what) {
  try {
    size_t pos = 0;
    unsigned long v = std::stoul(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ScriptError(std::string("bad ") + what + ": " + tok);
  }
}

}  // namespace

const char* kind_name(MsgKind kind) {
  switch (kind) {
    case MsgKind::CertRequest: return "CertRequest";
    case MsgKind::IssuerOffer: return "IssuerOffer";
    case MsgKind::CounterSigned: return "CounterSigned";
    case MsgKind::ChainBroadcast: return "ChainBroadcast";
    case MsgKind::ChainQuery: return "ChainQuery";
    case MsgKind::ChainResponse: return "ChainResponse";
  }
  return "?";
}

Scenario parse_script(const std::string& text) {
  Scenario scenario;
  std::set<std::string> known;
  bool have_root = false;
  std::istringstream is(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
    std::vector<std::string> tok = split_ws(line);
    if (tok.empty()) continue;
    auto at = [&](const char* msg) {
      return ScriptError("line " + std::to_string(lineno) + ": " + msg);
    };
    ScriptOp op;
    if (tok[0] == "root") {
      if (tok.size() != 2) throw at("usage: root <id>");
      if (have_root) throw at("duplicate root");
      op.kind = ScriptOp::Kind::Root;
      op.a = tok[1];
      known.insert(op.a);
      have_root = true;
    } else if (tok[0] == "join") {
      if (tok.size() != 2) throw at("usage: join <id>");
      if (!have_root) throw at("join before root");
      if (known.count(tok[1])) throw at("duplicate party id");
      op.kind = ScriptOp::Kind::Join;
      op.a = tok[1];
      known.insert(op.a);
    } else if (tok[0] == "attack") {
      if (tok.size() != 4 || tok[1] != "midchain")
        throw at("usage: attack midchain <i> <j>");
      op.kind = ScriptOp::Kind::AttackMidchain;
      op.i = parse_index(tok[2], "attack index i");
      op.j = parse_index(tok[3], "attack index j");
      if (!(op.j > op.i + 1 && op.i > 0))
        throw at("attack indices must satisfy j > i+1 > i > 0");
    } else if (tok[0] == "exchange") {
      if (tok.size() != 3) throw at("usage: exchange <id> <id>");
      if (!known.count(tok[1]) || !known.count(tok[2]))
        throw at("exchange names unknown party");
      if (tok[1] == tok[2]) throw at("exchange needs two distinct parties");
      op.kind = ScriptOp::Kind::Exchange;
      op.a = tok[1];
      op.b = tok[2];
    } else if (tok[0] == "query") {
      if (tok.size() != 2) throw at("usage: query <id>");
      if (!known.count(tok[1])) throw at("query names unknown party");
      op.kind = ScriptOp::Kind::Query;
      op.a = tok[1];
    } else {
      throw at(("unknown directive: " + tok[0]).c_str());
    }
    scenario.ops.push_back(op);
  }
  if (!have_root) throw ScriptError("script has no root directive");
  return scenario;
}

std::string SimOutcome::transcript_text() const {
  std::string out;
  for (const std::string& line : transcript) {
    out += line;
    out += '\n';
  }
  return out;
}

namespace {

struct Envelope {
  std::string to;
  ProtocolMessage msg;
};

class Simulation {
 public:
  Simulation(const Scenario& scenario, uint64_t seed,
             const SchemeHandle& scheme)
      : scenario_(scenario), scheme_(scheme), rng_(seed) {}

  SimOutcome run() {
    for (const ScriptOp& op : scenario_.ops) {
      switch (op.kind) {
        case ScriptOp::Kind::Root: op_root(op.a); break;
        case ScriptOp::Kind::Join: op_join(op.a); break;
        case ScriptOp::Kind::AttackMidchain: op_attack(op.i, op.j); break;
        case ScriptOp::Kind::Exchange: op_exchange(op.a, op.b); break;
        case ScriptOp::Kind::Query: op_query(op.a); break;
      }
      pump();
    }
    SimOutcome outcome;
    outcome.transcript = std::move(transcript_);
    outcome.parties = std::move(parties_);
    outcome.join_order = std::move(join_order_);
    outcome.trusted_root = trusted_root_;
    return outcome;
  }

 private:
  void log(const std::string& line) { transcript_.push_back(line); }

  void send(const std::string& to, ProtocolMessage msg) {
    bus_.push_back(Envelope{to, std::move(msg)});
  }

  void log_delivery(const Envelope& env) {
    log("tick=" + std::to_string(tick_) + " deliver kind=" +
        kind_name(env.msg.kind) + " from=" + env.msg.sender +
        " to=" + env.to);
  }

  void pump() {
    while (!bus_.empty()) {
      Envelope env = std::move(bus_.front());
      bus_.pop_front();
      ++tick_;
      log_delivery(env);
      dispatch(env);
    }
  }

  Bytes alloc_bix_id() {
    Bytes id(kBixIdLen, 0);
    uint64_t k = next_id_++;
    for (int i = 0; i < 8; ++i)
      id[kBixIdLen - 1 - i] = static_cast<uint8_t>(k >> (8 * i));
    return id;
  }

  Party& party(const std::string& name) { return parties_.at(name); }

  void op_root(const std::string& name) {
    Party p;
    p.name = name;
    p.identity = make_identity(alloc_bix_id(), scheme_, rng_);
    trusted_root_ = make_root(p.identity.subject(), p.identity.keys, scheme_,
                              rng_, kProtocolVersion, kSimDate);
    p.local_chain = chain_of_root(trusted_root_, scheme_);
    p.state = PartyState::Certified;
    parties_.emplace(name, std::move(p));
    join_order_.push_back(name);
    server_ = name;
    log("event root id=" + name + " len=1");
  }

  void op_join(const std::string& name) {
    Party p;
    p.name = name;
    p.identity = make_identity(alloc_bix_id(), scheme_, rng_);
    p.state = PartyState::AwaitingOffer;
    parties_.emplace(name, std::move(p));
    join_order_.push_back(name);
    // Step 1.a: the newcomer does not know the tail owner, so the request
    // goes to every member.
    CertRequest request = make_cert_request(party(name).identity, scheme_, rng_);
    for (const std::string& other : join_order_) {
      if (other == name) continue;
      if (party(other).state != PartyState::Certified) continue;
      send(other, ProtocolMessage{MsgKind::CertRequest, name, request});
    }
    pump();
    Party& self = party(name);
    if (self.state != PartyState::Certified) {
      self.state = PartyState::Uncertified;
      log("event join id=" + name + " result=failed");
    }
  }

  void op_attack(size_t i, size_t j) {
    const CertificateChain& chain = party(server_).local_chain;
    if (j >= chain.certificates.size())
      throw ScriptError("attack index j beyond current chain length");
    Party* colluder_i = find_by_bix_id(chain.certificates[i].subject.bix_id);
    Party* colluder_j = find_by_bix_id(chain.certificates[j].subject.bix_id);
    if (!colluder_i || !colluder_j)
      throw ScriptError("attack colluders not found among parties");
    std::vector<Bytes> fresh_ids;
    for (size_t k = 0; k < j - i - 1; ++k) fresh_ids.push_back(alloc_bix_id());
    CertificateChain forged = midchain_alter_attack(
        chain, i, j, colluder_i->identity.keys, colluder_j->identity.keys,
        fresh_ids, rng_);
    bool forged_valid = verify_chain(forged, trusted_root_);
    colluder_i->local_chain = forged;
    colluder_j->local_chain = forged;
    log("event attack midchain i=" + std::to_string(i) +
        " j=" + std::to_string(j) +
        " colluders=" + colluder_i->name + "," + colluder_j->name +
        " forged_valid=" + (forged_valid ? "true" : "false"));
  }

  struct ViewResult {
    std::string verdict;  // true / false / inconclusive
    std::string fork = "none";
  };

  // One side of the certificate exchange: x checks y's certificate, syncing
  // forward from y when y's index is beyond x's local chain.
  ViewResult view(Party& x, Party& y) {
    if (x.state != PartyState::Certified || y.state != PartyState::Certified)
      return {"inconclusive"};
    const CertificateChain& yc = y.local_chain;
    size_t jy = yc.certificates.size();
    for (size_t k = 0; k < yc.certificates.size(); ++k)
      if (yc.certificates[k].subject.bix_id == y.identity.bix_id) jy = k;
    if (jy == yc.certificates.size()) return {"inconclusive"};
    const Certificate& cert_y = yc.certificates[jy];
    if (!verify_certificate(cert_y, scheme_)) return {"false"};

    if (jy < x.local_chain.certificates.size()) {
      Bytes mine = encode_certificate(
          strip_next_fields(x.local_chain.certificates[jy]), scheme_);
      Bytes theirs = encode_certificate(strip_next_fields(cert_y), scheme_);
      if (mine == theirs) return {"true"};
      ViewResult r{"false"};
      r.fork = fork_string(x.local_chain, fetch_chain(x.name, y.name));
      return r;
    }
    // Sync forward, then re-check membership.
    CertificateChain received = fetch_chain(x.name, y.name);
    std::string fork = fork_string(x.local_chain, received);
    if (fork != "none") return {"false", fork};
    if (!verify_chain(received, trusted_root_)) return {"false"};
    if (jy >= received.certificates.size()) return {"inconclusive"};
    x.local_chain = received;
    log("event chain-synced id=" + x.name +
        " len=" + std::to_string(received.certificates.size()));
    return {"true"};
  }

  CertificateChain fetch_chain(const std::string& from, const std::string& to) {
    send(to, ProtocolMessage{MsgKind::ChainQuery, from, std::monostate{}});
    // Query/response are synchronous within an op; drain the two deliveries.
    Envelope q = std::move(bus_.back());
    bus_.pop_back();
    ++tick_;
    log_delivery(q);
    CertificateChain chain = party(to).local_chain;
    ProtocolMessage resp{MsgKind::ChainResponse, to, chain};
    Envelope r{from, std::move(resp)};
    ++tick_;
    log_delivery(r);
    return chain;
  }

  std::string fork_string(const CertificateChain& local,
                          const CertificateChain& received) {
    try {
      auto fork = detect_fork(local, received);
      return fork ? std::to_string(*fork) : "none";
    } catch (const std::exception&) {
      return "incomparable";
    }
  }

  void op_exchange(const std::string& a, const std::string& b) {
    ViewResult ab = view(party(a), party(b));
    ViewResult ba = view(party(b), party(a));
    log("event exchange a=" + a + " b=" + b + " a_views_b=" + ab.verdict +
        " b_views_a=" + ba.verdict + " fork_ab=" + ab.fork +
        " fork_ba=" + ba.fork);
  }

  void op_query(const std::string& name) {
    Party& x = party(name);
    CertificateChain received = fetch_chain(name, server_);
    bool valid = verify_chain(received, trusted_root_);
    std::string fork = "none";
    bool adopted = false;
    if (x.state == PartyState::Certified)
      fork = fork_string(x.local_chain, received);
    if (valid && fork == "none" &&
        received.certificates.size() >= x.local_chain.certificates.size()) {
      x.local_chain = received;
      adopted = true;
    }
    log("event query id=" + name + " verify=" + (valid ? "true" : "false") +
        " fork=" + fork + " adopted=" + (adopted ? "true" : "false") +
        " len=" + std::to_string(received.certificates.size()));
  }

  Party* find_by_bix_id(const Bytes& bix_id) {
    for (const std::string& name : join_order_)
      if (party(name).identity.bix_id == bix_id) return &party(name);
    return nullptr;
  }

  void dispatch(const Envelope& env) {
    Party& p = party(env.to);
    switch (env.msg.kind) {
      case MsgKind::CertRequest:
        on_cert_request(p, std::get<CertRequest>(env.msg.payload),
                        env.msg.sender);
        break;
      case MsgKind::IssuerOffer:
        on_issuer_offer(p, std::get<IssuerOffer>(env.msg.payload),
                        env.msg.sender);
        break;
      case MsgKind::CounterSigned:
        on_counter_signed(p, std::get<CertPair>(env.msg.payload),
                          env.msg.sender);
        break;
      case MsgKind::ChainBroadcast:
        on_chain_broadcast(p, std::get<CertPair>(env.msg.payload));
        break;
      case MsgKind::ChainQuery:
        send(env.msg.sender,
             ProtocolMessage{MsgKind::ChainResponse, env.to, p.local_chain});
        break;
      case MsgKind::ChainResponse:
        on_chain_response(p, std::get<CertificateChain>(env.msg.payload));
        break;
    }
  }

  void on_cert_request(Party& p, const CertRequest& request,
                       const std::string& sender) {
    if (p.state != PartyState::Certified) return;
    auto offer = process_request(p.local_chain, p.identity, request, kSimDate,
                                 rng_);
    if (!offer) return;  // not the tail owner, or bad self-signature
    send(sender, ProtocolMessage{MsgKind::IssuerOffer, p.name, *offer});
  }

  void on_issuer_offer(Party& p, const IssuerOffer& offer,
                       const std::string& sender) {
    if (p.state != PartyState::AwaitingOffer) return;
    std::string reason;
    auto round =
        countersign(p.identity, offer, trusted_root_, scheme_, rng_, &reason);
    if (!round) {
      p.state = PartyState::Uncertified;
      log("event abort id=" + p.name + " reason=\"" + reason + "\"");
      return;
    }
    p.pending_round = *round;
    p.state = PartyState::AwaitingChain;
    CertPair pair{round->completed_tail, round->new_tail};
    send(sender, ProtocolMessage{MsgKind::CounterSigned, p.name, pair});
    send(sender, ProtocolMessage{MsgKind::ChainQuery, p.name, std::monostate{}});
  }

  void on_counter_signed(Party& p, const CertPair& pair,
                         const std::string& sender) {
    try {
      p.local_chain =
          append_certificate(p.local_chain, pair.completed_tail, pair.new_tail);
      server_ = sender;  // the newcomer owns the tail now
      log("event tail-extended issuer=" + p.name +
          " len=" + std::to_string(p.local_chain.certificates.size()));
    } catch (const std::exception& e) {
      log("event countersign-rejected issuer=" + p.name + " reason=\"" +
          e.what() + "\"");
    }
  }

  void on_chain_broadcast(Party& p, const CertPair& pair) {
    if (p.state != PartyState::Certified) return;
    try {
      p.local_chain =
          append_certificate(p.local_chain, pair.completed_tail, pair.new_tail);
      log("event chain-updated id=" + p.name +
          " len=" + std::to_string(p.local_chain.certificates.size()));
    } catch (const std::exception&) {
      log("event broadcast-ignored id=" + p.name);
    }
  }

  void on_chain_response(Party& p, const CertificateChain& chain) {
    if (p.state != PartyState::AwaitingChain || !p.pending_round) return;
    // Step 1.f: integrity check before broadcasting; either direction works.
    if (!verify_chain(chain, trusted_root_, Direction::Forward)) {
      p.state = PartyState::Uncertified;
      p.pending_round.reset();
      log("event abort id=" + p.name + " reason=\"chain integrity check failed\"");
      return;
    }
    p.local_chain = chain;
    p.state = PartyState::Certified;
    CertPair pair{p.pending_round->completed_tail, p.pending_round->new_tail};
    p.pending_round.reset();
    log("event join id=" + p.name +
        " len=" + std::to_string(p.local_chain.certificates.size()));
    for (const std::string& other : join_order_) {
      if (other == p.name) continue;
      // The issuer appended when counter-signing; skip it.
      if (party(other).identity.bix_id == pair.new_tail.issuer.bix_id) continue;
      send(other, ProtocolMessage{MsgKind::ChainBroadcast, p.name, pair});
    }
  }

  const Scenario& scenario_;
  SchemeHandle scheme_;
  SeededRng rng_;
  std::map<std::string, Party> parties_;
  std::vector<std::string> join_order_;
  std::deque<Envelope> bus_;
  std::vector<std::string> transcript_;
  Certificate trusted_root_;
  std::string server_;
  uint64_t tick_ = 0;
  uint64_t next_id_ = 0;
};

}  // namespace

SimOutcome run_simulation(const Scenario& scenario, uint64_t seed,
                          const SchemeHandle& scheme) {
  return Simulation(scenario, seed, scheme).run();
}

}  // namespace bix::sim
