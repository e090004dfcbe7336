#include "bix/cli.hpp"

#include <CLI11.hpp>
#include <ostream>

#include "bix/errors.hpp"
#include "bix/games.hpp"
#include "bix/simulator.hpp"
#include "bix/store.hpp"

namespace bix {

namespace {

const char* kCliDate = "2026-01-01";

Bytes alloc_bix_id(uint64_t k) {
  Bytes id(kBixIdLen, 0);
  for (int i = 0; i < 8; ++i)
    id[kBixIdLen - 1 - i] = static_cast<uint8_t>(k >> (8 * i));
  return id;
}

SchemeHandle scheme_from_name(const std::string& name) {
  if (name == "toy") return SchemeHandle{HashId::Sha256, SigId::ToyF17};
  if (name == "p256") return SchemeHandle{HashId::Sha256, SigId::P256};
  throw ConfigError("unknown scheme: " + name);
}

struct Cli {
  StoreLayout store;
  uint64_t seed = 1;
  std::string scheme_name = "p256";
  std::ostream& out;
  std::ostream& err;

  CertificateChain load() { return load_chain(store.chain_file()); }

  Identity identity_of(const CertificateChain& chain, const Bytes& bix_id) {
    return load_identity(store, bix_id, chain.scheme);
  }

  int init_root() {
    init_store(store);
    SchemeHandle scheme = scheme_from_name(scheme_name);
    SeededRng rng(seed);
    Identity root_id = make_identity(alloc_bix_id(0), scheme, rng);
    Certificate root = make_root(root_id.subject(), root_id.keys, scheme, rng,
                                 kProtocolVersion, kCliDate);
    CertificateChain chain = chain_of_root(root, scheme);
    save_chain(chain, store.chain_file());
    save_identity(store, root_id);
    out << "root created id=" << to_hex(root_id.bix_id) << " length=1\n";
    return 0;
  }

  int join() {
    CertificateChain chain = load();
    const Certificate& tail = chain.certificates.back();
    Identity tail_owner = identity_of(chain, tail.subject.bix_id);
    SeededRng rng(seed + chain.certificates.size());
    Identity newcomer =
        make_identity(alloc_bix_id(chain.certificates.size()), chain.scheme, rng);
    chain = grow_chain(chain, tail_owner, newcomer, kCliDate, rng);
    save_chain(chain, store.chain_file());
    save_identity(store, newcomer);
    out << "joined id=" << to_hex(newcomer.bix_id)
        << " length=" << chain.certificates.size() << "\n";
    return 0;
  }

  int verify(const std::string& direction) {
    CertificateChain chain = load();
    Direction dir =
        direction == "bwd" ? Direction::Backward : Direction::Forward;
    auto failure =
        verify_chain_explain(chain, chain.certificates.front(), dir);
    if (!failure) {
      out << "chain OK length=" << chain.certificates.size() << "\n";
      return 0;
    }
    out << "chain INVALID index=" << failure->index << " check=\""
        << failure->check << "\"\n";
    return 1;
  }

  int show(size_t index) {
    CertificateChain chain = load();
    if (index >= chain.certificates.size())
      throw ParameterError("index beyond chain length");
    out << render_certificate(chain.certificates[index], chain.scheme);
    return 0;
  }

  int exchange(size_t a, size_t b, const std::string& peer_file) {
    CertificateChain local = load();
    CertificateChain peer =
        peer_file.empty() ? local : load_chain(peer_file);
    if (a >= local.certificates.size() || b >= peer.certificates.size())
      throw ParameterError("exchange index beyond chain length");
    const Certificate& peer_cert = peer.certificates[b];
    bool cert_ok = verify_certificate(peer_cert, local.scheme);
    std::string fork = "none";
    bool member = false;
    try {
      auto f = detect_fork(local, peer);
      if (f) fork = std::to_string(*f);
      else if (b < local.certificates.size())
        member = encode_certificate(strip_next_fields(
                     local.certificates[b]), local.scheme) ==
                 encode_certificate(strip_next_fields(peer_cert), local.scheme);
      else
        member = verify_chain(peer, local.certificates.front());
    } catch (const ParameterError&) {
      fork = "incomparable";
    }
    bool ok = cert_ok && member && fork == "none";
    out << "exchange a=" << a << " b=" << b
        << " certificate=" << (cert_ok ? "true" : "false")
        << " membership=" << (member ? "true" : "false") << " fork=" << fork
        << " result=" << (ok ? "true" : "false") << "\n";
    return ok ? 0 : 1;
  }

  int simulate(const std::string& script_path) {
    Bytes raw = read_file(script_path);
    sim::Scenario scenario =
        sim::parse_script(std::string(raw.begin(), raw.end()));
    sim::SimOutcome outcome =
        sim::run_simulation(scenario, seed, scheme_from_name(scheme_name));
    out << outcome.transcript_text();
    return 0;
  }

  int attack_midchain(size_t i, size_t j) {
    CertificateChain chain = load();
    const size_t n = chain.certificates.size();
    if (!(j > i + 1 && i > 0 && j < n))
      throw ParameterError("attack requires 0 < i, i+1 < j < chain length");
    Identity ci = identity_of(chain, chain.certificates[i].subject.bix_id);
    Identity cj = identity_of(chain, chain.certificates[j].subject.bix_id);
    SeededRng rng(seed);
    std::vector<Bytes> fresh;
    for (size_t k = 0; k < j - i - 1; ++k)
      fresh.push_back(alloc_bix_id(1000 + n + k));
    CertificateChain forged =
        midchain_alter_attack(chain, i, j, ci.keys, cj.keys, fresh, rng);
    bool accepted = verify_chain(forged, chain.certificates.front());
    auto fork = detect_fork(chain, forged);
    save_chain(forged, store.root / "forged.bixc");
    out << "game=MIDCHAIN i=" << i << " j=" << j
        << " forged-chain-accepted=" << (accepted ? "true" : "false")
        << " fork=" << (fork ? std::to_string(*fork) : "none") << "\n";
    return accepted ? 0 : 1;
  }

  int attack_scl() {
    CertificateChain chain = load();
    const Certificate& root = chain.certificates.front();
    bool any_win = false;
    for (const auto& strategy : bundled_scl_strategies()) {
      SeededRng rng(seed);
      GameResult r = play_scl_game(chain, root, *strategy, rng);
      any_win = any_win || r.adversary_won;
      out << "game=SCL strategy=" << strategy->name()
          << " won=" << (r.adversary_won ? "true" : "false") << " outcome=\""
          << r.outcome << "\"\n";
    }
    return any_win ? 1 : 0;
  }

  int attack_sts(size_t i) {
    CertificateChain chain = load();
    const Certificate& root = chain.certificates.front();
    bool any_win = false;
    for (const auto& strategy : bundled_sts_strategies()) {
      SeededRng rng(seed);
      GameResult r = play_sts_game(chain, root, i, *strategy, rng);
      any_win = any_win || r.adversary_won;
      out << "game=STS strategy=" << strategy->name() << " i=" << i
          << " won=" << (r.adversary_won ? "true" : "false") << " outcome=\""
          << r.outcome << "\"\n";
    }
    return any_win ? 1 : 0;
  }
};

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err) {
  CLI::App app{"bixctl - certificate chain tool"};
  app.require_subcommand(1);

  Cli cli{StoreLayout{"."}, 1, "p256", out, err};
  std::string store_dir = ".";
  app.add_option("--store", store_dir, "store directory");
  app.add_option("--seed", cli.seed, "deterministic rng seed");
  app.add_option("--scheme", cli.scheme_name, "toy or p256")
      ->check(CLI::IsMember({"toy", "p256"}));

  auto* c_init = app.add_subcommand("init-root", "create a store with a root");
  auto* c_join = app.add_subcommand("join", "extend the chain by one member");
  auto* c_verify = app.add_subcommand("verify", "verify the stored chain");
  std::string direction = "fwd";
  c_verify->add_option("--direction", direction, "traversal order")
      ->check(CLI::IsMember({"fwd", "bwd"}));
  auto* c_show = app.add_subcommand("show", "print one certificate");
  size_t show_index = 0;
  c_show->add_option("index", show_index, "certificate index")->required();
  auto* c_exchange =
      app.add_subcommand("exchange", "mutual certificate check");
  size_t ex_a = 0, ex_b = 0;
  std::string peer_file;
  c_exchange->add_option("a", ex_a, "local member index")->required();
  c_exchange->add_option("b", ex_b, "peer member index")->required();
  c_exchange->add_option("--peer-chain", peer_file, "peer's chain file");
  auto* c_sim = app.add_subcommand("simulate", "run a scenario script");
  std::string script_path;
  c_sim->add_option("script", script_path, "script file")->required();
  auto* c_attack = app.add_subcommand("attack", "run an adversary game");
  c_attack->require_subcommand(1);
  auto* a_scl = c_attack->add_subcommand("scl", "chain lengthening game");
  auto* a_sts = c_attack->add_subcommand("sts", "subject tampering game");
  auto* a_mid = c_attack->add_subcommand("midchain", "collusion attack");
  size_t at_i = 0, at_j = 0;
  a_sts->add_option("--i", at_i, "target index")->required();
  a_mid->add_option("--i", at_i, "first colluder index")->required();
  a_mid->add_option("--j", at_j, "second colluder index")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  cli.store.root = store_dir;
  try {
    if (*c_init) return cli.init_root();
    if (*c_join) return cli.join();
    if (*c_verify) return cli.verify(direction);
    if (*c_show) return cli.show(show_index);
    if (*c_exchange) return cli.exchange(ex_a, ex_b, peer_file);
    if (*c_sim) return cli.simulate(script_path);
    if (*a_scl) return cli.attack_scl();
    if (*a_sts) return cli.attack_sts(at_i);
    if (*a_mid) return cli.attack_midchain(at_i, at_j);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "usage error: no subcommand\n";
  return 2;
}

}  // namespace bix
