// Compares the serial chain verifier and game runner against their
// OpenMP-parallel counterparts on identical inputs.

#include <chrono>
#include <cstdio>

#include "bix/games.hpp"

using namespace bix;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void bench_verify(size_t chain_len) {
  SchemeHandle scheme{HashId::Sha256, SigId::P256};
  HonestChain fixture = build_honest_chain(chain_len, scheme, 42);

  auto t0 = Clock::now();
  bool serial = verify_chain(fixture.chain, fixture.trusted_root);
  double ts = seconds_since(t0);

  t0 = Clock::now();
  bool parallel = verify_chain_parallel(fixture.chain, fixture.trusted_root);
  double tp = seconds_since(t0);

  std::printf("verify_chain len=%zu serial=%.3fs parallel=%.3fs agree=%s\n",
              chain_len, ts, tp, serial == parallel ? "yes" : "NO");
}

void bench_games(size_t runs) {
  SchemeHandle scheme{HashId::Sha256, SigId::P256};
  auto strategies = bundled_scl_strategies();
  const SclStrategy& adversary = *strategies.front();

  auto t0 = Clock::now();
  BatchStats serial = run_scl_batch(adversary, scheme, 4, runs, 7, false);
  double ts = seconds_since(t0);

  t0 = Clock::now();
  BatchStats parallel = run_scl_batch(adversary, scheme, 4, runs, 7, true);
  double tp = seconds_since(t0);

  std::printf("scl_batch runs=%zu serial=%.3fs parallel=%.3fs agree=%s\n",
              runs, ts, tp,
              serial.wins == parallel.wins && serial.runs == parallel.runs
                  ? "yes"
                  : "NO");
}

}  // namespace

int main() {
  bench_verify(300);
  bench_games(200);
  return 0;
}
