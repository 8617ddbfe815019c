#pragma once

// Monte Carlo play of the games, strong-law spot checks of the exact
// rates, and the period-2 "doubled chain" construction that justifies
// applying the strong law to the parity-alternating capital chain.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "parrondo/matrix.hpp"
#include "parrondo/patterns.hpp"
#include "parrondo/rates.hpp"
#include "parrondo/scalar.hpp"

namespace parrondo {

// Capital mod r with the sign convention that keeps residues in [0, r)
// for negative capital as well.
std::int64_t floored_mod(std::int64_t value, std::int64_t modulus);

struct Checkpoint {
  std::int64_t n;
  std::int64_t profit;  // S_n
  double rate;          // S_n / n
};

struct SimulationTrace {
  std::uint64_t seed = 0;
  std::int64_t n_steps = 0;
  std::int64_t initial_capital = 0;
  std::int64_t final_profit = 0;
  std::vector<Checkpoint> checkpoints;  // n = 1, 2, 4, ... plus the final step
  std::string game_labels;              // per-step 'A'/'B', when recorded
};

// Which game sequence to play and from which capital.
struct PlaySpec {
  std::int64_t r = 3;
  double rho = 0.0;
  std::optional<double> gamma;     // random mixture when set
  std::optional<Pattern> pattern;  // periodic pattern when set
  std::int64_t initial_capital = 0;
};

SimulationTrace simulate(const PlaySpec& spec, std::int64_t n_steps,
                         std::uint64_t seed, bool record_labels = false);

void write_trace_csv(const SimulationTrace& trace, std::ostream& out);
nlohmann::json trace_to_json(const SimulationTrace& trace);

struct SllnReplica {
  std::uint64_t stream = 0;  // jump count applied to the master seed
  double rate = 0.0;         // S_n / n
  double abs_error = 0.0;    // |rate - mu|
  bool within_bound = false;
};

struct SllnReport {
  double mu = 0.0;        // exact rate the replicas are checked against
  double bound = 0.0;     // 4 / sqrt(n_steps)
  std::int64_t n_steps = 0;
  std::vector<SllnReplica> replicas;
  double fraction_within = 0.0;
  bool flagged = false;   // more than max_exceed_fraction replicas outside
};

// Plays n_reps independent streams (seed + k jumps) and compares each
// empirical rate against the exact one. threads <= 0 picks a default from
// PARRONDO_THREADS or the hardware.
SllnReport slln_check(const PlaySpec& spec, std::int64_t n_steps,
                      std::int64_t n_reps, std::uint64_t seed,
                      double max_exceed_fraction = 0.05, int threads = 0);

// Exact rate for a PlaySpec (mixture or pattern, parity taken from the
// initial capital).
RateReport exact_rate_for(const PlaySpec& spec);

// The doubled chain of an irreducible period-2 chain: parity classes
// Sigma1 (containing state 0) and Sigma2, the edge set S1 = {(i,j) :
// i in Sigma1, j in Sigma2, P_ij > 0}, and the pair chain
// P*((i,j),(k,l)) = P_jk P_kl on S1. Stationarity of pi1* and the
// two-step payoff identity are verified during construction.
struct DoubledChain {
  std::vector<std::int64_t> sigma1, sigma2;
  ScalarVec pi;           // stationary for P
  ScalarVec pi1, pi2;     // stationary for P^2 on each class (zero off-class)
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;  // S1
  SquareMatrix pair_matrix;   // P* on S1
  ScalarVec pair_pi;          // pi1*(i,j) = pi1(i) P_ij
  Scalar two_step_mean;       // expected payoff of a doubled step
  Scalar rate;                // = two_step_mean / 2 = pi-weighted payoff
};

// w holds the per-edge payoffs; pass build_payoff(r) for the games here.
DoubledChain build_doubled_chain(const SquareMatrix& p, const SquareMatrix& w);

nlohmann::json doubled_chain_to_json(const DoubledChain& dc,
                                     bool include_matrices);

// Worker count resolution used by every parallel code path: an explicit
// request wins, then the PARRONDO_THREADS environment variable, then
// hardware concurrency.
int resolve_threads(int requested);

}  // namespace parrondo
