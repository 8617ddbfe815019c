#include "parrondo/montecarlo.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "graph.hpp"
#include "parrondo/cycle_walk.hpp"
#include "parrondo/games.hpp"
#include "parrondo/rng.hpp"

namespace parrondo {

std::int64_t floored_mod(std::int64_t value, std::int64_t modulus) {
  if (modulus <= 0) throw std::domain_error("floored_mod: modulus must be > 0");
  return ((value % modulus) + modulus) % modulus;
}

namespace {

void check_play_spec(const PlaySpec& spec) {
  if (spec.r < 3) throw std::domain_error("r must be >= 3");
  if (!(spec.rho >= 0.0) || spec.rho >= 1.0)
    throw std::domain_error("rho must lie in [0,1)");
  if (spec.gamma.has_value() == spec.pattern.has_value())
    throw std::domain_error(
        "play spec needs exactly one of a mixture gamma or a pattern");
  if (spec.gamma && !(*spec.gamma > 0.0 && *spec.gamma < 1.0))
    throw std::domain_error("gamma must lie in (0,1)");
}

struct CoinTable {
  // Win probability per residue, for each game.
  std::vector<double> game_a, game_b;
};

CoinTable make_coin_table(std::int64_t r, double rho) {
  const CoinPair coins = coin_probs(r, Scalar::real(rho));
  CoinTable t;
  t.game_a.assign(static_cast<std::size_t>(r), 0.5);
  t.game_b.assign(static_cast<std::size_t>(r), coins.p1.to_double());
  t.game_b[0] = coins.p0.to_double();
  return t;
}

}  // namespace

namespace {

SimulationTrace simulate_with_rng(const PlaySpec& spec, std::int64_t n_steps,
                                  Xoshiro256PlusPlus& rng, std::uint64_t seed,
                                  bool record_labels) {
  const CoinTable coins = make_coin_table(spec.r, spec.rho);

  SimulationTrace trace;
  trace.seed = seed;
  trace.n_steps = n_steps;
  trace.initial_capital = spec.initial_capital;
  if (record_labels) trace.game_labels.reserve(static_cast<std::size_t>(n_steps));

  std::int64_t state = floored_mod(spec.initial_capital, spec.r);
  std::int64_t profit = 0;
  std::int64_t next_checkpoint = 1;

  const bool mixture = spec.gamma.has_value();
  const double gamma = mixture ? *spec.gamma : 0.0;
  const std::vector<Game>* letters =
      mixture ? nullptr : &spec.pattern->letters();
  std::size_t letter_pos = 0;

  for (std::int64_t n = 1; n <= n_steps; ++n) {
    bool play_a;
    if (mixture) {
      play_a = rng.next_unit() < gamma;
    } else {
      play_a = (*letters)[letter_pos] == Game::A;
      if (++letter_pos == letters->size()) letter_pos = 0;
    }
    const double win_prob = (play_a ? coins.game_a
                                    : coins.game_b)[static_cast<std::size_t>(state)];
    const bool win = rng.next_unit() < win_prob;
    if (record_labels) trace.game_labels.push_back(play_a ? 'A' : 'B');
    if (win) {
      ++profit;
      if (++state == spec.r) state = 0;
    } else {
      --profit;
      if (--state < 0) state = spec.r - 1;
    }
    if (n == next_checkpoint || n == n_steps) {
      trace.checkpoints.push_back(
          {n, profit, static_cast<double>(profit) / static_cast<double>(n)});
      if (n == next_checkpoint) next_checkpoint *= 2;
    }
  }
  trace.final_profit = profit;
  return trace;
}

}  // namespace

SimulationTrace simulate(const PlaySpec& spec, std::int64_t n_steps,
                         std::uint64_t seed, bool record_labels) {
  check_play_spec(spec);
  if (n_steps < 1) throw std::domain_error("simulate: n_steps must be >= 1");
  Xoshiro256PlusPlus rng(seed);
  return simulate_with_rng(spec, n_steps, rng, seed, record_labels);
}

void write_trace_csv(const SimulationTrace& trace, std::ostream& out) {
  out << "n,S_n,S_n/n\n";
  for (const Checkpoint& c : trace.checkpoints)
    out << c.n << ',' << c.profit << ',' << double_str(c.rate) << '\n';
}

nlohmann::json trace_to_json(const SimulationTrace& trace) {
  nlohmann::json checkpoints = nlohmann::json::array();
  for (const Checkpoint& c : trace.checkpoints)
    checkpoints.push_back({{"n", c.n}, {"profit", c.profit}, {"rate", c.rate}});
  nlohmann::json j{{"seed", trace.seed},
                   {"n_steps", trace.n_steps},
                   {"initial_capital", trace.initial_capital},
                   {"final_profit", trace.final_profit},
                   {"final_rate", static_cast<double>(trace.final_profit) /
                                      static_cast<double>(trace.n_steps)},
                   {"checkpoints", std::move(checkpoints)}};
  if (!trace.game_labels.empty()) j["game_labels"] = trace.game_labels;
  return j;
}

RateReport exact_rate_for(const PlaySpec& spec) {
  check_play_spec(spec);
  // The float parameters are dyadic rationals, so promoting them to the
  // exact backend loses nothing and keeps the reference rate exact for
  // small r.
  const Backend b = choose_backend(true, spec.r);
  const Scalar rho = Scalar::real(spec.rho).to_backend(b);
  if (spec.gamma) {
    const Scalar gamma = Scalar::real(*spec.gamma).to_backend(b);
    return rate_mixture(spec.r, rho, gamma);
  }
  const StartParity parity = floored_mod(spec.initial_capital, 2) == 0
                                 ? StartParity::Even
                                 : StartParity::Odd;
  return rate_pattern(spec.r, rho, *spec.pattern, parity);
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PARRONDO_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

SllnReport slln_check(const PlaySpec& spec, std::int64_t n_steps,
                      std::int64_t n_reps, std::uint64_t seed,
                      double max_exceed_fraction, int threads) {
  check_play_spec(spec);
  if (n_steps < 1 || n_reps < 1)
    throw std::domain_error("slln_check: n_steps and n_reps must be >= 1");

  SllnReport report;
  report.mu = exact_rate_for(spec).mu.to_double();
  report.bound = 4.0 / std::sqrt(static_cast<double>(n_steps));
  report.n_steps = n_steps;
  report.replicas.assign(static_cast<std::size_t>(n_reps), SllnReplica{});

  const int workers =
      std::min<int>(resolve_threads(threads), static_cast<int>(n_reps));
  // Stream k simulates with the master seed jumped k times, so replicas
  // use provably disjoint slices of the generator's period. The seed is
  // expanded once here and the state is passed straight to the replica.
  const auto run_range = [&](std::int64_t lo, std::int64_t hi) {
    // head is only ever jumped, never drawn from, so replica k always
    // starts at exactly seed + k jumps no matter how work is split.
    Xoshiro256PlusPlus head(seed);
    for (std::int64_t k = 0; k < lo; ++k) head.jump();
    for (std::int64_t k = lo; k < hi; ++k) {
      Xoshiro256PlusPlus rng = head;
      SimulationTrace t = simulate_with_rng(spec, n_steps, rng, seed, false);
      SllnReplica& rep = report.replicas[static_cast<std::size_t>(k)];
      rep.stream = static_cast<std::uint64_t>(k);
      rep.rate = static_cast<double>(t.final_profit) /
                 static_cast<double>(n_steps);
      rep.abs_error = std::abs(rep.rate - report.mu);
      rep.within_bound = rep.abs_error <= report.bound;
      head.jump();
    }
  };

  if (workers <= 1) {
    run_range(0, n_reps);
  } else {
    std::vector<std::thread> pool;
    const std::int64_t chunk = (n_reps + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::int64_t lo = w * chunk, hi = std::min<std::int64_t>(n_reps, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(run_range, lo, hi);
    }
    for (std::thread& t : pool) t.join();
  }

  std::int64_t within = 0;
  for (const SllnReplica& rep : report.replicas) within += rep.within_bound;
  report.fraction_within =
      static_cast<double>(within) / static_cast<double>(n_reps);
  report.flagged = 1.0 - report.fraction_within > max_exceed_fraction;
  return report;
}

DoubledChain build_doubled_chain(const SquareMatrix& p, const SquareMatrix& w) {
  const std::int64_t n = p.size();
  if (w.size() != n) throw std::domain_error("build_doubled_chain: size mismatch");
  if (!p.row_stochastic())
    throw std::domain_error("build_doubled_chain: matrix is not row-stochastic");

  detail::AdjList adj(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j)
      if (!p.at(i, j).is_zero()) adj[static_cast<std::size_t>(i)].push_back(j);

  if (!detail::is_strongly_connected(adj))
    throw std::domain_error("build_doubled_chain: chain is not irreducible");
  const auto split = detail::bipartition(adj);
  if (!split)
    throw std::domain_error(
        "build_doubled_chain: chain is aperiodic; the doubling needs period 2");

  DoubledChain dc{std::move(split->first), std::move(split->second),
                  {}, {}, {}, {}, SquareMatrix(1, p.backend()),
                  {}, Scalar::zero(p.backend()), Scalar::zero(p.backend())};
  const Backend b = p.backend();

  // P^2 restricted to the class of state 0 must itself be irreducible,
  // otherwise the period exceeds 2.
  const SquareMatrix p2 = p * p;
  const std::int64_t m1 = static_cast<std::int64_t>(dc.sigma1.size());
  detail::AdjList adj1(static_cast<std::size_t>(m1));
  SquareMatrix p2sub(m1, b);
  for (std::int64_t a = 0; a < m1; ++a)
    for (std::int64_t c = 0; c < m1; ++c) {
      const Scalar& v = p2.at(dc.sigma1[static_cast<std::size_t>(a)],
                              dc.sigma1[static_cast<std::size_t>(c)]);
      p2sub.set(a, c, v);
      if (!v.is_zero()) adj1[static_cast<std::size_t>(a)].push_back(c);
    }
  if (!detail::is_strongly_connected(adj1))
    throw std::domain_error(
        "build_doubled_chain: P^2 splits a parity class; period exceeds 2");

  dc.pi = stationary_linear_solve(p).pi;

  const StationaryDist sd1 = stationary_linear_solve(p2sub);
  dc.pi1.assign(static_cast<std::size_t>(n), Scalar::zero(b));
  for (std::int64_t a = 0; a < m1; ++a)
    dc.pi1[static_cast<std::size_t>(dc.sigma1[static_cast<std::size_t>(a)])] =
        sd1.pi[static_cast<std::size_t>(a)];
  dc.pi2 = row_times(dc.pi1, p);

  // pi = (pi1 + pi2)/2 ties the per-class laws back to the overall one.
  const Scalar half = Scalar::ratio(1, 2).to_backend(b);
  for (std::int64_t i = 0; i < n; ++i) {
    const Scalar blend = (dc.pi1[static_cast<std::size_t>(i)] +
                          dc.pi2[static_cast<std::size_t>(i)]) *
                         half;
    const Scalar drift = abs(blend - dc.pi[static_cast<std::size_t>(i)]);
    if (b == Backend::Exact ? !drift.is_zero() : drift.to_double() > 1e-10)
      throw std::runtime_error(
          "build_doubled_chain: class averages disagree with pi");
  }

  for (std::int64_t i : dc.sigma1)
    for (std::int64_t j : dc.sigma2)
      if (!p.at(i, j).is_zero()) dc.pairs.emplace_back(i, j);

  const std::int64_t np = static_cast<std::int64_t>(dc.pairs.size());
  dc.pair_matrix = SquareMatrix(np, b);
  for (std::int64_t a = 0; a < np; ++a) {
    const auto [i, j] = dc.pairs[static_cast<std::size_t>(a)];
    (void)i;
    for (std::int64_t c = 0; c < np; ++c) {
      const auto [k, l] = dc.pairs[static_cast<std::size_t>(c)];
      dc.pair_matrix.set(a, c, p.at(j, k) * p.at(k, l));
    }
  }
  if (!dc.pair_matrix.row_stochastic())
    throw std::runtime_error("build_doubled_chain: pair chain rows do not sum to 1");

  dc.pair_pi.reserve(static_cast<std::size_t>(np));
  for (const auto& [i, j] : dc.pairs)
    dc.pair_pi.push_back(dc.pi1[static_cast<std::size_t>(i)] * p.at(i, j));

  // The stationarity identity pi1* P* = pi1* is what lets the strong law
  // run on the pair chain.
  const Scalar res = stationary_residual(dc.pair_pi, dc.pair_matrix);
  if (b == Backend::Exact ? !res.is_zero() : res.to_double() > 1e-10)
    throw std::runtime_error(
        "build_doubled_chain: pair distribution is not stationary");

  dc.rate = mean_profit(dc.pi, p, w);
  Scalar two_step = Scalar::zero(b);
  for (std::int64_t a = 0; a < np; ++a) {
    const auto [i, j] = dc.pairs[static_cast<std::size_t>(a)];
    const Scalar& weight = dc.pair_pi[static_cast<std::size_t>(a)];
    if (weight.is_zero()) continue;
    // First step of the doubled move pays w(i,j); the second pays the
    // pi1*-average of w(j,k) over the next landing site k.
    Scalar second = Scalar::zero(b);
    for (std::int64_t k : dc.sigma1)
      if (!p.at(j, k).is_zero()) second += p.at(j, k) * w.at(j, k);
    two_step += weight * (w.at(i, j) + second);
  }
  dc.two_step_mean = two_step;

  const Scalar gap = abs(dc.two_step_mean - Scalar::ratio(2).to_backend(b) * dc.rate);
  if (b == Backend::Exact ? !gap.is_zero() : gap.to_double() > 1e-10)
    throw std::runtime_error(
        "build_doubled_chain: doubled payoff disagrees with twice the rate");
  return dc;
}

nlohmann::json doubled_chain_to_json(const DoubledChain& dc,
                                     bool include_matrices) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [i, j] : dc.pairs) pairs.push_back({i, j});
  nlohmann::json j{{"sigma1", dc.sigma1},
                   {"sigma2", dc.sigma2},
                   {"pi", vector_to_json(dc.pi)},
                   {"pi1", vector_to_json(dc.pi1)},
                   {"pi2", vector_to_json(dc.pi2)},
                   {"pairs", std::move(pairs)},
                   {"pair_pi", vector_to_json(dc.pair_pi)},
                   {"two_step_mean", dc.two_step_mean.is_exact()
                                         ? nlohmann::json(dc.two_step_mean.str())
                                         : nlohmann::json(dc.two_step_mean.to_double())},
                   {"rate", dc.rate.is_exact()
                                ? nlohmann::json(dc.rate.str())
                                : nlohmann::json(dc.rate.to_double())}};
  if (include_matrices) j["pair_matrix"] = matrix_to_json(dc.pair_matrix);
  return j;
}

}  // namespace parrondo
