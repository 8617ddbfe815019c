#include "parrondo/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "parrondo/cycle_walk.hpp"
#include "parrondo/games.hpp"
#include "parrondo/matrix.hpp"
#include "parrondo/montecarlo.hpp"
#include "parrondo/patterns.hpp"
#include "parrondo/rates.hpp"
#include "parrondo/scalar.hpp"
#include "parrondo/sweep.hpp"

namespace parrondo::cli {

namespace {

struct Usage : std::domain_error {
  using std::domain_error::domain_error;
};

// Writes a payload to --out when given, else to the session stream.
void deliver(const std::string& payload, const std::string& out_path,
             std::ostream& out) {
  if (out_path.empty()) {
    out << payload;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw Usage("cannot open output file: " + out_path);
  file << payload;
  if (!file.flush())
    throw std::runtime_error("failed writing output file: " + out_path);
}

Backend parse_backend_flag(const std::string& flag, bool inputs_rational,
                           std::int64_t r) {
  if (flag == "exact") return Backend::Exact;
  if (flag == "float") return Backend::Float;
  return choose_backend(inputs_rational, r);
}

// Exact syntax means integers, fractions and plain decimals; anything
// else (scientific notation, inf/nan) forces the float backend in auto
// mode and is rejected under --backend exact.
bool exact_parseable(const std::string& text) {
  return Scalar::parse(text, Backend::Exact).has_value();
}

Scalar parse_scalar_arg(const std::string& text, const char* name, Backend b) {
  auto v = Scalar::parse(text, b);
  if (!v)
    throw Usage(std::string(name) + ": cannot parse '" + text + "' as a " +
                (b == Backend::Exact ? "rational" : "real") + " number");
  return *v;
}

double parse_double_arg(const std::string& text, const char* name) {
  return parse_scalar_arg(text, name, Backend::Float).to_double();
}

nlohmann::json scalar_json(const Scalar& v) {
  return v.is_exact() ? nlohmann::json(v.str()) : nlohmann::json(v.to_double());
}

nlohmann::json rate_report_json(const RateReport& rep) {
  return {{"mu", scalar_json(rep.mu)},
          {"mu_decimal", rep.mu.to_double()},
          {"method", to_string(rep.method)},
          {"parity_note", to_string(rep.parity_note)},
          {"backend", to_string(rep.backend)}};
}

std::string json_payload(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// ---- rate-mixture ----

struct RateMixtureOpts {
  std::int64_t r = 3;
  std::string rho, gamma, backend = "auto", format = "text", out_path;
};

std::string run_rate_mixture(const RateMixtureOpts& o) {
  const bool rational = exact_parseable(o.rho) && exact_parseable(o.gamma);
  if (o.backend == "exact" && !rational)
    throw Usage("--backend exact requires rational rho and gamma");
  const Backend b = parse_backend_flag(o.backend, rational, o.r);
  const Scalar rho = parse_scalar_arg(o.rho, "--rho", b);
  const Scalar gamma = parse_scalar_arg(o.gamma, "--gamma", b);
  const RateReport rep = rate_mixture(o.r, rho, gamma);

  if (o.format == "text") return rep.mu.str() + "\n";
  if (o.format == "csv") {
    std::ostringstream s;
    s << "r,rho,gamma,mu,mu_decimal,method,parity_note,backend\n"
      << o.r << ',' << rho.str() << ',' << gamma.str() << ',' << rep.mu.str()
      << ',' << double_str(rep.mu.to_double()) << ',' << to_string(rep.method)
      << ',' << to_string(rep.parity_note) << ',' << to_string(rep.backend)
      << '\n';
    return s.str();
  }
  nlohmann::json j = rate_report_json(rep);
  j["command"] = "rate-mixture";
  j["r"] = o.r;
  j["rho"] = rho.str();
  j["gamma"] = gamma.str();
  return json_payload(j);
}

// ---- rate-pattern ----

struct RatePatternOpts {
  std::int64_t r = 3;
  std::string rho, pattern, parity = "even";
  std::int64_t absb_s = 0;
  std::string backend = "auto", format = "text", out_path;
};

std::string run_rate_pattern(const RatePatternOpts& o) {
  if (o.absb_s < 0) throw Usage("--absb must be >= 1");
  if (o.pattern.empty() == (o.absb_s == 0))
    throw Usage("give exactly one of --pattern or --absb");
  const bool rational = exact_parseable(o.rho);
  if (o.backend == "exact" && !rational)
    throw Usage("--backend exact requires a rational rho");
  const Backend b = parse_backend_flag(o.backend, rational, o.r);
  const Scalar rho = parse_scalar_arg(o.rho, "--rho", b);
  const StartParity parity =
      o.parity == "odd" ? StartParity::Odd : StartParity::Even;

  Pattern pattern = o.absb_s > 0 ? Pattern::absb(o.r, o.absb_s)
                                 : Pattern::parse(o.pattern);
  // The closed form only covers the (AB)^s B^(r-2) family at rho = 0.
  const RateReport rep = (o.absb_s > 0 && rho.is_zero())
                             ? rate_absb(o.r, o.absb_s, parity)
                             : rate_pattern(o.r, rho, pattern, parity);

  if (o.format == "text") return rep.mu.str() + "\n";
  if (o.format == "csv") {
    std::ostringstream s;
    s << "r,rho,pattern,parity,mu,mu_decimal,method,parity_note,backend\n"
      << o.r << ',' << rho.str() << ',' << pattern.str() << ',' << o.parity
      << ',' << rep.mu.str() << ',' << double_str(rep.mu.to_double()) << ','
      << to_string(rep.method) << ',' << to_string(rep.parity_note) << ','
      << to_string(rep.backend) << '\n';
    return s.str();
  }
  nlohmann::json j = rate_report_json(rep);
  j["command"] = "rate-pattern";
  j["r"] = o.r;
  j["rho"] = rho.str();
  j["pattern"] = pattern.str();
  j["parity"] = o.parity;
  return json_payload(j);
}

// ---- simulate / slln-check ----

struct SimulateOpts {
  std::int64_t r = 3;
  std::string rho = "0", gamma, pattern;
  std::int64_t steps = 0;
  std::uint64_t seed = 12345;
  std::int64_t capital = 0;
  bool labels = false;
  std::string format = "csv", out_path;
};

PlaySpec make_play_spec(std::int64_t r, const std::string& rho,
                        const std::string& gamma, const std::string& pattern,
                        std::int64_t capital) {
  if (gamma.empty() == pattern.empty())
    throw Usage("give exactly one of --gamma or --pattern");
  PlaySpec spec;
  spec.r = r;
  spec.rho = parse_double_arg(rho, "--rho");
  if (!gamma.empty()) spec.gamma = parse_double_arg(gamma, "--gamma");
  if (!pattern.empty()) spec.pattern = Pattern::parse(pattern);
  spec.initial_capital = capital;
  return spec;
}

std::string run_simulate(const SimulateOpts& o) {
  const PlaySpec spec =
      make_play_spec(o.r, o.rho, o.gamma, o.pattern, o.capital);
  const SimulationTrace trace = simulate(spec, o.steps, o.seed, o.labels);
  if (o.format == "json") {
    nlohmann::json j = trace_to_json(trace);
    j["command"] = "simulate";
    j["r"] = o.r;
    j["rho"] = spec.rho;
    if (spec.gamma) j["gamma"] = *spec.gamma;
    if (spec.pattern) j["pattern"] = spec.pattern->str();
    return json_payload(j);
  }
  std::ostringstream s;
  write_trace_csv(trace, s);
  return s.str();
}

struct SllnOpts {
  std::int64_t r = 3;
  std::string rho = "0", gamma, pattern;
  std::int64_t steps = 1000000;
  std::int64_t reps = 20;
  std::uint64_t seed = 12345;
  std::int64_t capital = 0;
  double max_exceed = 0.05;
  int threads = 0;
  std::string format = "text", out_path;
};

std::string run_slln(const SllnOpts& o) {
  const PlaySpec spec =
      make_play_spec(o.r, o.rho, o.gamma, o.pattern, o.capital);
  const SllnReport report = slln_check(spec, o.steps, o.reps, o.seed,
                                       o.max_exceed, o.threads);
  if (o.format == "json") {
    nlohmann::json reps = nlohmann::json::array();
    for (const SllnReplica& rep : report.replicas)
      reps.push_back({{"stream", rep.stream},
                      {"rate", rep.rate},
                      {"abs_error", rep.abs_error},
                      {"within_bound", rep.within_bound}});
    return json_payload(nlohmann::json{{"command", "slln-check"},
                                       {"r", o.r},
                                       {"mu", report.mu},
                                       {"bound", report.bound},
                                       {"n_steps", report.n_steps},
                                       {"seed", o.seed},
                                       {"replicas", std::move(reps)},
                                       {"fraction_within", report.fraction_within},
                                       {"flagged", report.flagged}});
  }
  if (o.format == "csv") {
    std::ostringstream s;
    s << "stream,rate,abs_error,within_bound\n";
    for (const SllnReplica& rep : report.replicas)
      s << rep.stream << ',' << double_str(rep.rate) << ','
        << double_str(rep.abs_error) << ',' << (rep.within_bound ? 1 : 0)
        << '\n';
    return s.str();
  }
  std::ostringstream s;
  s << "mu=" << double_str(report.mu) << " bound=" << double_str(report.bound)
    << " n_steps=" << report.n_steps << "\n";
  for (const SllnReplica& rep : report.replicas)
    s << "stream " << rep.stream << ": rate=" << double_str(rep.rate)
      << " abs_error=" << double_str(rep.abs_error)
      << (rep.within_bound ? " ok" : " OUTSIDE") << "\n";
  s << "fraction_within=" << double_str(report.fraction_within)
    << (report.flagged ? " FLAGGED" : " ok") << "\n";
  return s.str();
}

// ---- sweeps and tables ----

struct SweepGammaOpts {
  std::int64_t r = 3;
  double tol = 1e-9;
  int grid = 512;
  int profile = 0;
  std::string format = "text", out_path;
};

std::string run_sweep_gamma(const SweepGammaOpts& o) {
  if (o.profile > 0) {
    const auto samples = gamma_profile(o.r, o.profile);
    if (o.format == "json") {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& [g, mu] : samples) arr.push_back({{"gamma", g}, {"mu", mu}});
      return json_payload(
          {{"command", "sweep-gamma"}, {"r", o.r}, {"profile", std::move(arr)}});
    }
    std::ostringstream s;
    s << "gamma,mu\n";
    for (const auto& [g, mu] : samples)
      s << double_str(g) << ',' << double_str(mu) << '\n';
    return s.str();
  }

  const GammaSweep row = argmax_gamma(o.r, o.tol, o.grid);
  if (o.format == "json") {
    nlohmann::json j = gamma_sweep_to_json(row);
    j["command"] = "sweep-gamma";
    return json_payload(j);
  }
  if (o.format == "csv") {
    std::ostringstream s;
    write_table1_csv(s, {row});
    return s.str();
  }
  std::ostringstream s;
  write_table1_text(s, {row});
  return s.str();
}

struct SweepSOpts {
  std::int64_t r = 3;
  std::int64_t s_max = 0;
  std::string format = "text", out_path;
};

std::string run_sweep_s(const SweepSOpts& o) {
  const SSweep row = argmax_s(o.r, o.s_max);
  if (o.format == "json") {
    nlohmann::json j = s_sweep_to_json(row);
    j["command"] = "sweep-s";
    return json_payload(j);
  }
  if (o.format == "csv") {
    std::ostringstream s;
    write_table2_csv(s, {row});
    return s.str();
  }
  std::ostringstream s;
  write_table2_text(s, {row});
  return s.str();
}

struct TableOpts {
  int threads = 0;
  std::string format = "text", out_path;
};

std::string run_table1(const TableOpts& o) {
  const auto rows = make_table1(o.threads);
  std::ostringstream s;
  if (o.format == "json") return json_payload(table1_to_json(rows));
  if (o.format == "csv")
    write_table1_csv(s, rows);
  else
    write_table1_text(s, rows);
  return s.str();
}

std::string run_table2(const TableOpts& o) {
  const auto rows = make_table2(o.threads);
  std::ostringstream s;
  if (o.format == "json") return json_payload(table2_to_json(rows));
  if (o.format == "csv")
    write_table2_csv(s, rows);
  else
    write_table2_text(s, rows);
  return s.str();
}

// ---- doubled-chain ----

struct DoubledOpts {
  std::int64_t r = 4;
  std::string rho, gamma, backend = "auto", format = "json", out_path;
  bool matrices = false;
};

std::string run_doubled(const DoubledOpts& o) {
  if (o.r % 2 != 0)
    throw Usage("--r must be even: odd r gives an aperiodic chain");
  const bool rational = exact_parseable(o.rho) && exact_parseable(o.gamma);
  if (o.backend == "exact" && !rational)
    throw Usage("--backend exact requires rational rho and gamma");
  const Backend b = parse_backend_flag(o.backend, rational, o.r);
  const Scalar rho = parse_scalar_arg(o.rho, "--rho", b);
  const Scalar gamma = parse_scalar_arg(o.gamma, "--gamma", b);

  const CoinPair coins = coin_probs(o.r, rho);
  const SquareMatrix p = mix(build_game_a(o.r, b),
                             build_game_b(o.r, coins.p0, coins.p1), gamma);
  const DoubledChain dc = build_doubled_chain(p, build_payoff(o.r, b));

  if (o.format == "text") {
    std::ostringstream s;
    s << "rate=" << dc.rate.str()
      << " two_step_mean=" << dc.two_step_mean.str() << "\n";
    s << "sigma1:";
    for (std::int64_t v : dc.sigma1) s << ' ' << v;
    s << "\nsigma2:";
    for (std::int64_t v : dc.sigma2) s << ' ' << v;
    s << "\npairs: " << dc.pairs.size() << "\n";
    return s.str();
  }
  nlohmann::json j = doubled_chain_to_json(dc, o.matrices);
  j["command"] = "doubled-chain";
  j["r"] = o.r;
  j["rho"] = rho.str();
  j["gamma"] = gamma.str();
  j["backend"] = to_string(b);
  if (o.matrices) j["transition_matrix"] = matrix_to_json(p);
  return json_payload(j);
}

void add_format_option(CLI::App* cmd, std::string& target,
                       const std::vector<std::string>& choices) {
  cmd->add_option("--format", target, "output format")
      ->check(CLI::IsMember(choices));
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{
      "Long-run rate of profit of capital-dependent coin games: exact "
      "rational analysis and Monte Carlo simulation"};
  app.require_subcommand(1);

  RateMixtureOpts rm;
  auto* rate_mixture_cmd = app.add_subcommand(
      "rate-mixture", "rate of the random mixture gamma*A + (1-gamma)*B");
  rate_mixture_cmd->add_option("--r", rm.r, "modulus of the capital rule")
      ->required();
  rate_mixture_cmd->add_option("--rho", rm.rho, "bias parameter in [0,1)")
      ->required();
  rate_mixture_cmd->add_option("--gamma", rm.gamma, "mixture weight in (0,1)")
      ->required();
  rate_mixture_cmd->add_option("--backend", rm.backend, "numeric backend")
      ->check(CLI::IsMember({"auto", "exact", "float"}));
  add_format_option(rate_mixture_cmd, rm.format, {"text", "json", "csv"});
  rate_mixture_cmd->add_option("--out", rm.out_path, "write output to a file");

  RatePatternOpts rp;
  auto* rate_pattern_cmd = app.add_subcommand(
      "rate-pattern", "rate of a periodic game pattern such as AABB");
  rate_pattern_cmd->add_option("--r", rp.r, "modulus of the capital rule")
      ->required();
  rate_pattern_cmd->add_option("--rho", rp.rho, "bias parameter in [0,1)")
      ->required();
  rate_pattern_cmd->add_option("--pattern", rp.pattern,
                               "pattern string over {A,B}, e.g. \"(AB)^2 B\"");
  rate_pattern_cmd->add_option(
      "--absb", rp.absb_s, "use the pattern (AB)^s B^(r-2) with this s");
  rate_pattern_cmd
      ->add_option("--parity", rp.parity, "starting-capital parity (even r)")
      ->check(CLI::IsMember({"even", "odd"}));
  rate_pattern_cmd->add_option("--backend", rp.backend, "numeric backend")
      ->check(CLI::IsMember({"auto", "exact", "float"}));
  add_format_option(rate_pattern_cmd, rp.format, {"text", "json", "csv"});
  rate_pattern_cmd->add_option("--out", rp.out_path, "write output to a file");

  SimulateOpts sim;
  auto* simulate_cmd =
      app.add_subcommand("simulate", "play the games and dump the trajectory");
  simulate_cmd->add_option("--r", sim.r, "modulus of the capital rule")
      ->required();
  simulate_cmd->add_option("--rho", sim.rho, "bias parameter in [0,1)");
  simulate_cmd->add_option("--gamma", sim.gamma, "mixture weight in (0,1)");
  simulate_cmd->add_option("--pattern", sim.pattern, "periodic pattern");
  simulate_cmd->add_option("--steps", sim.steps, "number of plays")->required();
  simulate_cmd->add_option("--seed", sim.seed, "PRNG seed (default 12345)");
  simulate_cmd->add_option("--capital", sim.capital, "starting capital");
  simulate_cmd->add_flag("--labels", sim.labels,
                         "record the per-step game labels");
  add_format_option(simulate_cmd, sim.format, {"csv", "json"});
  simulate_cmd->add_option("--out", sim.out_path, "write output to a file");

  SllnOpts slln;
  auto* slln_cmd = app.add_subcommand(
      "slln-check", "compare simulated rates against the exact one");
  slln_cmd->add_option("--r", slln.r, "modulus of the capital rule")->required();
  slln_cmd->add_option("--rho", slln.rho, "bias parameter in [0,1)");
  slln_cmd->add_option("--gamma", slln.gamma, "mixture weight in (0,1)");
  slln_cmd->add_option("--pattern", slln.pattern, "periodic pattern");
  slln_cmd->add_option("--steps", slln.steps, "steps per replica");
  slln_cmd->add_option("--reps", slln.reps, "number of replicas");
  slln_cmd->add_option("--seed", slln.seed, "PRNG seed (default 12345)");
  slln_cmd->add_option("--capital", slln.capital, "starting capital");
  slln_cmd->add_option("--max-exceed", slln.max_exceed,
                       "flag when more than this fraction is outside");
  slln_cmd->add_option("--threads", slln.threads, "worker threads");
  add_format_option(slln_cmd, slln.format, {"text", "json", "csv"});
  slln_cmd->add_option("--out", slln.out_path, "write output to a file");

  SweepGammaOpts sg;
  auto* sweep_gamma_cmd =
      app.add_subcommand("sweep-gamma", "maximize the mixture rate over gamma");
  sweep_gamma_cmd->add_option("--r", sg.r, "modulus of the capital rule")
      ->required();
  sweep_gamma_cmd->add_option("--tol", sg.tol, "bracket tolerance");
  sweep_gamma_cmd->add_option("--grid", sg.grid, "pre-scan grid points");
  sweep_gamma_cmd->add_option("--profile", sg.profile,
                              "emit this many (gamma, mu) samples instead");
  add_format_option(sweep_gamma_cmd, sg.format, {"text", "json", "csv"});
  sweep_gamma_cmd->add_option("--out", sg.out_path, "write output to a file");

  SweepSOpts ss;
  auto* sweep_s_cmd = app.add_subcommand(
      "sweep-s", "maximize the (AB)^s B^(r-2) rate over s, exactly");
  sweep_s_cmd->add_option("--r", ss.r, "modulus of the capital rule")
      ->required();
  sweep_s_cmd->add_option("--s-max", ss.s_max,
                          "scan window (default 2*floor(log2 r) + 4)");
  add_format_option(sweep_s_cmd, ss.format, {"text", "json", "csv"});
  sweep_s_cmd->add_option("--out", ss.out_path, "write output to a file");

  TableOpts t1;
  auto* table1_cmd = app.add_subcommand(
      "table1", "best mixture weight for r = 10^1 .. 10^6");
  table1_cmd->add_option("--threads", t1.threads, "worker threads");
  add_format_option(table1_cmd, t1.format, {"text", "json", "csv"});
  table1_cmd->add_option("--out", t1.out_path, "write output to a file");

  TableOpts t2;
  auto* table2_cmd = app.add_subcommand(
      "table2", "best pattern length for r = 10^1 .. 10^6");
  table2_cmd->add_option("--threads", t2.threads, "worker threads");
  add_format_option(table2_cmd, t2.format, {"text", "json", "csv"});
  table2_cmd->add_option("--out", t2.out_path, "write output to a file");

  DoubledOpts dbl;
  auto* doubled_cmd = app.add_subcommand(
      "doubled-chain", "period-2 doubling of the mixture chain (even r)");
  doubled_cmd->add_option("--r", dbl.r, "modulus of the capital rule (even)")
      ->required();
  doubled_cmd->add_option("--rho", dbl.rho, "bias parameter in [0,1)")
      ->required();
  doubled_cmd->add_option("--gamma", dbl.gamma, "mixture weight in (0,1)")
      ->required();
  doubled_cmd->add_option("--backend", dbl.backend, "numeric backend")
      ->check(CLI::IsMember({"auto", "exact", "float"}));
  doubled_cmd->add_flag("--matrices", dbl.matrices,
                        "include matrix serializations");
  add_format_option(doubled_cmd, dbl.format, {"text", "json"});
  doubled_cmd->add_option("--out", dbl.out_path, "write output to a file");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream help;
    const int code = app.exit(e, help, help);
    out << help.str();
    return code == 0 ? 0 : 2;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    std::string payload, out_path;
    if (*rate_mixture_cmd) {
      payload = run_rate_mixture(rm);
      out_path = rm.out_path;
    } else if (*rate_pattern_cmd) {
      payload = run_rate_pattern(rp);
      out_path = rp.out_path;
    } else if (*simulate_cmd) {
      payload = run_simulate(sim);
      out_path = sim.out_path;
    } else if (*slln_cmd) {
      payload = run_slln(slln);
      out_path = slln.out_path;
    } else if (*sweep_gamma_cmd) {
      payload = run_sweep_gamma(sg);
      out_path = sg.out_path;
    } else if (*sweep_s_cmd) {
      payload = run_sweep_s(ss);
      out_path = ss.out_path;
    } else if (*table1_cmd) {
      payload = run_table1(t1);
      out_path = t1.out_path;
    } else if (*table2_cmd) {
      payload = run_table2(t2);
      out_path = t2.out_path;
    } else if (*doubled_cmd) {
      payload = run_doubled(dbl);
      out_path = dbl.out_path;
    }
    deliver(payload, out_path, out);
    return 0;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace parrondo::cli
