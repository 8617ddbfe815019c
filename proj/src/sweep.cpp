#include "parrondo/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "parrondo/montecarlo.hpp"
#include "parrondo/patterns.hpp"
#include "parrondo/rates.hpp"

namespace parrondo {

namespace {

double mu_rho0(std::int64_t r, double gamma) {
  return rate_mixture_rho0(r, Scalar::real(gamma)).mu.to_double();
}

// Increasing-then-decreasing within a noise tolerance?
bool looks_unimodal(const std::vector<double>& values) {
  double peak = values.empty() ? 0.0 : values[0];
  for (double v : values) peak = std::max(peak, std::abs(v));
  const double eps = 1e-12 * std::max(peak, 1.0);
  bool falling = false;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double d = values[i] - values[i - 1];
    if (d < -eps) falling = true;
    if (d > eps && falling) return false;
  }
  return true;
}

// Golden-section maximization of f on [lo, hi] down to bracket width tol.
double golden_max(std::int64_t r, double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = mu_rho0(r, c), fd = mu_rho0(r, d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = mu_rho0(r, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = mu_rho0(r, d);
    }
  }
  return 0.5 * (a + b);
}

// Two rounds of parabolic refinement pin the maximizer far below the
// golden-section tolerance, which the stationary-point check relies on.
double parabolic_polish(std::int64_t r, double x) {
  for (int round = 0; round < 2; ++round) {
    const double h = std::max(x * 1e-7, 1e-10);
    if (x - h <= 0.0 || x + h >= 1.0) break;
    const double fm = mu_rho0(r, x - h);
    const double f0 = mu_rho0(r, x);
    const double fp = mu_rho0(r, x + h);
    const double den = fm - 2.0 * f0 + fp;
    if (!(den < 0.0)) break;  // lost the concave signal
    const double shift = 0.5 * h * (fm - fp) / den;
    if (!std::isfinite(shift) || std::abs(shift) > 8.0 * h) break;
    const double next = x + shift;
    if (next <= 0.0 || next >= 1.0) break;
    x = next;
  }
  return x;
}

}  // namespace

GammaSweep argmax_gamma(std::int64_t r, double tol, int grid_points) {
  if (r < 3) throw std::domain_error("argmax_gamma: r must be >= 3");
  if (!(tol > 0)) throw std::domain_error("argmax_gamma: tol must be > 0");
  if (grid_points < 8) throw std::domain_error("argmax_gamma: grid too small");

  GammaSweep out;
  out.r = r;

  std::vector<double> grid(static_cast<std::size_t>(grid_points));
  std::vector<double> value(static_cast<std::size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i) {
    grid[static_cast<std::size_t>(i)] =
        static_cast<double>(i + 1) / static_cast<double>(grid_points + 1);
    value[static_cast<std::size_t>(i)] =
        mu_rho0(r, grid[static_cast<std::size_t>(i)]);
  }
  out.unimodal = looks_unimodal(value);

  if (!out.unimodal) {
    // The shape is not what the optimizer assumes; fall back to a dense
    // scan and only refine locally around its argmax.
    const int fine = 65536;
    int best = 1;
    double best_value = -1.0;
    for (int i = 1; i <= fine; ++i) {
      const double g = static_cast<double>(i) / static_cast<double>(fine + 1);
      const double v = mu_rho0(r, g);
      if (v > best_value) {
        best_value = v;
        best = i;
      }
    }
    const double step = 1.0 / static_cast<double>(fine + 1);
    const double g = static_cast<double>(best) * step;
    out.best_gamma = golden_max(r, std::max(g - step, step * 0.5),
                                std::min(g + step, 1.0 - step * 0.5), tol);
  } else {
    const auto best_it = std::max_element(value.begin(), value.end());
    const int best = static_cast<int>(best_it - value.begin());
    const double lo =
        best == 0 ? grid.front() * 0.5 : grid[static_cast<std::size_t>(best - 1)];
    const double hi = best == grid_points - 1
                          ? 0.5 * (grid.back() + 1.0)
                          : grid[static_cast<std::size_t>(best + 1)];
    out.best_gamma = golden_max(r, lo, hi, tol);
  }

  out.best_gamma = parabolic_polish(r, out.best_gamma);
  out.best_mu = mu_rho0(r, out.best_gamma);
  out.gap = gap_mixture_rho0(r, Scalar::real(out.best_gamma)).to_double();

  out.has_ref = r >= 5;
  if (out.has_ref) {
    const AsymptoticCheck ac = asymptotic_gap_check(r);
    out.gamma_ref = ac.parameter;
    out.gap_at_ref = ac.gap;
  }
  return out;
}

std::vector<std::pair<double, double>> gamma_profile(std::int64_t r,
                                                     int points) {
  if (r < 3) throw std::domain_error("gamma_profile: r must be >= 3");
  if (points < 1) throw std::domain_error("gamma_profile: points must be >= 1");
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(points));
  for (int i = 1; i <= points; ++i) {
    const double g = static_cast<double>(i) / static_cast<double>(points + 1);
    out.emplace_back(g, mu_rho0(r, g));
  }
  return out;
}

SSweep argmax_s(std::int64_t r, std::int64_t s_max) {
  if (r < 3) throw std::domain_error("argmax_s: r must be >= 3");
  std::int64_t log2r = -1;
  for (std::int64_t v = r; v > 0; v >>= 1) ++log2r;
  if (s_max <= 0) s_max = 2 * log2r + 4;
  if (s_max < 1) s_max = 1;

  SSweep out;
  out.r = r;
  out.s_ref = log2r - 1;

  while (true) {
    out.best_s.clear();
    out.best_mu = Scalar::ratio(-1);
    for (std::int64_t s = 1; s <= s_max; ++s) {
      const Scalar mu = rate_absb(r, s, StartParity::Even).mu;
      if (mu > out.best_mu) {
        out.best_mu = mu;
        out.best_s.assign(1, s);
      } else if (mu == out.best_mu) {
        out.best_s.push_back(s);
      }
    }
    // An argmax on the window edge means the true maximizer may lie
    // beyond it; grow the window and retry.
    if (out.best_s.back() < s_max) break;
    s_max *= 2;
    out.widened = true;
  }
  out.s_max = s_max;
  out.gap = Scalar::ratio(1) - out.best_mu;
  if (out.s_ref >= 1)
    out.gap_at_ref =
        Scalar::ratio(1) - rate_absb(r, out.s_ref, StartParity::Even).mu;
  return out;
}

namespace {

const std::int64_t kTableR[] = {10, 100, 1000, 10000, 100000, 1000000};

template <typename Row, typename Make>
std::vector<Row> make_rows(int threads, Make make) {
  const int count = static_cast<int>(std::size(kTableR));
  std::vector<Row> rows(static_cast<std::size_t>(count));
  const int workers = std::min(resolve_threads(threads), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i)
      rows[static_cast<std::size_t>(i)] = make(kTableR[i]);
    return rows;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int i = w; i < count; i += workers)
        rows[static_cast<std::size_t>(i)] = make(kTableR[i]);
    });
  for (std::thread& t : pool) t.join();
  return rows;
}

std::string sig6(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string join_s(const std::vector<std::int64_t>& values, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

std::vector<GammaSweep> make_table1(int threads) {
  return make_rows<GammaSweep>(threads,
                               [](std::int64_t r) { return argmax_gamma(r); });
}

std::vector<SSweep> make_table2(int threads) {
  return make_rows<SSweep>(threads, [](std::int64_t r) { return argmax_s(r); });
}

void write_table1_csv(std::ostream& out, const std::vector<GammaSweep>& rows) {
  out << "r,argmax_gamma,max_mu,gap,gamma_ref,gap_at_ref\n";
  for (const GammaSweep& row : rows) {
    out << row.r << ',' << double_str(row.best_gamma) << ','
        << double_str(row.best_mu) << ',' << double_str(row.gap) << ',';
    if (row.has_ref)
      out << double_str(row.gamma_ref) << ',' << double_str(row.gap_at_ref);
    else
      out << ',';
    out << '\n';
  }
}

void write_table2_csv(std::ostream& out, const std::vector<SSweep>& rows) {
  out << "r,argmax_s,max_mu,max_mu_decimal,gap,gap_decimal,s_ref,gap_at_ref\n";
  for (const SSweep& row : rows) {
    out << row.r << ',' << join_s(row.best_s, ";") << ',' << row.best_mu.str()
        << ',' << double_str(row.best_mu.to_double()) << ',' << row.gap.str()
        << ',' << double_str(row.gap.to_double()) << ',' << row.s_ref << ',';
    if (row.gap_at_ref) out << double_str(row.gap_at_ref->to_double());
    out << '\n';
  }
}

void write_table1_text(std::ostream& out, const std::vector<GammaSweep>& rows) {
  char line[160];
  std::snprintf(line, sizeof line, "%-8s %-12s %-12s %-12s %-12s %-12s\n", "r",
                "gamma*", "mu*", "gap", "2/sqrt(r)", "gap@ref");
  out << line;
  for (const GammaSweep& row : rows) {
    std::snprintf(line, sizeof line, "%-8lld %-12s %-12s %-12s %-12s %-12s%s\n",
                  static_cast<long long>(row.r), sig6(row.best_gamma).c_str(),
                  sig6(row.best_mu).c_str(), sig6(row.gap).c_str(),
                  row.has_ref ? sig6(row.gamma_ref).c_str() : "-",
                  row.has_ref ? sig6(row.gap_at_ref).c_str() : "-",
                  row.unimodal ? "" : "  [not unimodal]");
    out << line;
  }
}

void write_table2_text(std::ostream& out, const std::vector<SSweep>& rows) {
  char line[200];
  std::snprintf(line, sizeof line, "%-8s %-10s %-22s %-12s %-6s %-12s\n", "r",
                "s*", "mu*", "gap", "s_ref", "gap@ref");
  out << line;
  for (const SSweep& row : rows) {
    const std::string mu = row.best_mu.str() + " (" +
                           sig6(row.best_mu.to_double()) + ")";
    std::snprintf(line, sizeof line, "%-8lld %-10s %-22s %-12s %-6lld %-12s%s\n",
                  static_cast<long long>(row.r), join_s(row.best_s, ",").c_str(),
                  mu.c_str(), sig6(row.gap.to_double()).c_str(),
                  static_cast<long long>(row.s_ref),
                  row.gap_at_ref ? sig6(row.gap_at_ref->to_double()).c_str() : "-",
                  row.widened ? "  [window widened]" : "");
    out << line;
  }
}

nlohmann::json gamma_sweep_to_json(const GammaSweep& row) {
  nlohmann::json j{{"r", row.r},
                   {"argmax_gamma", row.best_gamma},
                   {"max_mu", row.best_mu},
                   {"gap", row.gap},
                   {"unimodal", row.unimodal}};
  if (row.has_ref) {
    j["gamma_ref"] = row.gamma_ref;
    j["gap_at_ref"] = row.gap_at_ref;
  }
  return j;
}

nlohmann::json s_sweep_to_json(const SSweep& row) {
  nlohmann::json j{{"r", row.r},
                   {"argmax_s", row.best_s},
                   {"max_mu", row.best_mu.str()},
                   {"max_mu_decimal", row.best_mu.to_double()},
                   {"gap", row.gap.str()},
                   {"gap_decimal", row.gap.to_double()},
                   {"s_max", row.s_max},
                   {"widened", row.widened},
                   {"s_ref", row.s_ref}};
  if (row.gap_at_ref) {
    j["gap_at_ref"] = row.gap_at_ref->str();
    j["gap_at_ref_decimal"] = row.gap_at_ref->to_double();
  }
  return j;
}

nlohmann::json table1_to_json(const std::vector<GammaSweep>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const GammaSweep& row : rows) arr.push_back(gamma_sweep_to_json(row));
  return {{"table", "gamma"}, {"rows", std::move(arr)}};
}

nlohmann::json table2_to_json(const std::vector<SSweep>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SSweep& row : rows) arr.push_back(s_sweep_to_json(row));
  return {{"table", "pattern"}, {"rows", std::move(arr)}};
}

}  // namespace parrondo
