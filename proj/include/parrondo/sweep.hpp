#pragma once

// Parameter sweeps: the best mixture weight gamma* (continuous, found by a
// unimodality-checked grid scan plus golden-section refinement) and the
// best pattern length s* (discrete, compared exactly), with the r = 10^1
// .. 10^6 summary tables built from them.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "json.hpp"
#include "parrondo/scalar.hpp"

namespace parrondo {

struct GammaSweep {
  std::int64_t r = 0;
  double best_gamma = 0;
  double best_mu = 0;
  double gap = 0;             // 1 - best_mu
  bool unimodal = true;       // grid pre-scan saw a single rise and fall
  bool has_ref = false;       // r >= 5 so that gamma_ref = 2/sqrt(r) < 1
  double gamma_ref = 0;
  double gap_at_ref = 0;
};

// Maximizes the rho = 0 mixture rate over gamma in (0,1). tol is the width
// of the final golden-section bracket; a short parabolic polish then pins
// the maximizer to near machine accuracy. If the pre-scan on grid_points
// samples does not look unimodal, the result falls back to a 65536-point
// grid argmax (still refined locally) and reports unimodal = false.
GammaSweep argmax_gamma(std::int64_t r, double tol = 1e-9,
                        int grid_points = 512);

// (gamma, mu) samples for plotting or export.
std::vector<std::pair<double, double>> gamma_profile(std::int64_t r,
                                                     int points);

struct SSweep {
  std::int64_t r = 0;
  std::vector<std::int64_t> best_s;  // every maximizer; ties are exact
  Scalar best_mu;                    // exact rational
  Scalar gap;                        // 1 - best_mu, exact
  std::int64_t s_max = 0;            // last s scanned
  bool widened = false;              // scan window had to grow
  std::int64_t s_ref = 0;            // floor(log2 r) - 1
  std::optional<Scalar> gap_at_ref;  // set when s_ref >= 1
};

// Maximizes the even-start rho = 0 rate of (AB)^s B^(r-2) over
// s = 1..s_max (default 2*floor(log2 r) + 4). If the argmax touches the
// window edge the window doubles until it does not, and the result is
// marked widened.
SSweep argmax_s(std::int64_t r, std::int64_t s_max = 0);

// Rows r = 10^1 .. 10^6. threads <= 0 defers to PARRONDO_THREADS or the
// hardware.
std::vector<GammaSweep> make_table1(int threads = 0);
std::vector<SSweep> make_table2(int threads = 0);

void write_table1_csv(std::ostream& out, const std::vector<GammaSweep>& rows);
void write_table2_csv(std::ostream& out, const std::vector<SSweep>& rows);
void write_table1_text(std::ostream& out, const std::vector<GammaSweep>& rows);
void write_table2_text(std::ostream& out, const std::vector<SSweep>& rows);
nlohmann::json table1_to_json(const std::vector<GammaSweep>& rows);
nlohmann::json table2_to_json(const std::vector<SSweep>& rows);

nlohmann::json gamma_sweep_to_json(const GammaSweep& row);
nlohmann::json s_sweep_to_json(const SSweep& row);

}  // namespace parrondo
