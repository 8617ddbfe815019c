#pragma once

// Long-run rate of profit mu = lim S_n / n of mixed games.
//
// A step of the mixture gamma*A + (1-gamma)*B is a cycle walk whose
// up-probability is p = gamma/2 + (1-gamma)*p1 away from state 0 and
// p0_mix = gamma/2 + (1-gamma)*p0 at state 0, so
//   mu = pi_0 (p0_mix - q0_mix) + (1 - pi_0)(p - q).
// At rho = 0 the walk has the mirrored defect p0_mix = 1 - p and mu
// collapses to the closed form implemented by rate_mixture_rho0.

#include <cstdint>

#include "parrondo/cycle_walk.hpp"
#include "parrondo/games.hpp"
#include "parrondo/matrix.hpp"
#include "parrondo/scalar.hpp"

namespace parrondo {

enum class RateMethod {
  StationaryFunctional,  // pi_0 closed form or product form, then the functional
  MixtureClosedForm,     // explicit rho = 0 polynomial ratio
  PatternComposite,      // stationary analysis of a periodic pattern
  AbsbClosedForm,        // (AB)^s B^(r-2) closed form
  MonteCarlo,
};

const char* to_string(RateMethod m);

// How the rate depends on the initial capital's parity. For odd r it never
// does; for even r the chain on capital mod r is periodic and the rate is
// reported per starting-parity class.
enum class ParityNote { Any, EvenOnly, OddOnly, OddIsZero };

const char* to_string(ParityNote n);

struct RateReport {
  Scalar mu;
  RateMethod method;
  ParityNote parity_note;
  Backend backend;
};

// sum_i pi_i sum_j P_ij W_ij. Rejects pi that is not stationary for P
// (exactly in exact mode, residual <= tol in float mode).
Scalar mean_profit(const ScalarVec& pi, const SquareMatrix& p,
                   const SquareMatrix& w, double tol = 1e-12);

struct MixtureProbs {
  Scalar p;   // up-probability away from state 0
  Scalar p0;  // up-probability at state 0
};

// Site probabilities of the one-step mixture walk; gamma in (0,1).
MixtureProbs mixture_probs(std::int64_t r, const Scalar& rho,
                           const Scalar& gamma);

// Rate of gamma*A + (1-gamma)*B via pi_0 closed forms. r >= 3 with no
// dense-matrix cap; exact when rho and gamma are exact.
RateReport rate_mixture(std::int64_t r, const Scalar& rho, const Scalar& gamma);

// Explicit rho = 0 formula, evaluated as a ratio of stabilized power sums:
//   mu = (1-gamma) * c / (2*(1-u^r) + c),  c = r*u*(1-u^(r-2)),
// with u = gamma/(2-gamma).
RateReport rate_mixture_rho0(std::int64_t r, const Scalar& gamma);

// 1 - mu for the rho = 0 mixture, computed without the cancellation that
// makes 1 - rate_mixture_rho0(...) lose digits once the gap is ~1e-6.
Scalar gap_mixture_rho0(std::int64_t r, const Scalar& gamma);

struct AsymptoticCheck {
  double parameter;  // gamma_r = 2/sqrt(r), or the pattern length s_r
  double gap;
  double reference;  // the predicted leading-order gap
  double ratio;      // gap / reference, -> 1 as r grows
};

// gamma = 2/sqrt(r), gap compared against 4/sqrt(r). Needs r >= 5 so that
// 2/sqrt(r) < 1.
AsymptoticCheck asymptotic_gap_check(std::int64_t r);

}  // namespace parrondo
