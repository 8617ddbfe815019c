#pragma once

// The two coin games on capital mod r and their mixtures.
//
// Game A flips a fair coin. Game B is capital-dependent: it plays a "bad"
// coin with winning probability p0 when the capital is divisible by r and
// a "good" coin with probability p1 otherwise. The rho parameterization
// p0 = rho^(r-1) / (1 + rho^(r-1)),  p1 = 1 / (1 + rho)
// makes game B fair on its own: (1-p0)(1-p1)^(r-1) = p0 p1^(r-1).

#include <cstdint>
#include <optional>

#include "parrondo/matrix.hpp"
#include "parrondo/scalar.hpp"

namespace parrondo {

struct CoinPair {
  Scalar p0;  // played on capital = 0 (mod r)
  Scalar p1;  // played otherwise
};

// Requires r >= 3 and rho in [0,1). rho = 0 degenerates to p0 = 0, p1 = 1.
CoinPair coin_probs(std::int64_t r, const Scalar& rho);

struct GameParams {
  std::int64_t r = 3;
  Scalar rho;
  Scalar p0;
  Scalar p1;
  std::optional<Scalar> gamma;  // probability of playing game A per step

  static GameParams make(std::int64_t r, const Scalar& rho,
                         std::optional<Scalar> gamma = std::nullopt);
};

// Transition matrices of the capital-mod-r walk. Requires 3 <= r <= 10000.
SquareMatrix build_game_a(std::int64_t r, Backend backend = Backend::Exact);
SquareMatrix build_game_b(std::int64_t r, const Scalar& p0, const Scalar& p1);

// Per-step payoff: +1 on every winning edge, -1 on every losing edge.
SquareMatrix build_payoff(std::int64_t r, Backend backend = Backend::Exact);

// gamma*A + (1-gamma)*B elementwise; gamma in (0,1).
SquareMatrix mix(const SquareMatrix& a, const SquareMatrix& b,
                 const Scalar& gamma);

}  // namespace parrondo
