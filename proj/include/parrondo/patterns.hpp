#pragma once

// Deterministic periodic game sequences ("patterns") such as AABB, and
// their long-run rate of profit.
//
// One period of a pattern g_1 ... g_d has transition matrix
// M = P_{g_1} * ... * P_{g_d} on capital mod r. The rate is the averaged
// one-step payoff along a period started from the stationary distribution
// of M on its unique reachable recurrent class.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "parrondo/rates.hpp"
#include "parrondo/scalar.hpp"

namespace parrondo {

enum class Game : std::uint8_t { A, B };

class Pattern {
 public:
  explicit Pattern(std::vector<Game> letters);

  // Strings over {A,B} (case-insensitive), whitespace ignored, with
  // optional run-length syntax: "(AB)^2 B^1" expands to "ABABB".
  // Repeat counts must be >= 1; the expansion is capped at 2^20 letters.
  // Throws std::invalid_argument on malformed input.
  static Pattern parse(std::string_view text);

  // (AB)^s B^(r-2); requires r >= 3, s >= 1.
  static Pattern absb(std::int64_t r, std::int64_t s);

  const std::vector<Game>& letters() const { return letters_; }
  std::int64_t length() const { return static_cast<std::int64_t>(letters_.size()); }
  std::string str() const;

 private:
  std::vector<Game> letters_;
};

// Parity class of the starting capital. Irrelevant for odd r; for even r
// the capital chain is periodic and each parity class has its own rate.
enum class StartParity { Even, Odd };

// Stationary analysis of the pattern's composite chain. Exact when rho is
// exact. Errors: invalid r/rho, empty pattern, or a composite chain whose
// reachable recurrent class is not unique (the rate would depend on the
// starting state beyond parity).
RateReport rate_pattern(std::int64_t r, const Scalar& rho, const Pattern& pat,
                        StartParity parity = StartParity::Even);

// Closed form for the rho = 0 rate of (AB)^s B^(r-2), always exact:
//   odd r:  mu = r/(2s+r-2) * (2^s-1)/(2^s+1)           (any start)
//   even r: mu = r/(2s+r-2) * sum_k ceil(2k/r) C(s,k) 2^-s   (even start)
//           mu = 0                                           (odd start)
RateReport rate_absb(std::int64_t r, std::int64_t s,
                     StartParity parity = StartParity::Even);

// s_r = floor(log2 r) - 1, gap compared against 2*s_r/r. Needs r >= 4.
AsymptoticCheck asymptotic_pattern_check(std::int64_t r);

}  // namespace parrondo
