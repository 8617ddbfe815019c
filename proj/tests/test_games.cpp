#include "doctest.h"
#include "parrondo/games.hpp"
#include "parrondo/rng.hpp"

using namespace parrondo;

TEST_CASE("coin probabilities for pinned parameters") {
  const CoinPair c3 = coin_probs(3, Scalar::ratio(1, 3));
  CHECK(c3.p0.str() == "1/10");
  CHECK(c3.p1.str() == "3/4");

  const CoinPair c5 = coin_probs(5, Scalar::ratio(1, 2));
  CHECK(c5.p0.str() == "1/17");
  CHECK(c5.p1.str() == "2/3");

  const CoinPair c4 = coin_probs(4, Scalar::ratio(1, 3));
  CHECK(c4.p0.str() == "1/28");
  CHECK(c4.p1.str() == "3/4");

  // rho = 0 degenerates to a losing coin at 0 and a sure win elsewhere.
  const CoinPair c0 = coin_probs(3, Scalar::ratio(0));
  CHECK(c0.p0.str() == "0");
  CHECK(c0.p1.str() == "1");
}

TEST_CASE("the rho parameterization makes game B fair") {
  Xoshiro256PlusPlus rng(3);
  for (int i = 0; i < 50; ++i) {
    const std::int64_t r = 3 + static_cast<std::int64_t>(rng.next_u64() % 10);
    const long long num = 1 + static_cast<long long>(rng.next_u64() % 99);
    const Scalar rho = Scalar::ratio(num, 100);
    const CoinPair c = coin_probs(r, rho);
    const Scalar one = Scalar::ratio(1);
    // Losing from 0 once and from elsewhere r-1 times is exactly as likely
    // as winning the same steps: the cycle has no net drift.
    CHECK((one - c.p0) * (one - c.p1).pow(r - 1) == c.p0 * c.p1.pow(r - 1));
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(coin_probs(2, Scalar::ratio(1, 2)), std::domain_error);
  CHECK_THROWS_AS(coin_probs(3, Scalar::ratio(1)), std::domain_error);
  CHECK_THROWS_AS(coin_probs(3, Scalar::ratio(-1, 2)), std::domain_error);
  CHECK_THROWS_AS(GameParams::make(3, Scalar::ratio(1, 3), Scalar::ratio(0)),
                  std::domain_error);
  CHECK_THROWS_AS(GameParams::make(3, Scalar::ratio(1, 3), Scalar::ratio(1)),
                  std::domain_error);
  CHECK_THROWS_AS(build_game_a(10001), std::domain_error);
}

TEST_CASE("transition matrices have the cycle structure") {
  const SquareMatrix a = build_game_a(5);
  CHECK(a.row_stochastic());
  CHECK(a.at(0, 1).str() == "1/2");
  CHECK(a.at(0, 4).str() == "1/2");
  CHECK(a.at(2, 3).str() == "1/2");
  CHECK(a.at(2, 2).is_zero());

  const CoinPair c = coin_probs(3, Scalar::ratio(1, 3));
  const SquareMatrix b = build_game_b(3, c.p0, c.p1);
  CHECK(b.row_stochastic());
  CHECK(b.at(0, 1).str() == "1/10");
  CHECK(b.at(0, 2).str() == "9/10");
  CHECK(b.at(1, 2).str() == "3/4");
  CHECK(b.at(1, 0).str() == "1/4");

  // rho = 0: allowed, and still a chain.
  const SquareMatrix b0 = build_game_b(3, Scalar::ratio(0), Scalar::ratio(1));
  CHECK(b0.row_stochastic());
  CHECK(b0.at(0, 2).str() == "1");
  CHECK(b0.at(1, 2).str() == "1");
}

TEST_CASE("payoff matrix carries +1 up and -1 down") {
  const SquareMatrix w = build_payoff(4);
  CHECK(w.at(0, 1).str() == "1");
  CHECK(w.at(0, 3).str() == "-1");
  CHECK(w.at(3, 0).str() == "1");
  CHECK(w.at(3, 2).str() == "-1");
  CHECK(w.at(1, 3).is_zero());
}

TEST_CASE("mixing the games") {
  const CoinPair c = coin_probs(3, Scalar::ratio(1, 3));
  const SquareMatrix p = mix(build_game_a(3), build_game_b(3, c.p0, c.p1),
                             Scalar::ratio(1, 2));
  CHECK(p.row_stochastic());
  CHECK(p.at(0, 1).str() == "3/10");  // gamma/2 + (1-gamma) p0
  CHECK(p.at(1, 2).str() == "5/8");   // gamma/2 + (1-gamma) p1
  CHECK(p.backend() == Backend::Exact);
  CHECK_THROWS_AS(mix(build_game_a(3), build_game_a(4), Scalar::ratio(1, 2)),
                  std::domain_error);
  CHECK_THROWS_AS(mix(build_game_a(3), build_game_a(3), Scalar::ratio(0)),
                  std::domain_error);

  const SquareMatrix pf = mix(build_game_a(3, Backend::Float),
                              build_game_b(3, c.p0, c.p1), Scalar::ratio(1, 2));
  CHECK(pf.backend() == Backend::Float);
  CHECK(pf.row_stochastic());
}
