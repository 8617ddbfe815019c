#include <cmath>

#include "doctest.h"
#include "parrondo/games.hpp"
#include "parrondo/rates.hpp"
#include "parrondo/rng.hpp"

using namespace parrondo;

TEST_CASE("mixture probabilities for the standard example") {
  const MixtureProbs mp =
      mixture_probs(3, Scalar::ratio(1, 3), Scalar::ratio(1, 2));
  CHECK(mp.p.str() == "5/8");
  CHECK(mp.p0.str() == "3/10");
}

TEST_CASE("pinned mixture rates") {
  const RateReport r1 =
      rate_mixture(3, Scalar::ratio(1, 3), Scalar::ratio(1, 2));
  CHECK(r1.mu.str() == "18/709");
  CHECK(r1.method == RateMethod::StationaryFunctional);
  CHECK(r1.parity_note == ParityNote::Any);
  CHECK(r1.backend == Backend::Exact);

  CHECK(rate_mixture(3, Scalar::ratio(1, 4), Scalar::ratio(1, 2)).mu.str() ==
        "135/3334");
  CHECK(rate_mixture(3, Scalar::ratio(1, 2), Scalar::ratio(1, 2)).mu.str() ==
        "27/3214");
  CHECK(rate_mixture(3, Scalar::ratio(3, 4), Scalar::ratio(1, 2)).mu.str() ==
        "63/88054");
}

TEST_CASE("three-state mixture rate matches its polynomial form") {
  // For r = 3, gamma = 1/2 the rate reduces to
  //   mu = 9(1-rho)^3 (1+rho) / (2 (35 + 70 rho + 78 rho^2 + 70 rho^3 + 35 rho^4)).
  for (const auto& rho : {Scalar::ratio(1, 4), Scalar::ratio(1, 2),
                          Scalar::ratio(3, 4), Scalar::ratio(1, 10)}) {
    const Scalar one = Scalar::ratio(1);
    const Scalar num =
        Scalar::ratio(9) * (one - rho).pow(3) * (one + rho);
    const Scalar den =
        Scalar::ratio(2) *
        (Scalar::ratio(35) + Scalar::ratio(70) * rho +
         Scalar::ratio(78) * rho.pow(2) + Scalar::ratio(70) * rho.pow(3) +
         Scalar::ratio(35) * rho.pow(4));
    CHECK(rate_mixture(3, rho, Scalar::ratio(1, 2)).mu == num / den);
  }
}

TEST_CASE("rho = 0 closed form") {
  const RateReport r = rate_mixture_rho0(3, Scalar::ratio(1, 2));
  CHECK(r.mu.str() == "9/70");
  CHECK(r.method == RateMethod::MixtureClosedForm);

  CHECK(rate_mixture_rho0(4, Scalar::ratio(1, 2)).mu.str() == "3/16");

  // Agrees exactly with the stationary-functional route.
  for (std::int64_t r_ = 3; r_ <= 12; ++r_)
    for (const auto& g : {Scalar::ratio(1, 4), Scalar::ratio(1, 2),
                          Scalar::ratio(3, 4)})
      CHECK(rate_mixture_rho0(r_, g).mu ==
            rate_mixture(r_, Scalar::ratio(0), g).mu);
}

TEST_CASE("gap complements the rate exactly") {
  for (std::int64_t r = 3; r <= 9; ++r)
    for (const auto& g : {Scalar::ratio(1, 5), Scalar::ratio(1, 2),
                          Scalar::ratio(7, 10)})
      CHECK(gap_mixture_rho0(r, g) ==
            Scalar::ratio(1) - rate_mixture_rho0(r, g).mu);
}

TEST_CASE("mean profit recovers the mixture rate from the chain itself") {
  const std::int64_t r = 3;
  const Scalar rho = Scalar::ratio(1, 3), gamma = Scalar::ratio(1, 2);
  const CoinPair c = coin_probs(r, rho);
  const SquareMatrix p =
      mix(build_game_a(r), build_game_b(r, c.p0, c.p1), gamma);
  const StationaryDist sd = stationary_linear_solve(p);
  CHECK(mean_profit(sd.pi, p, build_payoff(r)).str() == "18/709");
}

TEST_CASE("mean profit rejects a non-stationary distribution") {
  const std::int64_t r = 3;
  const CoinPair c = coin_probs(r, Scalar::ratio(1, 3));
  const SquareMatrix p = build_game_b(r, c.p0, c.p1);
  const ScalarVec uniform(3, Scalar::ratio(1, 3));
  CHECK_THROWS_AS(mean_profit(uniform, p, build_payoff(r)),
                  std::domain_error);
}

TEST_CASE("mixture rates are strictly positive and below one") {
  Xoshiro256PlusPlus rng(57);
  for (int round = 0; round < 40; ++round) {
    const std::int64_t r = 3 + static_cast<std::int64_t>(rng.next_u64() % 10);
    const Scalar rho =
        Scalar::ratio(static_cast<long long>(rng.next_u64() % 100), 100);
    const Scalar gamma =
        Scalar::ratio(1 + static_cast<long long>(rng.next_u64() % 99), 100);
    const Scalar mu = rate_mixture(r, rho, gamma).mu;
    CHECK(mu.sign() == 1);
    CHECK(mu < Scalar::ratio(1));
  }
}

TEST_CASE("float mode tracks exact mixture rates") {
  for (std::int64_t r : {3, 5, 8, 20}) {
    const Scalar exact =
        rate_mixture(r, Scalar::ratio(1, 3), Scalar::ratio(2, 5)).mu;
    const Scalar approx =
        rate_mixture(r, Scalar::real(1.0 / 3.0), Scalar::real(0.4)).mu;
    CHECK(approx.backend() == Backend::Float);
    CHECK(std::abs(approx.to_double() - exact.to_double()) <=
          1e-12 * exact.to_double());
  }
}

TEST_CASE("large-r gap matches its leading-order prediction") {
  const AsymptoticCheck big = asymptotic_gap_check(100000000);
  CHECK(big.parameter == doctest::Approx(2.0 / 10000.0));
  CHECK(big.reference == doctest::Approx(4.0 / 10000.0));
  CHECK(big.ratio == doctest::Approx(0.99975007).epsilon(1e-6));

  // The ratio keeps improving with r.
  const double r1 = asymptotic_gap_check(10000).ratio;
  const double r2 = asymptotic_gap_check(1000000).ratio;
  CHECK(std::abs(r2 - 1.0) < std::abs(r1 - 1.0));

  CHECK_THROWS_AS(asymptotic_gap_check(4), std::domain_error);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(rate_mixture(3, Scalar::ratio(1, 3), Scalar::ratio(0)),
                  std::domain_error);
  CHECK_THROWS_AS(rate_mixture(3, Scalar::ratio(1, 3), Scalar::ratio(1)),
                  std::domain_error);
  CHECK_THROWS_AS(rate_mixture(2, Scalar::ratio(1, 3), Scalar::ratio(1, 2)),
                  std::domain_error);
  CHECK_THROWS_AS(rate_mixture_rho0(2, Scalar::ratio(1, 2)),
                  std::domain_error);
}
