#include "parrondo/games.hpp"

#include <stdexcept>

namespace parrondo {

namespace {

void check_r(std::int64_t r) {
  if (r < 3) throw std::domain_error("r must be >= 3");
}

void check_r_dense(std::int64_t r) {
  check_r(r);
  if (r > 10000)
    throw std::domain_error("dense transition matrices are limited to r <= 10000");
}

void check_prob_open(const Scalar& p, const char* name) {
  if (p.sign() <= 0 || p >= Scalar::one(p.backend())) {
    throw std::domain_error(std::string(name) + " must lie in (0,1)");
  }
}

}  // namespace

CoinPair coin_probs(std::int64_t r, const Scalar& rho) {
  check_r(r);
  if (rho.sign() < 0 || rho >= Scalar::one(rho.backend()))
    throw std::domain_error("rho must lie in [0,1)");
  const Scalar one = Scalar::one(rho.backend());
  const Scalar rr = rho.pow(r - 1);
  return CoinPair{rr / (one + rr), one / (one + rho)};
}

GameParams GameParams::make(std::int64_t r, const Scalar& rho,
                            std::optional<Scalar> gamma) {
  CoinPair c = coin_probs(r, rho);
  if (gamma) {
    if (gamma->sign() <= 0 || *gamma >= Scalar::one(gamma->backend()))
      throw std::domain_error("gamma must lie in (0,1)");
  }
  return GameParams{r, rho, c.p0, c.p1, std::move(gamma)};
}

SquareMatrix build_game_a(std::int64_t r, Backend backend) {
  check_r_dense(r);
  SquareMatrix p(r, backend);
  const Scalar half = Scalar::ratio(1, 2).to_backend(backend);
  for (std::int64_t i = 0; i < r; ++i) {
    p.set(i, (i + 1) % r, half);
    p.set(i, (i + r - 1) % r, half);
  }
  return p;
}

SquareMatrix build_game_b(std::int64_t r, const Scalar& p0, const Scalar& p1) {
  check_r_dense(r);
  // rho = 0 degenerates to p0 = 0, p1 = 1, which is still a valid chain.
  if (p1.sign() <= 0 || p1 > Scalar::one(p1.backend()))
    throw std::domain_error("p1 must lie in (0,1]");
  if (p0.sign() < 0 || p0 >= Scalar::one(p0.backend()))
    throw std::domain_error("p0 must lie in [0,1)");
  Backend backend = (p0.is_exact() && p1.is_exact()) ? Backend::Exact
                                                     : Backend::Float;
  const Scalar one = Scalar::one(backend);
  SquareMatrix p(r, backend);
  for (std::int64_t i = 0; i < r; ++i) {
    const Scalar& up = i == 0 ? p0 : p1;
    p.set(i, (i + 1) % r, up);
    p.set(i, (i + r - 1) % r, one - up.to_backend(backend));
  }
  return p;
}

SquareMatrix build_payoff(std::int64_t r, Backend backend) {
  check_r_dense(r);
  SquareMatrix w(r, backend);
  const Scalar plus = Scalar::ratio(1).to_backend(backend);
  for (std::int64_t i = 0; i < r; ++i) {
    w.set(i, (i + 1) % r, plus);
    w.set(i, (i + r - 1) % r, -plus);
  }
  return w;
}

SquareMatrix mix(const SquareMatrix& a, const SquareMatrix& b,
                 const Scalar& gamma) {
  if (a.size() != b.size())
    throw std::domain_error("mix: size mismatch");
  check_prob_open(gamma, "gamma");
  Backend backend = (a.backend() == Backend::Exact &&
                     b.backend() == Backend::Exact && gamma.is_exact())
                        ? Backend::Exact
                        : Backend::Float;
  const Scalar g = gamma.to_backend(backend);
  const Scalar h = Scalar::one(backend) - g;
  SquareMatrix out(a.size(), backend);
  for (std::int64_t i = 0; i < a.size(); ++i)
    for (std::int64_t j = 0; j < a.size(); ++j) {
      if (a.at(i, j).is_zero() && b.at(i, j).is_zero()) continue;
      out.set(i, j, g * a.at(i, j) + h * b.at(i, j));
    }
  return out;
}

}  // namespace parrondo
