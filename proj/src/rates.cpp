#include "parrondo/rates.hpp"

#include <cmath>
#include <stdexcept>

namespace parrondo {

const char* to_string(RateMethod m) {
  switch (m) {
    case RateMethod::StationaryFunctional: return "stationary-functional";
    case RateMethod::MixtureClosedForm: return "mixture-closed-form";
    case RateMethod::PatternComposite: return "pattern-composite";
    case RateMethod::AbsbClosedForm: return "absb-closed-form";
    case RateMethod::MonteCarlo: return "monte-carlo";
  }
  return "?";
}

const char* to_string(ParityNote n) {
  switch (n) {
    case ParityNote::Any: return "any";
    case ParityNote::EvenOnly: return "even-only";
    case ParityNote::OddOnly: return "odd-only";
    case ParityNote::OddIsZero: return "odd-is-zero";
  }
  return "?";
}

Scalar mean_profit(const ScalarVec& pi, const SquareMatrix& p,
                   const SquareMatrix& w, double tol) {
  const std::int64_t n = p.size();
  if (w.size() != n || static_cast<std::int64_t>(pi.size()) != n)
    throw std::domain_error("mean_profit: size mismatch");
  const Scalar res = stationary_residual(pi, p);
  if (res.is_exact() ? !res.is_zero() : res.to_double() > tol)
    throw std::domain_error("mean_profit: pi is not stationary for P");

  Scalar mu = Scalar::zero(p.backend());
  for (std::int64_t i = 0; i < n; ++i) {
    const Scalar& weight = pi[static_cast<std::size_t>(i)];
    if (weight.is_zero()) continue;
    for (std::int64_t j = 0; j < n; ++j) {
      if (p.at(i, j).is_zero() || w.at(i, j).is_zero()) continue;
      mu += weight * p.at(i, j) * w.at(i, j);
    }
  }
  return mu;
}

namespace {

void check_gamma(const Scalar& gamma) {
  if (gamma.sign() <= 0 || gamma >= Scalar::one(gamma.backend()))
    throw std::domain_error("gamma must lie in (0,1)");
}

}  // namespace

MixtureProbs mixture_probs(std::int64_t r, const Scalar& rho,
                           const Scalar& gamma) {
  check_gamma(gamma);
  const CoinPair c = coin_probs(r, rho);
  const Backend b = (rho.is_exact() && gamma.is_exact()) ? Backend::Exact
                                                         : Backend::Float;
  const Scalar g = gamma.to_backend(b);
  const Scalar half = Scalar::ratio(1, 2).to_backend(b);
  const Scalar rest = Scalar::one(b) - g;
  return MixtureProbs{g * half + rest * c.p1.to_backend(b),
                      g * half + rest * c.p0.to_backend(b)};
}

RateReport rate_mixture(std::int64_t r, const Scalar& rho,
                        const Scalar& gamma) {
  const MixtureProbs mp = mixture_probs(r, rho, gamma);
  const Backend b = mp.p.backend();
  const Scalar one = Scalar::one(b);
  const Scalar q = one - mp.p, q0 = one - mp.p0;

  // rho = 0 puts the mixture walk exactly on the mirrored defect p0 = q,
  // where the single-defect form divides zero by zero.
  const Scalar pi0 = rho.is_zero() ? pi0_mirrored_defect(r, mp.p)
                                   : pi0_single_defect(r, mp.p, mp.p0);
  const Scalar mu = pi0 * (mp.p0 - q0) + (one - pi0) * (mp.p - q);
  return RateReport{mu, RateMethod::StationaryFunctional, ParityNote::Any, b};
}

namespace {

// Shared pieces of the rho = 0 closed form: u = gamma/(2-gamma),
// c = r*u*(1-u^(r-2)) and d = 2*(1-u^r), so mu = (1-gamma)*c/(c+d) and
// 1 - mu = (d + gamma*c)/(c + d).
struct Rho0Parts {
  Scalar c, d, rest;  // rest = 1 - gamma
};

Rho0Parts rho0_parts(std::int64_t r, const Scalar& gamma) {
  if (r < 3) throw std::domain_error("r must be >= 3");
  check_gamma(gamma);
  const Backend b = gamma.backend();
  const Scalar one = Scalar::one(b);
  const Scalar two = Scalar::ratio(2).to_backend(b);
  const Scalar u = gamma / (two - gamma);
  const Scalar c =
      Scalar::ratio(r).to_backend(b) * u * one_minus_pow(u, r - 2);
  const Scalar d = two * one_minus_pow(u, r);
  return Rho0Parts{c, d, one - gamma};
}

}  // namespace

RateReport rate_mixture_rho0(std::int64_t r, const Scalar& gamma) {
  const Rho0Parts parts = rho0_parts(r, gamma);
  const Scalar mu = parts.rest * parts.c / (parts.c + parts.d);
  return RateReport{mu, RateMethod::MixtureClosedForm, ParityNote::Any,
                    gamma.backend()};
}

Scalar gap_mixture_rho0(std::int64_t r, const Scalar& gamma) {
  const Rho0Parts parts = rho0_parts(r, gamma);
  return (parts.d + gamma * parts.c) / (parts.c + parts.d);
}

AsymptoticCheck asymptotic_gap_check(std::int64_t r) {
  if (r < 5)
    throw std::domain_error(
        "asymptotic_gap_check: need r >= 5 so that 2/sqrt(r) < 1");
  const double gamma = 2.0 / std::sqrt(static_cast<double>(r));
  const double gap = gap_mixture_rho0(r, Scalar::real(gamma)).to_double();
  const double ref = 4.0 / std::sqrt(static_cast<double>(r));
  return AsymptoticCheck{gamma, gap, ref, gap / ref};
}

}  // namespace parrondo
