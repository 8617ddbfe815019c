#include "parrondo/cycle_walk.hpp"

#include <stdexcept>

namespace parrondo {

namespace {

void check_prob_open(const Scalar& p, const char* what) {
  if (p.sign() <= 0 || p >= Scalar::one(p.backend()))
    throw std::domain_error(std::string(what) + " must lie in (0,1)");
}

Scalar scalar_int(std::int64_t k, Backend b) {
  return Scalar::ratio(k).to_backend(b);
}

}  // namespace

const char* to_string(StationaryMethod m) {
  switch (m) {
    case StationaryMethod::CycleProduct: return "cycle-product";
    case StationaryMethod::SingleDefectClosedForm: return "single-defect-closed-form";
    case StationaryMethod::MirroredDefectClosedForm: return "mirrored-defect-closed-form";
    case StationaryMethod::LinearSolve: return "linear-solve";
  }
  return "?";
}

CycleWalk::CycleWalk(std::int64_t n_, ScalarVec up_) : n(n_), up(std::move(up_)) {
  if (n < 3) throw std::domain_error("CycleWalk: n must be >= 3");
  if (static_cast<std::int64_t>(up.size()) != n)
    throw std::domain_error("CycleWalk: up-probability count must equal n");
  for (const Scalar& p : up) check_prob_open(p, "up-probability");
}

Backend CycleWalk::backend() const {
  for (const Scalar& p : up)
    if (!p.is_exact()) return Backend::Float;
  return Backend::Exact;
}

StationaryDist stationary_general(const CycleWalk& w) {
  const Backend b = w.backend();
  const std::size_t n = static_cast<std::size_t>(w.n);
  const Scalar one = Scalar::one(b);

  // ratio_i = p_i / q_i, R_i = prod_{j<i} ratio_j, T_{i+1} = 1 + ratio_i T_i.
  ScalarVec ratio(n, one);
  for (std::size_t i = 0; i < n; ++i)
    ratio[i] = w.up[i].to_backend(b) / w.down(static_cast<std::int64_t>(i)).to_backend(b);

  ScalarVec bigr(n + 1, one), bigt(n + 1, one);  // bigt[0] unused
  for (std::size_t i = 1; i <= n; ++i) bigr[i] = bigr[i - 1] * ratio[i - 1];
  for (std::size_t i = 1; i < n; ++i) bigt[i + 1] = one + ratio[i] * bigt[i];

  const Scalar d = (bigr[n] - one) / bigt[n];
  const Scalar q0 = w.down(0).to_backend(b);

  ScalarVec weight(n, one);
  Scalar total = one;  // weight[0] = 1
  for (std::size_t i = 1; i < n; ++i) {
    weight[i] = q0 / w.down(static_cast<std::int64_t>(i)).to_backend(b) *
                (bigr[i] - d * bigt[i]);
    total += weight[i];
  }

  ScalarVec pi(n, one);
  for (std::size_t i = 0; i < n; ++i) pi[i] = weight[i] / total;
  return StationaryDist{std::move(pi), StationaryMethod::CycleProduct, b};
}

StationaryDist stationary_linear_solve(const SquareMatrix& p) {
  const std::int64_t n = p.size();
  if (n < 1) throw std::domain_error("stationary_linear_solve: need n >= 1");
  if (!p.row_stochastic())
    throw std::domain_error("stationary_linear_solve: matrix is not row-stochastic");
  const Backend b = p.backend();
  const Scalar zero = Scalar::zero(b), one = Scalar::one(b);

  // Solve A x = e_{n-1} where A is P^T - I with its last row replaced by
  // ones; the replacement encodes the normalization sum x = 1. A is
  // nonsingular exactly when the stationary distribution is unique.
  std::vector<ScalarVec> a(static_cast<std::size_t>(n),
                           ScalarVec(static_cast<std::size_t>(n + 1), zero));
  for (std::int64_t i = 0; i + 1 < n; ++i)
    for (std::int64_t j = 0; j < n; ++j) {
      Scalar v = p.at(j, i);
      if (i == j) v -= one;
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
    }
  for (std::int64_t j = 0; j <= n; ++j)
    a[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(j)] = one;

  // Gaussian elimination; partial pivoting matters only in float mode but
  // is harmless for exact rationals.
  for (std::int64_t col = 0; col < n; ++col) {
    std::int64_t piv = -1;
    Scalar best = zero;
    for (std::int64_t row = col; row < n; ++row) {
      Scalar mag = abs(a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]);
      if (mag > best) { best = mag; piv = row; }
    }
    if (piv < 0)
      throw std::runtime_error(
          "stationary_linear_solve: no unique stationary distribution "
          "(matrix is reducible)");
    std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(piv)]);
    const ScalarVec& prow = a[static_cast<std::size_t>(col)];
    for (std::int64_t row = 0; row < n; ++row) {
      if (row == col) continue;
      Scalar f = a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] /
                 prow[static_cast<std::size_t>(col)];
      if (f.is_zero()) continue;
      for (std::int64_t j = col; j <= n; ++j)
        a[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] -=
            f * prow[static_cast<std::size_t>(j)];
    }
  }

  ScalarVec pi(static_cast<std::size_t>(n), zero);
  const double tol = 1e-12;
  for (std::int64_t i = 0; i < n; ++i) {
    Scalar x = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)] /
               a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    if (x.sign() < 0) {
      if (b == Backend::Exact || x.to_double() < -tol)
        throw std::runtime_error(
            "stationary_linear_solve: negative solution component");
      x = zero;
    }
    pi[static_cast<std::size_t>(i)] = x;
  }
  return StationaryDist{std::move(pi), StationaryMethod::LinearSolve, b};
}

Scalar pi0_single_defect(std::int64_t n, const Scalar& p, const Scalar& p0) {
  if (n < 3) throw std::domain_error("pi0_single_defect: n must be >= 3");
  check_prob_open(p, "p");
  check_prob_open(p0, "p0");
  const Backend b =
      (p.is_exact() && p0.is_exact()) ? Backend::Exact : Backend::Float;
  const Scalar one = Scalar::one(b);
  const Scalar half = Scalar::ratio(1, 2).to_backend(b);
  if (p == half)
    throw std::domain_error(
        "pi0_single_defect: singular at p = 1/2, use stationary_general");
  const Scalar pp = p.to_backend(b), pp0 = p0.to_backend(b);
  const Scalar q = one - pp, q0 = one - pp0;

  // 1/pi_0 = 1 - (p0-q0)/(p-q) + n (p0 p^(n-1) - q0 q^(n-1)) / (p^n - q^n),
  // evaluated in ratio form with u = min(p,q)/max(p,q) so large n neither
  // overflows nor cancels.
  const bool up_biased = pp > q;
  const Scalar u = up_biased ? q / pp : pp / q;
  const Scalar big = up_biased ? pp : q;          // max(p, q)
  const Scalar lead = up_biased ? pp0 : q0;       // coefficient of big^(n-1)
  const Scalar trail = up_biased ? q0 : pp0;
  const Scalar frac =
      (lead - trail * u.pow(n - 1)) / (big * one_minus_pow(u, n));
  const Scalar s =
      one - (pp0 - q0) / (pp - q) + scalar_int(n, b) * frac;
  return one / s;
}

Scalar pi0_mirrored_defect(std::int64_t n, const Scalar& p) {
  if (n < 3) throw std::domain_error("pi0_mirrored_defect: n must be >= 3");
  check_prob_open(p, "p");
  const Backend b = p.backend();
  const Scalar one = Scalar::one(b);
  const Scalar half = Scalar::ratio(1, 2).to_backend(b);
  if (p == half)
    throw std::domain_error(
        "pi0_mirrored_defect: singular at p = 1/2, use stationary_general");
  const Scalar q = one - p;
  const Scalar u = p > q ? q / p : p / q;
  const Scalar s = Scalar::ratio(2).to_backend(b) +
                   scalar_int(n, b) * u * stable_power_ratio(u, n - 2, n);
  return one / s;
}

SquareMatrix cycle_matrix(const CycleWalk& w) {
  SquareMatrix p(w.n, w.backend());
  for (std::int64_t i = 0; i < w.n; ++i) {
    p.set(i, (i + 1) % w.n, w.up[static_cast<std::size_t>(i)]);
    p.set(i, (i + w.n - 1) % w.n, w.down(i));
  }
  return p;
}

CycleWalk walk_from_matrix(const SquareMatrix& p) {
  const std::int64_t n = p.size();
  if (n < 3) throw std::domain_error("walk_from_matrix: need n >= 3");
  ScalarVec up;
  up.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < n; ++j) {
      if (j == (i + 1) % n || j == (i + n - 1) % n) continue;
      if (!p.at(i, j).is_zero())
        throw std::domain_error(
            "walk_from_matrix: support off the cyclic off-diagonals");
    }
    const Scalar& u = p.at(i, (i + 1) % n);
    const Scalar& d = p.at(i, (i + n - 1) % n);
    const Scalar gap = abs(u + d - Scalar::one(p.backend()));
    if (p.backend() == Backend::Exact ? !gap.is_zero()
                                      : gap.to_double() > 1e-12)
      throw std::domain_error("walk_from_matrix: rows must sum to one");
    up.push_back(u);
  }
  return CycleWalk(n, std::move(up));
}

}  // namespace parrondo
