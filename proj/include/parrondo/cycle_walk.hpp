#pragma once

// Stationary distributions of nearest-neighbour random walks on the cycle
// Z/nZ with site-dependent up-probabilities p_i in (0,1).
//
// The unnormalized weights admit a product form. With ratio_i = p_i/q_i,
// running products R_i = ratio_0 * ... * ratio_{i-1} and the recurrence
// T_1 = 1, T_{i+1} = 1 + ratio_i * T_i, the weight of site i is
//   Pi_0 = 1,   Pi_i = (q_0 / q_i) * (R_i - D * T_i),   D = (R_n - 1) / T_n,
// which evaluates the whole distribution in O(n) arithmetic operations and
// has no singularity at p_i = 1/2.

#include <cstdint>

#include "parrondo/matrix.hpp"
#include "parrondo/scalar.hpp"

namespace parrondo {

struct CycleWalk {
  std::int64_t n;
  ScalarVec up;  // up[i] = P(i -> i+1 mod n), each in (0,1)

  CycleWalk(std::int64_t n_, ScalarVec up_);

  Backend backend() const;
  Scalar down(std::int64_t i) const {  // P(i -> i-1 mod n)
    return Scalar::one(backend()) - up[static_cast<std::size_t>(i)];
  }
};

enum class StationaryMethod {
  CycleProduct,             // O(n) product-form evaluation
  SingleDefectClosedForm,   // one special site, constant elsewhere
  MirroredDefectClosedForm, // special site's up-prob equals 1 - p
  LinearSolve,              // dense Gaussian elimination on pi P = pi
};

const char* to_string(StationaryMethod m);

struct StationaryDist {
  ScalarVec pi;  // nonnegative, sums to 1
  StationaryMethod method;
  Backend backend;
};

// Product-form evaluation; exact when the walk is exact.
StationaryDist stationary_general(const CycleWalk& w);

// Solves pi P = pi, sum pi = 1 by elimination. Works for any row-stochastic
// P with a unique stationary distribution, periodic chains included; a
// reducible P with several closed classes raises an error. A 1x1 matrix is
// accepted (an absorbing state has the point mass as its distribution) --
// deterministic play specs really do produce singleton recurrent classes.
StationaryDist stationary_linear_solve(const SquareMatrix& p);

// Probability of the special site 0 when up[0] = p0 and up[i] = p elsewhere.
// Requires p != 1/2 (the constant-bias closed form is singular there;
// callers fall back to stationary_general).
Scalar pi0_single_defect(std::int64_t n, const Scalar& p, const Scalar& p0);

// Same walk with the defect mirrored: up[0] = 1 - p. Evaluates
//   pi_0 = 1 / (2 + n*u*(1 - u^(n-2))/(1 - u^n)),  u = min(p,q)/max(p,q),
// which stays accurate in float mode up to n ~ 1e7.
Scalar pi0_mirrored_defect(std::int64_t n, const Scalar& p);

SquareMatrix cycle_matrix(const CycleWalk& w);

// Inverse of cycle_matrix: requires support only on the two cyclic
// off-diagonals and rows summing to one.
CycleWalk walk_from_matrix(const SquareMatrix& p);

}  // namespace parrondo
