#pragma once

// Dense square matrices over Scalar. Entries are coerced to the matrix
// backend on assignment, so a matrix is uniformly exact or uniformly float.

#include <cstdint>

#include "json.hpp"
#include "parrondo/scalar.hpp"

namespace parrondo {

class SquareMatrix {
 public:
  // Zero-filled n x n. Dense storage is capped at n <= 10000.
  SquareMatrix(std::int64_t n, Backend backend);

  std::int64_t size() const { return n_; }
  Backend backend() const { return backend_; }

  const Scalar& at(std::int64_t i, std::int64_t j) const {
    return a_[static_cast<std::size_t>(i * n_ + j)];
  }
  void set(std::int64_t i, std::int64_t j, const Scalar& v) {
    a_[static_cast<std::size_t>(i * n_ + j)] = v.to_backend(backend_);
  }

  SquareMatrix to_backend(Backend b) const;

  // Every entry in [0,1] and every row summing to 1 (within tol for the
  // float backend, exactly for the exact backend).
  bool row_stochastic(double tol = 1e-12) const;

  SquareMatrix operator*(const SquareMatrix& rhs) const;

  friend bool operator==(const SquareMatrix& a, const SquareMatrix& b);

 private:
  std::int64_t n_;
  Backend backend_;
  ScalarVec a_;
};

// Left action of a row vector: (v P)_j = sum_i v_i P_ij.
ScalarVec row_times(const ScalarVec& v, const SquareMatrix& p);

// max_j |(v P - v)_j|; zero exactly when v is stationary for P.
Scalar stationary_residual(const ScalarVec& v, const SquareMatrix& p);

nlohmann::json matrix_to_json(const SquareMatrix& m);
SquareMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json vector_to_json(const ScalarVec& v);

}  // namespace parrondo
