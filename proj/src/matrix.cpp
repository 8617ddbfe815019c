#include "parrondo/matrix.hpp"

#include <stdexcept>

namespace parrondo {

SquareMatrix::SquareMatrix(std::int64_t n, Backend backend)
    : n_(n), backend_(backend) {
  if (n < 1) throw std::domain_error("SquareMatrix: size must be >= 1");
  if (n > 10000)
    throw std::domain_error("SquareMatrix: dense storage capped at n <= 10000");
  a_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
            Scalar::zero(backend));
}

SquareMatrix SquareMatrix::to_backend(Backend b) const {
  SquareMatrix out(n_, b);
  for (std::size_t k = 0; k < a_.size(); ++k) out.a_[k] = a_[k].to_backend(b);
  return out;
}

bool SquareMatrix::row_stochastic(double tol) const {
  const Scalar lo = Scalar::zero(backend_), hi = Scalar::one(backend_);
  const Scalar eps =
      backend_ == Backend::Exact ? Scalar::ratio(0) : Scalar::real(tol);
  for (std::int64_t i = 0; i < n_; ++i) {
    Scalar sum = Scalar::zero(backend_);
    for (std::int64_t j = 0; j < n_; ++j) {
      const Scalar& e = at(i, j);
      if (e < lo - eps || e > hi + eps) return false;
      sum += e;
    }
    if (abs(sum - hi) > eps) return false;
  }
  return true;
}

SquareMatrix SquareMatrix::operator*(const SquareMatrix& rhs) const {
  if (n_ != rhs.n_)
    throw std::domain_error("SquareMatrix: size mismatch in product");
  Backend b = (backend_ == Backend::Exact && rhs.backend_ == Backend::Exact)
                  ? Backend::Exact
                  : Backend::Float;
  SquareMatrix out(n_, b);
  for (std::int64_t i = 0; i < n_; ++i)
    for (std::int64_t k = 0; k < n_; ++k) {
      const Scalar& aik = at(i, k);
      if (aik.is_zero()) continue;
      for (std::int64_t j = 0; j < n_; ++j) {
        if (rhs.at(k, j).is_zero()) continue;
        out.set(i, j, out.at(i, j) + aik * rhs.at(k, j));
      }
    }
  return out;
}

bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.n_ != b.n_) return false;
  for (std::size_t k = 0; k < a.a_.size(); ++k)
    if (a.a_[k] != b.a_[k]) return false;
  return true;
}

ScalarVec row_times(const ScalarVec& v, const SquareMatrix& p) {
  const std::int64_t n = p.size();
  if (static_cast<std::int64_t>(v.size()) != n)
    throw std::domain_error("row_times: size mismatch");
  Backend b = p.backend();
  for (const Scalar& x : v)
    if (!x.is_exact()) b = Backend::Float;
  ScalarVec out(static_cast<std::size_t>(n), Scalar::zero(b));
  for (std::int64_t i = 0; i < n; ++i) {
    if (v[static_cast<std::size_t>(i)].is_zero()) continue;
    for (std::int64_t j = 0; j < n; ++j) {
      if (p.at(i, j).is_zero()) continue;
      out[static_cast<std::size_t>(j)] +=
          v[static_cast<std::size_t>(i)] * p.at(i, j);
    }
  }
  return out;
}

Scalar stationary_residual(const ScalarVec& v, const SquareMatrix& p) {
  ScalarVec w = row_times(v, p);
  Scalar worst = Scalar::zero(p.backend());
  for (std::size_t j = 0; j < w.size(); ++j) {
    Scalar d = abs(w[j] - v[j]);
    if (d > worst) worst = d;
  }
  return worst;
}

nlohmann::json matrix_to_json(const SquareMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::int64_t i = 0; i < m.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::int64_t j = 0; j < m.size(); ++j) {
      const Scalar& e = m.at(i, j);
      if (e.is_exact())
        row.push_back(e.str());
      else
        row.push_back(e.to_double());
    }
    rows.push_back(std::move(row));
  }
  return {{"size", m.size()},
          {"backend", to_string(m.backend())},
          {"rows", std::move(rows)}};
}

SquareMatrix matrix_from_json(const nlohmann::json& j) {
  const std::int64_t n = j.at("size").get<std::int64_t>();
  const std::string be = j.at("backend").get<std::string>();
  if (be != "exact" && be != "float")
    throw std::invalid_argument("matrix_from_json: unknown backend tag");
  const Backend b = be == "exact" ? Backend::Exact : Backend::Float;
  const auto& rows = j.at("rows");
  if (static_cast<std::int64_t>(rows.size()) != n)
    throw std::invalid_argument("matrix_from_json: row count mismatch");
  SquareMatrix m(n, b);
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& row = rows.at(static_cast<std::size_t>(i));
    if (static_cast<std::int64_t>(row.size()) != n)
      throw std::invalid_argument("matrix_from_json: column count mismatch");
    for (std::int64_t jj = 0; jj < n; ++jj) {
      const auto& cell = row.at(static_cast<std::size_t>(jj));
      std::optional<Scalar> s;
      if (cell.is_string())
        s = Scalar::parse(cell.get<std::string>(), b);
      else if (cell.is_number())
        s = b == Backend::Exact
                ? Scalar::parse(cell.dump(), Backend::Exact)
                : std::optional<Scalar>(Scalar::real(cell.get<double>()));
      if (!s) throw std::invalid_argument("matrix_from_json: bad entry");
      m.set(i, jj, *s);
    }
  }
  return m;
}

nlohmann::json vector_to_json(const ScalarVec& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const Scalar& e : v) {
    if (e.is_exact())
      out.push_back(e.str());
    else
      out.push_back(e.to_double());
  }
  return out;
}

}  // namespace parrondo
