#pragma once

// Scalar: one value type over two interchangeable numeric backends, exact
// arbitrary-precision rationals (GMP) and IEEE doubles. Mixed-mode
// arithmetic is contagious: any Float operand makes the result Float.
//
// The stabilized kernels one_minus_pow and stable_power_ratio evaluate
// 1-u^a and (1-u^a)/(1-u^b) without overflow, underflow or cancellation
// for exponents up to ~1e7, which the long-run rate formulas need.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace parrondo {

enum class Backend { Exact, Float };

const char* to_string(Backend b);

class Scalar {
 public:
  Scalar() : v_(mpq_class(0)) {}

  // Exact constructors.
  static Scalar ratio(long long num, long long den = 1);
  static Scalar exact(mpq_class q);
  static Scalar integer(std::int64_t n) { return ratio(n); }

  // Float constructor.
  static Scalar real(double x) { return Scalar(x); }

  static Scalar zero(Backend b);
  static Scalar one(Backend b);

  Backend backend() const {
    return std::holds_alternative<mpq_class>(v_) ? Backend::Exact
                                                 : Backend::Float;
  }
  bool is_exact() const { return backend() == Backend::Exact; }

  double to_double() const;
  const mpq_class& rational() const;  // Exact mode only

  // Exact -> Float is lossy; Float -> Exact takes the double's exact value.
  Scalar to_backend(Backend b) const;

  bool is_zero() const;
  int sign() const;

  // Nonnegative integer exponent.
  Scalar pow(std::int64_t e) const;

  // "num/den" (or a bare integer) in Exact mode, shortest round-trip
  // decimal in Float mode.
  std::string str() const;

  // Accepts integers, "num/den" fractions and plain decimals; Float mode
  // additionally accepts anything strtod does. Returns nullopt on garbage.
  static std::optional<Scalar> parse(std::string_view text, Backend b);

  friend Scalar operator-(const Scalar& a);
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);

  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  friend bool operator<(const Scalar& a, const Scalar& b);
  friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }

 private:
  explicit Scalar(mpq_class q) : v_(std::move(q)) {}
  explicit Scalar(double x) : v_(x) {}

  std::variant<mpq_class, double> v_;
};

using ScalarVec = std::vector<Scalar>;

Scalar abs(const Scalar& a);

// 1 - u^a for u in [0,1), a >= 0. Exact in Exact mode; in Float mode
// evaluated as -expm1(a*log1p(u-1)) so u near 1 does not cancel.
Scalar one_minus_pow(const Scalar& u, std::int64_t a);

// (1 - u^a) / (1 - u^b) for u in [0,1), a >= 0, b >= 1.
Scalar stable_power_ratio(const Scalar& u, std::int64_t a, std::int64_t b);

// Shortest decimal string that parses back to exactly x.
std::string double_str(double x);

// Default backend policy: exact arithmetic while fraction sizes stay at
// desk scale (all inputs rational and r <= 64), Float otherwise.
Backend choose_backend(bool rational_inputs, std::int64_t r);

}  // namespace parrondo
