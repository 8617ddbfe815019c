#include "parrondo/scalar.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace parrondo {

const char* to_string(Backend b) {
  return b == Backend::Exact ? "exact" : "float";
}

Scalar Scalar::ratio(long long num, long long den) {
  if (den == 0) throw std::domain_error("Scalar::ratio: zero denominator");
  // long long lands outside gmpxx's constructor set; long is 64-bit here.
  mpq_class q{mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))};
  q.canonicalize();
  return Scalar(std::move(q));
}

Scalar Scalar::exact(mpq_class q) {
  q.canonicalize();
  return Scalar(std::move(q));
}

Scalar Scalar::zero(Backend b) {
  return b == Backend::Exact ? ratio(0) : real(0.0);
}

Scalar Scalar::one(Backend b) {
  return b == Backend::Exact ? ratio(1) : real(1.0);
}

double Scalar::to_double() const {
  if (auto* q = std::get_if<mpq_class>(&v_)) return q->get_d();
  return std::get<double>(v_);
}

const mpq_class& Scalar::rational() const {
  if (auto* q = std::get_if<mpq_class>(&v_)) return *q;
  throw std::logic_error("Scalar::rational: value is in Float mode");
}

Scalar Scalar::to_backend(Backend b) const {
  if (b == backend()) return *this;
  if (b == Backend::Float) return real(to_double());
  // Doubles are dyadic rationals, so this conversion is exact.
  mpq_class q(std::get<double>(v_));
  q.canonicalize();
  return Scalar(std::move(q));
}

bool Scalar::is_zero() const {
  if (auto* q = std::get_if<mpq_class>(&v_)) return sgn(*q) == 0;
  return std::get<double>(v_) == 0.0;
}

int Scalar::sign() const {
  if (auto* q = std::get_if<mpq_class>(&v_)) return sgn(*q);
  double x = std::get<double>(v_);
  return (x > 0) - (x < 0);
}

Scalar Scalar::pow(std::int64_t e) const {
  if (e < 0) throw std::domain_error("Scalar::pow: negative exponent");
  if (auto* q = std::get_if<mpq_class>(&v_)) {
    mpq_class out;
    // Powers of a canonical fraction stay canonical.
    mpz_pow_ui(mpq_numref(out.get_mpq_t()), mpq_numref(q->get_mpq_t()),
               static_cast<unsigned long>(e));
    mpz_pow_ui(mpq_denref(out.get_mpq_t()), mpq_denref(q->get_mpq_t()),
               static_cast<unsigned long>(e));
    return Scalar(std::move(out));
  }
  return Scalar(std::pow(std::get<double>(v_), static_cast<double>(e)));
}

std::string double_str(double x) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string Scalar::str() const {
  if (auto* q = std::get_if<mpq_class>(&v_)) return q->get_str();
  return double_str(std::get<double>(v_));
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::optional<mpq_class> parse_exact(std::string_view text) {
  bool neg = false;
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
    neg = text[0] == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) return std::nullopt;

  mpq_class q;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash), den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    mpz_class n{std::string(num)}, d{std::string(den)};
    if (d == 0) return std::nullopt;
    q = mpq_class(n, d);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot), frac = text.substr(dot + 1);
    if (whole.empty() && frac.empty()) return std::nullopt;
    if (!whole.empty() && !all_digits(whole)) return std::nullopt;
    if (!frac.empty() && !all_digits(frac)) return std::nullopt;
    mpz_class digits(std::string(whole) + std::string(frac), 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    q = mpq_class(digits, den);
  } else {
    if (!all_digits(text)) return std::nullopt;
    q = mpq_class(mpz_class(std::string(text)));
  }
  q.canonicalize();
  if (neg) q = -q;
  return q;
}

std::optional<double> parse_double(std::string_view text) {
  std::string s(text);
  const char* begin = s.c_str();
  char* end = nullptr;
  double x = std::strtod(begin, &end);
  if (end != begin + s.size()) return std::nullopt;
  return x;
}

}  // namespace

std::optional<Scalar> Scalar::parse(std::string_view text, Backend b) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) return std::nullopt;

  if (b == Backend::Exact) {
    auto q = parse_exact(text);
    if (!q) return std::nullopt;
    return Scalar(std::move(*q));
  }
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_double(text.substr(0, slash));
    auto den = parse_double(text.substr(slash + 1));
    if (!num || !den || *den == 0.0) return std::nullopt;
    return Scalar(*num / *den);
  }
  auto x = parse_double(text);
  if (!x) return std::nullopt;
  return Scalar(*x);
}

Scalar operator-(const Scalar& a) {
  if (auto* q = std::get_if<mpq_class>(&a.v_)) return Scalar(mpq_class(-*q));
  return Scalar(-std::get<double>(a.v_));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact())
    return Scalar(mpq_class(a.rational() + b.rational()));
  return Scalar(a.to_double() + b.to_double());
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact())
    return Scalar(mpq_class(a.rational() - b.rational()));
  return Scalar(a.to_double() - b.to_double());
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact())
    return Scalar(mpq_class(a.rational() * b.rational()));
  return Scalar(a.to_double() * b.to_double());
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) {
    if (b.is_zero()) throw std::domain_error("Scalar: division by zero");
    return Scalar(mpq_class(a.rational() / b.rational()));
  }
  return Scalar(a.to_double() / b.to_double());
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.rational() == b.rational();
  return a.to_double() == b.to_double();
}

bool operator<(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.rational() < b.rational();
  return a.to_double() < b.to_double();
}

Scalar abs(const Scalar& a) { return a.sign() < 0 ? -a : a; }

namespace {

void check_power_args(const Scalar& u, std::int64_t a) {
  if (a < 0) throw std::domain_error("one_minus_pow: exponent must be >= 0");
  if (u.sign() < 0 || u >= Scalar::one(u.backend()))
    throw std::domain_error("one_minus_pow: u must lie in [0,1)");
}

}  // namespace

Scalar one_minus_pow(const Scalar& u, std::int64_t a) {
  check_power_args(u, a);
  if (u.is_exact()) return Scalar::ratio(1) - u.pow(a);
  if (a == 0) return Scalar::real(0.0);
  double x = u.to_double();
  if (x == 0.0) return Scalar::real(1.0);
  // 1 - u^a = -expm1(a*log(u)), with log(u) = log1p(u-1) so u near 1
  // keeps full precision.
  return Scalar::real(-std::expm1(static_cast<double>(a) * std::log1p(x - 1.0)));
}

Scalar stable_power_ratio(const Scalar& u, std::int64_t a, std::int64_t b) {
  check_power_args(u, a);
  if (b == 0)
    throw std::domain_error("stable_power_ratio: denominator exponent is zero");
  if (b < 0) throw std::domain_error("stable_power_ratio: exponent must be >= 0");
  if (a == b) return Scalar::one(u.backend());
  return one_minus_pow(u, a) / one_minus_pow(u, b);
}

Backend choose_backend(bool rational_inputs, std::int64_t r) {
  return (rational_inputs && r <= 64) ? Backend::Exact : Backend::Float;
}

}  // namespace parrondo
