#pragma once

// Exact integers/rationals (GMP) and variable-precision reals (MPFR via
// Boost.Multiprecision), plus the decimal rendering helpers shared by the
// CLI and the acceptance suite.

#include <gmpxx.h>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sitlab {

using BigInt = mpz_class;
using Rational = mpq_class;
using Real = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultDigits = 60;

inline BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline BigInt pow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rational pow(const Rational& base, unsigned long e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
  r.canonicalize();
  return r;
}

inline std::string to_decimal(const BigInt& v) { return v.get_str(10); }

/// Sets the default MPFR precision (in decimal digits) for the lifetime of
/// the guard; the previous precision is restored on destruction.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned digits) : saved_(Real::default_precision()) {
    Real::default_precision(digits);
  }
  ~PrecisionGuard() { Real::default_precision(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

inline Real to_real(const BigInt& v) {
  Real r;
  mpfr_set_z(r.backend().data(), v.get_mpz_t(), MPFR_RNDN);
  return r;
}

inline Real to_real(const Rational& v) {
  Real r;
  mpfr_set_q(r.backend().data(), v.get_mpq_t(), MPFR_RNDN);
  return r;
}

/// Exact conversion of a finite real to a rational.
inline Rational to_rational(const Real& v) {
  BigInt mant;
  const long exp = mpfr_get_z_2exp(mant.get_mpz_t(), v.backend().data());
  Rational r(mant);
  if (exp >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(exp));
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-exp));
  }
  return r;
}

/// Parses a decimal literal such as "1e-10" or "0.58" into an exact rational.
inline Rational parse_decimal(const std::string& text) {
  std::string mantissa = text;
  long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string::npos) {
    mantissa = text.substr(0, e);
    exponent = std::stol(text.substr(e + 1));
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    negative = mantissa[0] == '-';
    mantissa.erase(0, 1);
  }
  std::string digits;
  for (char c : mantissa) {
    if (c == '.') {
      continue;
    }
    if (c < '0' || c > '9') {
      throw std::invalid_argument("malformed decimal literal: " + text);
    }
    digits.push_back(c);
  }
  if (digits.empty()) {
    throw std::invalid_argument("malformed decimal literal: " + text);
  }
  if (const auto dot = mantissa.find('.'); dot != std::string::npos) {
    exponent -= static_cast<long>(mantissa.size() - dot - 1);
  }
  Rational r{BigInt(digits, 10)};
  const BigInt scale = pow(BigInt(10), static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0) {
    r *= scale;
  } else {
    r /= scale;
  }
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

namespace detail {

// floor(log10(v)) for v > 0, exact.
inline long decimal_exponent(const Rational& v) {
  long e = static_cast<long>(mpz_sizeinbase(v.get_num_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(v.get_den_mpz_t(), 10));
  auto ten_pow = [](long p) {
    Rational r(1);
    const BigInt t = pow(BigInt(10), static_cast<unsigned long>(p < 0 ? -p : p));
    if (p >= 0) {
      r = t;
    } else {
      r = Rational(BigInt(1), t);
    }
    return r;
  };
  while (ten_pow(e) > v) {
    --e;
  }
  while (ten_pow(e + 1) <= v) {
    ++e;
  }
  return e;
}

inline std::string place_point(const std::string& digits, long exponent) {
  // digits d0 d1 ... represent d0.d1d2... * 10^exponent
  std::string out;
  if (exponent < 0) {
    out = "0." + std::string(static_cast<std::size_t>(-exponent - 1), '0') + digits;
  } else if (static_cast<std::size_t>(exponent + 1) >= digits.size()) {
    out = digits + std::string(static_cast<std::size_t>(exponent + 1) - digits.size(), '0');
  } else {
    out = digits.substr(0, static_cast<std::size_t>(exponent + 1)) + "." +
          digits.substr(static_cast<std::size_t>(exponent + 1));
  }
  return out;
}

}  // namespace detail

enum class DigitRule { round_half_up, truncate };

/// Fixed-point rendering of a positive rational with `significant` digits.
inline std::string to_significant(const Rational& value, int significant,
                                  DigitRule rule = DigitRule::round_half_up) {
  if (significant < 1) {
    throw std::invalid_argument("significant digits must be positive");
  }
  if (value == 0) {
    return "0";
  }
  const bool negative = value < 0;
  const Rational v = negative ? Rational(-value) : value;
  long e = detail::decimal_exponent(v);
  const long shift = significant - 1 - e;
  Rational scaled = v;
  const BigInt t = pow(BigInt(10), static_cast<unsigned long>(shift < 0 ? -shift : shift));
  if (shift >= 0) {
    scaled *= t;
  } else {
    scaled /= t;
  }
  BigInt q;
  if (rule == DigitRule::truncate) {
    mpz_fdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  } else {
    const Rational shifted = scaled + Rational(1, 2);
    mpz_fdiv_q(q.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  }
  std::string digits = q.get_str();
  if (static_cast<int>(digits.size()) > significant) {  // rounding carried into a new digit
    digits.pop_back();
    ++e;
  }
  return (negative ? "-" : "") + detail::place_point(digits, e);
}

inline std::string to_significant(const Real& value, int significant) {
  if (value == 0) {
    return "0";
  }
  return to_significant(to_rational(value), significant);
}

/// Scientific rendering for values that may overflow fixed notation.
inline std::string to_scientific(const Real& value, int significant) {
  return value.str(significant, std::ios_base::scientific);
}

}  // namespace sitlab
