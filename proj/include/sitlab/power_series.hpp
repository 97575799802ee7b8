#pragma once

// Truncated formal power series over an exact coefficient ring.
//
// A series of truncation order N stores [z^0] .. [z^N]; every coefficient
// up to N is exact and nothing beyond N is ever read. Binary operations
// truncate to the smaller operand order.

#include "sitlab/numeric.hpp"

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sitlab {

/// Thrown when a quotient or inverse is not defined over the coefficient ring.
class NonInvertibleSeries : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <class R>
struct ring_traits;

template <>
struct ring_traits<BigInt> {
  static BigInt zero() { return BigInt(0); }
  static BigInt one() { return BigInt(1); }
  static bool is_zero(const BigInt& v) { return sgn(v) == 0; }
  static BigInt divide_exact(const BigInt& num, const BigInt& den) {
    if (mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()) == 0) {
      throw NonInvertibleSeries("non-invertible series: quotient is not integral");
    }
    BigInt q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
  }
};

template <>
struct ring_traits<Rational> {
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& v) { return sgn(v) == 0; }
  static Rational divide_exact(const Rational& num, const Rational& den) { return num / den; }
};

template <class R>
class PowerSeries {
 public:
  using traits = ring_traits<R>;

  /// Zero series of the given truncation order.
  explicit PowerSeries(std::size_t order = 0) : coeffs_(order + 1, traits::zero()) {}

  /// Takes ownership of [z^0..z^N]; the order is coeffs.size() - 1.
  explicit PowerSeries(std::vector<R> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
      throw std::invalid_argument("power series needs at least one coefficient");
    }
  }

  static PowerSeries constant(const R& c, std::size_t order) {
    PowerSeries s(order);
    s.coeffs_[0] = c;
    return s;
  }

  static PowerSeries one(std::size_t order) { return constant(traits::one(), order); }

  /// The series z.
  static PowerSeries variable(std::size_t order) {
    PowerSeries s(order);
    if (order >= 1) {
      s.coeffs_[1] = traits::one();
    }
    return s;
  }

  std::size_t order() const { return coeffs_.size() - 1; }

  const R& operator[](std::size_t n) const { return coeffs_[n]; }
  R& operator[](std::size_t n) { return coeffs_[n]; }

  const R& at(std::size_t n) const {
    if (n > order()) {
      throw std::out_of_range("coefficient " + std::to_string(n) + " beyond truncation order " +
                              std::to_string(order()));
    }
    return coeffs_[n];
  }

  std::span<const R> coefficients() const { return coeffs_; }

  /// Index of the first nonzero coefficient, or order() + 1 for the zero series.
  std::size_t valuation() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (!traits::is_zero(coeffs_[i])) {
        return i;
      }
    }
    return coeffs_.size();
  }

  PowerSeries truncated(std::size_t order) const {
    std::vector<R> c(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(std::min(order, this->order()) + 1));
    return PowerSeries(std::move(c));
  }

  friend bool operator==(const PowerSeries& a, const PowerSeries& b) { return a.coeffs_ == b.coeffs_; }

  PowerSeries& operator+=(const PowerSeries& o) {
    coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      coeffs_[i] += o.coeffs_[i];
    }
    return *this;
  }

  PowerSeries& operator-=(const PowerSeries& o) {
    coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      coeffs_[i] -= o.coeffs_[i];
    }
    return *this;
  }

  PowerSeries& operator*=(const R& c) {
    for (auto& v : coeffs_) {
      v *= c;
    }
    return *this;
  }

 private:
  std::vector<R> coeffs_;
};

template <class R>
PowerSeries<R> operator+(PowerSeries<R> a, const PowerSeries<R>& b) {
  a += b;
  return a;
}

template <class R>
PowerSeries<R> operator-(PowerSeries<R> a, const PowerSeries<R>& b) {
  a -= b;
  return a;
}

template <class R>
PowerSeries<R> operator-(const PowerSeries<R>& a) {
  PowerSeries<R> r(a.order());
  for (std::size_t i = 0; i <= a.order(); ++i) {
    r[i] = -a[i];
  }
  return r;
}

template <class R>
PowerSeries<R> operator*(PowerSeries<R> a, const R& c) {
  a *= c;
  return a;
}

/// Quadratic convolution; skips leading zeros of both operands.
template <class R>
PowerSeries<R> operator*(const PowerSeries<R>& a, const PowerSeries<R>& b) {
  const std::size_t n = std::min(a.order(), b.order());
  PowerSeries<R> r(n);
  const std::size_t va = a.valuation();
  const std::size_t vb = b.valuation();
  for (std::size_t i = va; i <= n; ++i) {
    if (ring_traits<R>::is_zero(a[i])) {
      continue;
    }
    for (std::size_t j = vb; i + j <= n; ++j) {
      r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

/// d/dz; the result is valid one order lower.
template <class R>
PowerSeries<R> derivative(const PowerSeries<R>& a) {
  if (a.order() == 0) {
    throw std::domain_error("derivative of an order-0 series carries no information");
  }
  PowerSeries<R> r(a.order() - 1);
  for (std::size_t i = 1; i <= a.order(); ++i) {
    r[i - 1] = a[i] * R(static_cast<long>(i));
  }
  return r;
}

/// Multiplication by z^m; the result is valid m orders higher.
template <class R>
PowerSeries<R> shift_up(const PowerSeries<R>& a, std::size_t m) {
  PowerSeries<R> r(a.order() + m);
  for (std::size_t i = 0; i <= a.order(); ++i) {
    r[i + m] = a[i];
  }
  return r;
}

/// a / b. When b has positive valuation v, a must have valuation >= v and
/// the common factor z^v is cancelled first (the result loses v orders).
template <class R>
PowerSeries<R> quotient(const PowerSeries<R>& a, const PowerSeries<R>& b) {
  using T = ring_traits<R>;
  const std::size_t vb = b.valuation();
  if (vb > b.order()) {
    throw NonInvertibleSeries("non-invertible series: division by zero series");
  }
  if (vb > 0 && a.valuation() < vb) {
    throw NonInvertibleSeries("non-invertible series: divisor has zero constant term");
  }
  const std::size_t n = std::min(a.order(), b.order()) - vb;
  PowerSeries<R> q(n);
  const R& lead = b[vb];
  for (std::size_t i = 0; i <= n; ++i) {
    R acc = a[i + vb];
    for (std::size_t j = 1; j <= i; ++j) {
      acc -= q[i - j] * b[j + vb];
    }
    q[i] = T::divide_exact(acc, lead);
  }
  return q;
}

template <class R>
PowerSeries<R> inverse(const PowerSeries<R>& b) {
  return quotient(PowerSeries<R>::one(b.order()), b);
}

/// Evaluates sum_j poly[j] * x^j by Horner's rule, truncated to x's order.
/// Requires x to have zero constant term when poly is long, which keeps the
/// truncation exact.
template <class R>
PowerSeries<R> compose_polynomial(std::span<const R> poly, const PowerSeries<R>& x) {
  const std::size_t n = x.order();
  PowerSeries<R> acc(n);
  if (poly.empty()) {
    return acc;
  }
  for (std::size_t j = poly.size(); j-- > 0;) {
    acc = acc * x;
    acc[0] += poly[j];
  }
  return acc;
}

/// x / (1 - x), the sequence construction Seq>=1.
template <class R>
PowerSeries<R> sequence_at_least_one(const PowerSeries<R>& x) {
  return quotient(x, PowerSeries<R>::one(x.order()) - x);
}

/// x^2 / (1 - x), the sequence construction Seq>=2.
template <class R>
PowerSeries<R> sequence_at_least_two(const PowerSeries<R>& x) {
  return quotient(x * x, PowerSeries<R>::one(x.order()) - x);
}

}  // namespace sitlab
