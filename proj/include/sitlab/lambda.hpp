#pragma once

// Lambda(x) for trees counted by leaves, T = z + Lambda(T), and the
// coefficient bootstrap solving that equation.

#include "sitlab/numeric.hpp"
#include "sitlab/power_series.hpp"
#include "sitlab/simples.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sitlab {

enum class LambdaKind {
  schroeder,   // x^2/(1-x), no prime part
  restricted,  // x^2/(1-x) + sum_{j=4}^k s_j (x/(1-x))^j
  full,        // same without the bound on j
  polynomial,  // explicit finite coefficient list
};

struct LambdaSpec {
  LambdaKind kind = LambdaKind::schroeder;
  std::size_t k = 0;               // restricted only
  std::vector<BigInt> coeffs;      // polynomial only, index m holds lambda_m

  static LambdaSpec schroeder() { return {}; }

  /// Prime arity bound k; below 4 no prime node fits and this is the Schroeder spec.
  static LambdaSpec restricted(std::size_t k) {
    if (k < 4) {
      return schroeder();
    }
    return {LambdaKind::restricted, k, {}};
  }

  static LambdaSpec full() { return {LambdaKind::full, 0, {}}; }

  static LambdaSpec polynomial(std::vector<BigInt> coeffs) {
    for (std::size_t m = 0; m < coeffs.size(); ++m) {
      if (m < 2 && coeffs[m] != 0) {
        throw std::invalid_argument("lambda_0 and lambda_1 must vanish");
      }
      if (coeffs[m] < 0) {
        throw std::invalid_argument("lambda coefficients must be nonnegative");
      }
    }
    return {LambdaKind::polynomial, 0, std::move(coeffs)};
  }

  bool needs_simples() const { return kind == LambdaKind::restricted || kind == LambdaKind::full; }

  /// Largest prime arity allowed (max size_t for the full spec, 0 without primes).
  std::size_t prime_bound() const {
    switch (kind) {
      case LambdaKind::restricted:
        return k;
      case LambdaKind::full:
        return std::numeric_limits<std::size_t>::max();
      default:
        return 0;
    }
  }

  std::string name() const {
    switch (kind) {
      case LambdaKind::schroeder:
        return "schroeder";
      case LambdaKind::restricted:
        return "k=" + std::to_string(k);
      case LambdaKind::full:
        return "full";
      case LambdaKind::polynomial:
        return "polynomial";
    }
    return "?";
  }
};

/// The prime part S^{<=k}: [z^j] = s_j for 4 <= j <= min(k, N).
inline PowerSeries<BigInt> prime_part(const LambdaSpec& spec, std::size_t N, const SimpleCounts& s) {
  PowerSeries<BigInt> S(N);
  const std::size_t top = std::min(spec.prime_bound(), N);
  for (std::size_t j = 4; j <= top; ++j) {
    S[j] = s[j];
  }
  return S;
}

/// lambda_0..lambda_N for the given spec.
inline PowerSeries<BigInt> lambda_coefficients(const LambdaSpec& spec, std::size_t N, const SimpleCounts& s) {
  PowerSeries<BigInt> L(N);
  if (spec.kind == LambdaKind::polynomial) {
    for (std::size_t m = 0; m < spec.coeffs.size() && m <= N; ++m) {
      L[m] = spec.coeffs[m];
    }
    return L;
  }
  const std::size_t top = spec.prime_bound();
  for (std::size_t m = 2; m <= N; ++m) {
    BigInt acc = 1;
    for (std::size_t j = 4; j <= std::min(top, m); ++j) {
      acc += s[j] * binomial(m - 1, j - 1);
    }
    L[m] = acc;
  }
  return L;
}

inline PowerSeries<BigInt> lambda_coefficients(const LambdaSpec& spec, std::size_t N) {
  const SimpleCounts s = spec.needs_simples() ? simple_counts_by_inversion(N) : SimpleCounts{};
  return lambda_coefficients(spec, N, s);
}

/// T with T = z + sum_m lambda_m T^m, bootstrapped one coefficient at a time.
/// [z^n] T^m for m >= 2 only involves T_1..T_{n-1}, so a table of powers
/// filled column by column gives T_n directly.
inline PowerSeries<BigInt> bootstrap_tree_series(const PowerSeries<BigInt>& lambda) {
  if (lambda[0] != 0 || (lambda.order() >= 1 && lambda[1] != 0)) {
    throw std::invalid_argument("bootstrap needs lambda_0 = lambda_1 = 0");
  }
  const std::size_t N = lambda.order();
  PowerSeries<BigInt> T(N);
  if (N == 0) {
    return T;
  }
  // pw[m][n] = [z^n] T^m, stored for n >= m
  std::vector<std::vector<BigInt>> pw(N + 1);
  for (std::size_t m = 1; m <= N; ++m) {
    pw[m].assign(N + 1, BigInt(0));
  }
  for (std::size_t n = 1; n <= N; ++n) {
    BigInt t = n == 1 ? BigInt(1) : BigInt(0);
    for (std::size_t m = 2; m <= n; ++m) {
      BigInt acc = 0;
      for (std::size_t i = 1; i + (m - 1) <= n; ++i) {
        acc += T[i] * pw[m - 1][n - i];
      }
      pw[m][n] = acc;
      if (lambda[m] != 0) {
        t += lambda[m] * acc;
      }
    }
    T[n] = t;
    pw[1][n] = t;
  }
  return T;
}

inline PowerSeries<BigInt> bootstrap_tree_series(const LambdaSpec& spec, std::size_t N) {
  return bootstrap_tree_series(lambda_coefficients(spec, N));
}

/// Lambda(x) for a series argument x with zero constant term, by Horner.
inline PowerSeries<BigInt> apply_lambda(const PowerSeries<BigInt>& lambda, const PowerSeries<BigInt>& x) {
  return compose_polynomial<BigInt>(lambda.coefficients(), x);
}

}  // namespace sitlab
