#pragma once

// Counting and listing simple permutations.

#include "sitlab/numeric.hpp"
#include "sitlab/permutation.hpp"
#include "sitlab/power_series.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sitlab {

inline constexpr std::size_t kBruteForceCeiling = 10;

/// s_0..s_N; index n holds the number of simple permutations of size n.
struct SimpleCounts {
  std::vector<BigInt> values;

  std::size_t max_size() const { return values.empty() ? 0 : values.size() - 1; }

  const BigInt& operator[](std::size_t n) const {
    if (n >= values.size()) {
      throw std::out_of_range("s_" + std::to_string(n) + " not computed (have up to " +
                              std::to_string(max_size()) + ")");
    }
    return values[n];
  }
};

/// Inverts S(F(z)) = U - z - U^2/(1-U) with F = sum n! z^n, U = F/(1+F).
/// Since U/(1-U) = F the right side is U(1-F) - z.
inline SimpleCounts simple_counts_by_inversion(std::size_t N) {
  SimpleCounts out;
  out.values.assign(N + 1, BigInt(0));
  if (N < 4) {
    return out;
  }
  PowerSeries<BigInt> F(N);
  for (std::size_t n = 1; n <= N; ++n) {
    F[n] = factorial(n);
  }
  const auto one = PowerSeries<BigInt>::one(N);
  const auto U = quotient(F, one + F);
  const auto R = U * (one - F) - PowerSeries<BigInt>::variable(N);

  // powers[j][n] = [z^n] F^j, only n >= j is ever nonzero
  std::vector<std::vector<BigInt>> powers(N + 1);
  powers[1].assign(N + 1, BigInt(0));
  for (std::size_t n = 1; n <= N; ++n) {
    powers[1][n] = F[n];
  }
  for (std::size_t j = 2; j <= N; ++j) {
    powers[j].assign(N + 1, BigInt(0));
    for (std::size_t n = j; n <= N; ++n) {
      BigInt acc = 0;
      for (std::size_t i = 1; i + (j - 1) <= n; ++i) {
        acc += F[i] * powers[j - 1][n - i];
      }
      powers[j][n] = acc;
    }
  }
  for (std::size_t n = 4; n <= N; ++n) {
    BigInt acc = R[n];
    for (std::size_t j = 4; j < n; ++j) {
      acc -= out.values[j] * powers[j][n];
    }
    out.values[n] = acc;  // [z^n] F^n = 1
  }
  return out;
}

/// All simple permutations of size n in lexicographic order.
inline std::vector<Permutation> enumerate_simples(std::size_t n, std::size_t ceiling = kBruteForceCeiling) {
  if (n > ceiling) {
    throw std::invalid_argument("brute-force ceiling exceeded: n = " + std::to_string(n) +
                                " > " + std::to_string(ceiling));
  }
  std::vector<Permutation> out;
  if (n < 4) {
    return out;
  }
  Permutation p = identity_permutation(n);
  do {
    if (is_simple(p)) {
      out.push_back(p);
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline std::size_t count_simples_brute_force(std::size_t n, std::size_t ceiling = kBruteForceCeiling) {
  if (n > ceiling) {
    throw std::invalid_argument("brute-force ceiling exceeded: n = " + std::to_string(n) +
                                " > " + std::to_string(ceiling));
  }
  if (n < 4) {
    return 0;
  }
  std::size_t count = 0;
  Permutation p = identity_permutation(n);
  do {
    count += is_simple(p) ? 1 : 0;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

/// Lower and upper ends of the bracket n!/e^2 (1 - 4/n) <= s_n <= n!/e^2 (1 - 4/n + 2/(n(n-1))).
struct SimpleBracket {
  Real lower;
  Real upper;
};

inline SimpleBracket simple_count_bracket(unsigned long n) {
  const Real base = to_real(factorial(n)) / boost::multiprecision::exp(Real(2));
  const Real nn(n);
  return {base * (1 - 4 / nn), base * (1 - 4 / nn + 2 / (nn * (nn - 1)))};
}

/// sqrt(2 pi) n^(n+1/2) e^(-n-2)
inline Real simple_count_upper_bound(unsigned long n) {
  using boost::multiprecision::exp;
  using boost::multiprecision::pow;
  using boost::multiprecision::sqrt;
  const Real nn(n);
  return sqrt(2 * boost::math::constants::pi<Real>()) * pow(nn, nn + Real(0.5)) * exp(-nn - 2);
}

}  // namespace sitlab
