#pragma once

// Exact counts of U^(k), P^(k) and exact cumulative parameter series.
//
// U-level objects are strong interval trees whose root is not a plus node
// (equivalently, by the plus/minus symmetry, not a minus node); P-level
// objects are all strong interval trees, i.e. permutations.
//
// Two readings of "node" are offered. Sit semantics counts the nodes of the
// strong interval tree itself. Lambda-tree semantics counts nodes of the
// tree solving U = z + Lambda(U), where a prime node swallows its plus
// children (a child sequence of length m becomes m direct children).

#include "sitlab/lambda.hpp"
#include "sitlab/numeric.hpp"
#include "sitlab/power_series.hpp"
#include "sitlab/simples.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sitlab {

enum class Param { internal_nodes, prime_nodes, arity, subtree_size_sum };
enum class Level { U, P };
enum class Semantics { sit, lambda_tree };

inline std::string param_name(Param p) {
  switch (p) {
    case Param::internal_nodes:
      return "internal";
    case Param::prime_nodes:
      return "prime";
    case Param::arity:
      return "arity";
    case Param::subtree_size_sum:
      return "sss";
  }
  return "?";
}

inline Param parse_param(const std::string& s) {
  if (s == "internal" || s == "internal-nodes") {
    return Param::internal_nodes;
  }
  if (s == "prime" || s == "prime-nodes") {
    return Param::prime_nodes;
  }
  if (s == "arity") {
    return Param::arity;
  }
  if (s == "sss" || s == "subtree-size-sum") {
    return Param::subtree_size_sum;
  }
  throw std::invalid_argument("unknown parameter '" + s + "' (internal, prime, arity, sss)");
}

struct CumulativeSeries {
  Param param;
  std::size_t arity = 0;  // Param::arity only
  Level level;
  Semantics semantics;
  PowerSeries<BigInt> series;
};

class UnsupportedCumulative : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact series for one Lambda spec, valid up to order N.
class Enumeration {
 public:
  Enumeration(LambdaSpec spec, std::size_t N)
      : spec_(std::move(spec)),
        N_(N),
        M_(N + 1),
        simples_(spec_.needs_simples() ? simple_counts_by_inversion(M_) : SimpleCounts{}),
        lambda_(lambda_coefficients(spec_, M_, simples_)),
        u_(bootstrap_tree_series(lambda_)) {}

  Enumeration(LambdaSpec spec, std::size_t N, const SimpleCounts& s)
      : spec_(std::move(spec)),
        N_(N),
        M_(N + 1),
        simples_(s),
        lambda_(lambda_coefficients(spec_, M_, simples_)),
        u_(bootstrap_tree_series(lambda_)) {}

  const LambdaSpec& spec() const { return spec_; }
  std::size_t order() const { return N_; }
  const SimpleCounts& simples() const { return simples_; }
  const PowerSeries<BigInt>& lambda() const { return lambda_; }

  PowerSeries<BigInt> U() const { return u_.truncated(N_); }

  PowerSeries<BigInt> P() const { return sequence_at_least_one(u_).truncated(N_); }

  PowerSeries<BigInt> count(Level level) const { return level == Level::U ? U() : P(); }

  /// d/dz U, valid to order N.
  PowerSeries<BigInt> U_prime() const { return derivative(u_); }

  CumulativeSeries cumulative(Param param, Level level, Semantics sem = Semantics::sit,
                              std::size_t kappa = 0) const {
    if (param == Param::arity && (sem != Semantics::lambda_tree || level != Level::U)) {
      throw UnsupportedCumulative("unsupported combination: arity parameter exists only for lambda-tree nodes at level U");
    }
    if (sem == Semantics::lambda_tree && level != Level::U) {
      throw UnsupportedCumulative("unsupported combination: lambda-tree semantics only at level U");
    }
    CumulativeSeries out{param, kappa, level, sem, PowerSeries<BigInt>(N_)};
    out.series = sem == Semantics::sit ? sit_cumulative(param, level) : lambda_tree_cumulative(param, kappa);
    return out;
  }

  /// Exact mean of a parameter over objects of size n.
  Rational average(Param param, Level level, std::size_t n, Semantics sem = Semantics::sit,
                   std::size_t kappa = 0) const {
    if (n > N_) {
      throw std::out_of_range("n = " + std::to_string(n) + " beyond series order " + std::to_string(N_));
    }
    const auto c = count(level);
    if (c[n] == 0) {
      throw std::domain_error("no objects of size " + std::to_string(n));
    }
    const auto xi = cumulative(param, level, sem, kappa).series;
    Rational r(xi[n], c[n]);
    r.canonicalize();
    return r;
  }

  /// H for the lambda-tree reading: Xi = H * U'.
  PowerSeries<BigInt> lambda_tree_marker(Param param, std::size_t kappa = 0) const {
    const auto z = PowerSeries<BigInt>::variable(M_);
    switch (param) {
      case Param::internal_nodes:
        return u_ - z;
      case Param::arity: {
        PowerSeries<BigInt> h = PowerSeries<BigInt>::one(M_);
        for (std::size_t i = 0; i < kappa; ++i) {
          h = h * u_;
        }
        return h * (kappa <= M_ ? lambda_[kappa] : BigInt(0));
      }
      case Param::subtree_size_sum:
        return shift_up(derivative(u_), 1);
      case Param::prime_nodes:
        return prime_of(sequence_at_least_one(u_));
    }
    throw std::logic_error("unreachable");
  }

 private:
  PowerSeries<BigInt> prime_poly() const { return prime_part(spec_, M_, simples_); }

  PowerSeries<BigInt> prime_of(const PowerSeries<BigInt>& x) const {
    const auto S = prime_poly();
    return compose_polynomial<BigInt>(S.coefficients(), x);
  }

  PowerSeries<BigInt> prime_derivative_of(const PowerSeries<BigInt>& x) const {
    const auto dS = derivative(prime_poly());
    return compose_polynomial<BigInt>(dS.coefficients(), x.truncated(dS.order()));
  }

  PowerSeries<BigInt> lambda_tree_cumulative(Param param, std::size_t kappa) const {
    return (lambda_tree_marker(param, kappa) * U_prime()).truncated(N_);
  }

  PowerSeries<BigInt> sit_cumulative(Param param, Level level) const {
    const std::size_t M = M_;
    const auto one = PowerSeries<BigInt>::one(M);
    const auto z = PowerSeries<BigInt>::variable(M);
    const auto& u = u_;
    const auto du = U_prime();
    const auto one_minus_u = one - u;
    const auto inv_sq = inverse(one_minus_u * one_minus_u);  // 1/(1-u)^2
    const auto seq2 = sequence_at_least_two(u);                // u^2/(1-u)
    const auto p = sequence_at_least_one(u);                   // u/(1-u)
    PowerSeries<BigInt> uy, py;
    switch (param) {
      case Param::internal_nodes: {
        // U_y = U' (Seq(u) + S(p) + S'(p) Seq(u));  P_y = U_y/(1-u)^2 + Seq(u)
        uy = du * (seq2 + prime_of(p) + prime_derivative_of(p) * seq2);
        py = uy * inv_sq + seq2;
        break;
      }
      case Param::prime_nodes: {
        uy = du * prime_of(p);
        py = uy * inv_sq;
        break;
      }
      case Param::subtree_size_sum: {
        // A = U' (z + z U' (1 + S'(p) Seq'(u))),  U_y = A - z U',
        // P_y = U_y + Seq'(u) (z U' + U_y),  with Seq'(u) = 1/(1-u)^2 - 1
        const auto dseq = inv_sq - one;
        const auto zdu = shift_up(du, 1);
        const auto a = du * (z + zdu * (one + prime_derivative_of(p) * dseq));
        uy = a - zdu;
        py = uy + dseq * (zdu + uy);
        break;
      }
      case Param::arity:
        throw UnsupportedCumulative("unsupported combination");
    }
    return (level == Level::U ? uy : py).truncated(N_);
  }

  LambdaSpec spec_;
  std::size_t N_;
  std::size_t M_;
  SimpleCounts simples_;
  PowerSeries<BigInt> lambda_;
  PowerSeries<BigInt> u_;
};

inline PowerSeries<BigInt> count_U(const LambdaSpec& spec, std::size_t N) { return Enumeration(spec, N).U(); }

inline PowerSeries<BigInt> count_P(const LambdaSpec& spec, std::size_t N) { return Enumeration(spec, N).P(); }

}  // namespace sitlab
