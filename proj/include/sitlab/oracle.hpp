#pragma once

// Brute force over all permutations of size n: decompose each one and
// aggregate membership counts and parameter sums.

#include "sitlab/enumerate.hpp"
#include "sitlab/permutation.hpp"
#include "sitlab/simples.hpp"
#include "sitlab/sit.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace sitlab {

inline constexpr std::size_t kExhaustiveCeiling = 9;
inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

/// Sums over the permutations of size n whose trees have prime arity <= k.
/// The U columns restrict further to trees whose root is not a plus node.
struct MembershipSums {
  std::uint64_t count_P = 0;
  std::uint64_t count_U = 0;
  std::uint64_t internal_P = 0;
  std::uint64_t internal_U = 0;
  std::uint64_t prime_P = 0;
  std::uint64_t prime_U = 0;
  std::uint64_t sss_P = 0;
  std::uint64_t sss_U = 0;

  std::uint64_t count(Level l) const { return l == Level::P ? count_P : count_U; }

  std::uint64_t sum(Param p, Level l) const {
    switch (p) {
      case Param::internal_nodes:
        return l == Level::P ? internal_P : internal_U;
      case Param::prime_nodes:
        return l == Level::P ? prime_P : prime_U;
      case Param::subtree_size_sum:
        return l == Level::P ? sss_P : sss_U;
      case Param::arity:
        break;
    }
    throw std::invalid_argument("arity sums are not tracked by the oracle");
  }
};

struct ExhaustiveReport {
  std::size_t n = 0;
  std::uint64_t permutations = 0;
  std::uint64_t prime_nodes_total = 0;
  std::uint64_t roundtrip_failures = 0;
  std::map<std::size_t, MembershipSums> by_k;  // k < 4 means no prime node at all
};

inline ExhaustiveReport exhaustive(std::size_t n, const std::vector<std::size_t>& ks,
                                   std::size_t ceiling = kExhaustiveCeiling) {
  if (n > ceiling) {
    throw std::invalid_argument("exhaustive ceiling exceeded: n = " + std::to_string(n) + " > " +
                                std::to_string(ceiling));
  }
  if (n == 0) {
    throw std::invalid_argument("n must be positive");
  }
  ExhaustiveReport r;
  r.n = n;
  for (std::size_t k : ks) {
    r.by_k[k];
  }
  Permutation p = identity_permutation(n);
  do {
    const SITree t = decompose(p);
    if (compose(t) != p) {
      ++r.roundtrip_failures;
    }
    const TreeParams tp = tree_params(t);
    ++r.permutations;
    r.prime_nodes_total += tp.prime_nodes;
    const bool u_member = t[0].kind != NodeKind::plus;
    for (auto& [k, sums] : r.by_k) {
      const std::size_t bound = k < 4 ? 0 : k;
      if (tp.max_prime_arity > bound) {
        continue;
      }
      ++sums.count_P;
      sums.internal_P += tp.internal_nodes;
      sums.prime_P += tp.prime_nodes;
      sums.sss_P += tp.subtree_size_sum;
      if (u_member) {
        ++sums.count_U;
        sums.internal_U += tp.internal_nodes;
        sums.prime_U += tp.prime_nodes;
        sums.sss_U += tp.subtree_size_sum;
      }
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return r;
}

struct VerifyRow {
  std::string check;
  std::string spec;
  std::size_t n;
  std::string expected;
  std::string actual;
  bool pass;
};

inline std::string spec_label(std::size_t k) {
  if (k < 4) {
    return "schroeder";
  }
  return k == kUnbounded ? "full" : "k=" + std::to_string(k);
}

inline LambdaSpec spec_for(std::size_t k) {
  if (k == kUnbounded) {
    return LambdaSpec::full();
  }
  return LambdaSpec::restricted(k);
}

/// Exact series against brute force for every n <= n_max and the standard k set.
inline std::vector<VerifyRow> verify_suite(std::size_t n_max) {
  if (n_max > kExhaustiveCeiling) {
    throw std::invalid_argument("exhaustive ceiling exceeded: n-max = " + std::to_string(n_max) + " > " +
                                std::to_string(kExhaustiveCeiling));
  }
  const std::vector<std::size_t> ks{0, 4, 5, 6, 7, 8, kUnbounded};
  std::vector<VerifyRow> rows;
  const SimpleCounts s = simple_counts_by_inversion(std::max<std::size_t>(n_max + 1, 4));
  std::vector<ExhaustiveReport> reports;
  for (std::size_t n = 1; n <= n_max; ++n) {
    reports.push_back(exhaustive(n, ks));
    const auto& r = reports.back();
    rows.push_back({"bijection", "-", n, "0", std::to_string(r.roundtrip_failures), r.roundtrip_failures == 0});
    if (n <= kBruteForceCeiling) {
      const auto bf = count_simples_brute_force(n);
      rows.push_back({"simples", "-", n, to_decimal(s[n]), std::to_string(bf), BigInt(bf) == s[n]});
    }
  }
  for (std::size_t k : ks) {
    const Enumeration e(spec_for(k), n_max, s);
    for (Level level : {Level::P, Level::U}) {
      const auto count = e.count(level);
      const std::string lv = level == Level::P ? "P" : "U";
      for (std::size_t n = 1; n <= n_max; ++n) {
        const auto got = reports[n - 1].by_k.at(k).count(level);
        rows.push_back({"count_" + lv, spec_label(k), n, to_decimal(count[n]), std::to_string(got), count[n] == BigInt(got)});
      }
      for (Param param : {Param::internal_nodes, Param::prime_nodes, Param::subtree_size_sum}) {
        const auto xi = e.cumulative(param, level).series;
        for (std::size_t n = 1; n <= n_max; ++n) {
          const auto got = reports[n - 1].by_k.at(k).sum(param, level);
          rows.push_back({param_name(param) + "_" + lv, spec_label(k), n, to_decimal(xi[n]), std::to_string(got),
                          xi[n] == BigInt(got)});
        }
      }
    }
  }
  return rows;
}

}  // namespace sitlab
