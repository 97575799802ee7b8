#pragma once

// Boltzmann sampling of P^(k) trees from the grammar
//
//   P = Seq>=1 U
//   U = Z + Seq>=2 U + sum_{4<=j<=k} s_j * (prime node over j P-children)
//
// Linear nodes are drawn unlabelled; the top node of each chain of linear
// nodes gets plus or minus with probability 1/2 and labels alternate below it.

#include "sitlab/asymptotics.hpp"
#include "sitlab/sit.hpp"
#include "sitlab/simples.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace sitlab {

class EvaluationDiverged : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class RejectionBudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// U(x), P(x) and the branch probabilities of the U rule.
struct OracleValues {
  Real x;
  Real U;
  Real P;
  Real leaf;                   // x / U
  Real sequence;               // U^2/(1-U) / U
  std::vector<Real> prime;     // index j: s_j (U/(1-U))^j / U, zero below 4
  Real expected_size;          // x P'(x) / P(x)
};

/// Real evaluation of the closed-form Lambda for the Boltzmann oracle.
class BoltzmannOracle {
 public:
  BoltzmannOracle(std::size_t k, const SimpleCounts& s, const AnalyticConstants& c) : k_(k < 4 ? 0 : k), c_(c) {
    for (std::size_t j = 4; j <= k_; ++j) {
      s_.push_back(to_real(s[j]));
    }
    tau_ = to_real(c.tau.mid());
    rho_ = to_real(c.rho.mid());
  }

  std::size_t k() const { return k_; }
  const Real& tau() const { return tau_; }
  const Real& rho() const { return rho_; }

  Real lambda(const Real& u) const {
    const Real y = u / (1 - u);
    Real acc = u * u / (1 - u);
    Real yj = y * y * y * y;
    for (std::size_t i = 0; i < s_.size(); ++i) {
      acc += s_[i] * yj;
      yj *= y;
    }
    return acc;
  }

  Real lambda_d1(const Real& u) const {
    const Real y = u / (1 - u);
    const Real w = 1 + y;
    Real dS = 0;
    Real yj = y * y * y;
    for (std::size_t i = 0; i < s_.size(); ++i) {
      dS += Real(i + 4) * s_[i] * yj;
      yj *= y;
    }
    return w * w * (1 + dS) - 1;
  }

  /// x P'(x)/P(x) expressed through u = U(x).
  Real expected_size_at(const Real& u) const {
    const Real x = u - lambda(u);
    return x / (u * (1 - u) * (1 - lambda_d1(u)));
  }

  /// U(x) for 0 < x <= rho: fixed-point iteration u <- x + Lambda(u) to
  /// detect divergence, then bisection of u - Lambda(u) = x on [0, tau].
  Real U(const Real& x) const {
    if (x <= 0) {
      throw std::domain_error("Boltzmann parameter must be positive");
    }
    const Real tau_hi = to_real(c_.tau.hi);
    Real u = 0;
    for (int it = 0; it < 400; ++it) {
      u = x + lambda(u);
      if (u > tau_hi) {
        throw EvaluationDiverged("evaluation diverged: x = " + to_scientific(x, 12) + " exceeds rho = " +
                                 to_scientific(rho_, 12));
      }
    }
    if (x > to_real(c_.rho.hi)) {
      throw EvaluationDiverged("evaluation diverged: x = " + to_scientific(x, 12) + " exceeds rho = " +
                               to_scientific(rho_, 12));
    }
    Real lo = u;  // the iteration approaches U(x) from below
    Real hi = tau_;
    if (hi - lambda(hi) <= x) {
      return hi;
    }
    for (int it = 0; it < 400 && hi - lo > 0; ++it) {
      const Real mid = (lo + hi) / 2;
      if (mid - lambda(mid) < x) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return (lo + hi) / 2;
  }

  OracleValues values(const Real& x) const { return values_at(x, U(x)); }

  OracleValues values_at(const Real& x, const Real& u) const {
    OracleValues v;
    v.x = x;
    v.U = u;
    v.P = u / (1 - u);
    v.leaf = x / u;
    v.sequence = u / (1 - u);
    v.prime.assign(k_ + 1, Real(0));
    const Real p = u / (1 - u);
    Real pj = p * p * p * p;
    for (std::size_t j = 4; j <= k_; ++j) {
      v.prime[j] = s_[j - 4] * pj / u;
      pj *= p;
    }
    v.expected_size = expected_size_at(u);
    return v;
  }

  /// x with expected P-size equal to target, found by bisection on u in (0, tau).
  Real tune(double target) const {
    if (target < 1) {
      throw std::invalid_argument("target size must be at least 1");
    }
    Real lo = 0;
    Real hi = tau_;
    for (int it = 0; it < 300; ++it) {
      const Real mid = (lo + hi) / 2;
      if (mid == 0 || expected_size_at(mid) < target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const Real u = (lo + hi) / 2;
    return u - lambda(u);
  }

 private:
  std::size_t k_;
  AnalyticConstants c_;
  std::vector<Real> s_;
  Real tau_;
  Real rho_;
};

struct SamplerConfig {
  std::size_t k = 7;
  std::size_t size_min = 1;
  std::size_t size_max = 1;
  std::optional<double> x;        // default: tuned to the window centre
  std::size_t max_attempts = 10'000'000;
  std::uint64_t seed = 1;
  std::size_t label_arity = 0;     // primes of arity <= this get a uniform simple label

  static SamplerConfig window(std::size_t k, double N, double eps) {
    if (!(eps >= 0 && eps < 1)) {
      throw std::invalid_argument("size tolerance must lie in [0, 1)");
    }
    SamplerConfig c;
    c.k = k;
    c.size_min = static_cast<std::size_t>(std::ceil((1 - eps) * N));
    c.size_max = static_cast<std::size_t>(std::floor((1 + eps) * N));
    if (c.size_min < 1) {
      c.size_min = 1;
    }
    if (c.size_max < c.size_min) {
      throw std::invalid_argument("empty size window");
    }
    return c;
  }
};

class BoltzmannSampler {
 public:
  BoltzmannSampler(const SamplerConfig& cfg, const SimpleCounts& s, const AnalyticConstants& c)
      : cfg_(cfg), oracle_(cfg.k, s, c), rng_(cfg.seed) {
    if (cfg.label_arity > kBruteForceCeiling) {
      throw std::invalid_argument("labelled primes need arity <= " + std::to_string(kBruteForceCeiling));
    }
    if (cfg.size_min < 1 || cfg.size_max < cfg.size_min) {
      throw std::invalid_argument("empty size window");
    }
    const Real x = cfg.x ? Real(*cfg.x) : oracle_.tune(0.5 * static_cast<double>(cfg.size_min + cfg.size_max));
    values_ = oracle_.values(x);
    u_ = static_cast<double>(values_.U);
    std::vector<double> w;
    w.push_back(static_cast<double>(values_.leaf));
    w.push_back(static_cast<double>(values_.sequence));
    for (std::size_t j = 4; j < values_.prime.size(); ++j) {
      w.push_back(static_cast<double>(values_.prime[j]));
    }
    branch_ = std::discrete_distribution<int>(w.begin(), w.end());
    length_ = std::geometric_distribution<long>(1 - u_);
    for (std::size_t j = 4; j <= std::min(cfg.label_arity, oracle_.k()); ++j) {
      labels_[j] = enumerate_simples(j);
    }
  }

  const OracleValues& oracle() const { return values_; }
  std::size_t attempts() const { return attempts_; }
  std::size_t accepted() const { return accepted_; }

  /// One tree with size in the window, by rejection.
  SITree sample() {
    for (std::size_t a = 0; a < cfg_.max_attempts; ++a) {
      ++attempts_;
      if (auto t = attempt(cfg_.size_max); t && t->size() >= cfg_.size_min) {
        ++accepted_;
        return std::move(*t);
      }
    }
    throw RejectionBudgetExhausted("rejection budget exhausted after " + std::to_string(cfg_.max_attempts) +
                                   " attempts (" + std::to_string(accepted_) + " accepted out of " +
                                   std::to_string(attempts_) + " total); widen the window or raise the budget");
  }

  /// One free Boltzmann draw, aborted (nullopt) once it exceeds max_size leaves.
  std::optional<SITree> attempt(std::size_t max_size) {
    struct Work {
      bool p_level;
      std::size_t parent;  // npos for the root
    };
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<SitNode> nodes;
    std::vector<std::size_t> parent_of;
    std::vector<Work> stack{{true, npos}};
    std::size_t leaves = 0;
    auto open = [&](NodeKind kind, std::size_t parent) {
      const std::size_t id = nodes.size();
      nodes.push_back(SitNode{kind, {}, {}});
      parent_of.push_back(parent);
      if (parent != npos) {
        nodes[parent].children.push_back(id);
      }
      return id;
    };
    while (!stack.empty()) {
      if (leaves + stack.size() > max_size) {
        return std::nullopt;
      }
      const Work w = stack.back();
      stack.pop_back();
      if (w.p_level) {
        const long len = 1 + length_(rng_);
        if (len == 1) {
          stack.push_back({false, w.parent});
        } else {
          const std::size_t id = open(NodeKind::plus, w.parent);
          push_children(stack, static_cast<std::size_t>(len), false, id);
        }
        continue;
      }
      const int b = branch_(rng_);
      if (b == 0) {
        open(NodeKind::leaf, w.parent);
        ++leaves;
      } else if (b == 1) {
        const long len = 2 + length_(rng_);
        const std::size_t id = open(NodeKind::plus, w.parent);
        push_children(stack, static_cast<std::size_t>(len), false, id);
      } else {
        const std::size_t j = static_cast<std::size_t>(b) + 2;
        const std::size_t id = open(NodeKind::prime, w.parent);
        if (auto it = labels_.find(j); it != labels_.end()) {
          std::uniform_int_distribution<std::size_t> pick(0, it->second.size() - 1);
          nodes[id].pattern = it->second[pick(rng_)];
        }
        push_children(stack, j, true, id);
      }
    }
    // plus/minus for linear chains: free at the top, alternating below
    std::bernoulli_distribution coin(0.5);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!is_linear(nodes[i].kind)) {
        continue;
      }
      const std::size_t par = parent_of[i];
      if (par != npos && is_linear(nodes[par].kind)) {
        nodes[i].kind = nodes[par].kind == NodeKind::plus ? NodeKind::minus : NodeKind::plus;
      } else {
        nodes[i].kind = coin(rng_) ? NodeKind::plus : NodeKind::minus;
      }
    }
    return SITree::from_nodes(std::move(nodes));
  }

 private:
  template <class Stack>
  static void push_children(Stack& stack, std::size_t count, bool p_level, std::size_t parent) {
    for (std::size_t i = 0; i < count; ++i) {
      stack.push_back({p_level, parent});
    }
  }

  SamplerConfig cfg_;
  BoltzmannOracle oracle_;
  OracleValues values_;
  double u_ = 0;
  std::mt19937_64 rng_;
  std::discrete_distribution<int> branch_;
  std::geometric_distribution<long> length_;
  std::map<std::size_t, std::vector<Permutation>> labels_;
  std::size_t attempts_ = 0;
  std::size_t accepted_ = 0;
};

struct RunningMean {
  std::size_t n = 0;
  double mean = 0;
  double m2 = 0;

  void add(double v) {
    ++n;
    const double d = v - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (v - mean);
  }

  double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
  double standard_error() const { return n > 0 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0; }
};

struct SampleStats {
  std::size_t samples = 0;
  std::size_t attempts = 0;
  RunningMean size;
  RunningMean internal_nodes;
  RunningMean prime_nodes;
  RunningMean max_prime_arity;
  RunningMean subtree_size_sum;
  RunningMean internal_density;  // per tree: internal / size
  RunningMean prime_density;
  RunningMean sss_scaled;        // per tree: sss / size^1.5
  std::map<std::size_t, std::size_t> size_histogram;
  std::map<std::size_t, std::size_t> prime_arity_histogram;  // over all prime nodes
  std::size_t invalid_trees = 0;

  void add(const SITree& t, const ValidateOptions& opt) {
    try {
      validate(t, opt);
    } catch (const ValidationError&) {
      ++invalid_trees;
    }
    const TreeParams p = tree_params(t);
    const double n = static_cast<double>(p.leaves);
    ++samples;
    size.add(n);
    internal_nodes.add(static_cast<double>(p.internal_nodes));
    prime_nodes.add(static_cast<double>(p.prime_nodes));
    max_prime_arity.add(static_cast<double>(p.max_prime_arity));
    subtree_size_sum.add(static_cast<double>(p.subtree_size_sum));
    internal_density.add(static_cast<double>(p.internal_nodes) / n);
    prime_density.add(static_cast<double>(p.prime_nodes) / n);
    sss_scaled.add(static_cast<double>(p.subtree_size_sum) / std::pow(n, 1.5));
    ++size_histogram[p.leaves];
    for (const SitNode& v : t.nodes()) {
      if (v.kind == NodeKind::prime) {
        ++prime_arity_histogram[v.children.size()];
      }
    }
  }

  std::size_t modal_prime_arity() const {
    std::size_t best = 0, count = 0;
    for (const auto& [a, c] : prime_arity_histogram) {
      if (c > count) {
        best = a;
        count = c;
      }
    }
    return best;
  }
};

inline SampleStats sample_stats(BoltzmannSampler& sampler, std::size_t count, std::size_t k) {
  SampleStats st;
  ValidateOptions opt;
  opt.allow_unlabelled_primes = true;
  opt.max_prime_arity = k < 4 ? 0 : k;
  for (std::size_t i = 0; i < count; ++i) {
    st.add(sampler.sample(), opt);
  }
  st.attempts = sampler.attempts();
  return st;
}

struct ChiSquare {
  double statistic = 0;
  std::size_t dof = 0;
  double p_value = 1;
};

/// Pearson goodness of fit of observed counts against expected probabilities.
inline ChiSquare chi_square(const std::vector<double>& observed, const std::vector<double>& probabilities) {
  if (observed.size() != probabilities.size() || observed.size() < 2) {
    throw std::invalid_argument("chi-square needs matching vectors of at least two classes");
  }
  double total = 0;
  for (double o : observed) {
    total += o;
  }
  ChiSquare r;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = total * probabilities[i];
    if (e <= 0) {
      throw std::invalid_argument("chi-square expected count must be positive");
    }
    r.statistic += (observed[i] - e) * (observed[i] - e) / e;
  }
  r.dof = observed.size() - 1;
  boost::math::chi_squared dist(static_cast<double>(r.dof));
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  return r;
}

}  // namespace sitlab
