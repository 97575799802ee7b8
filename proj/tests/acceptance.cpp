// Acceptance run: one PASS/FAIL line per criterion, followed by indented notes.
// Exit status 1 when any criterion fails.

#include "sitlab/sitlab.hpp"
#include "support/oracles.hpp"
#include "support/published.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

using namespace sitlab;
using boost::multiprecision::abs;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { notes.push_back("     " + what); }
};

std::string fmt(double v, int prec = 4) {
  std::ostringstream o;
  o.precision(prec);
  o << v;
  return o.str();
}

std::string fmt(const Real& v, int prec = 4) { return fmt(static_cast<double>(v), prec); }

std::string pct(const Real& v) { return fmt(static_cast<double>(v) * 100, 3) + "%"; }

constexpr std::size_t kFull = static_cast<std::size_t>(-1);
const std::vector<std::size_t> kSpecs{0, 4, 5, 6, 7, 8, kFull};

LambdaSpec spec_of(std::size_t k) { return k == kFull ? LambdaSpec::full() : LambdaSpec::restricted(k); }

std::string label(std::size_t k) { return k == kFull ? "inf" : k == 0 ? "schroeder" : std::to_string(k); }

// brute-force sums over all permutations of size n <= 8, shared by criteria 3 and 6
std::map<std::size_t, ref::BruteForce>& brute() {
  static std::map<std::size_t, ref::BruteForce> cache;
  if (cache.empty()) {
    for (std::size_t n = 1; n <= 8; ++n) {
      cache[n] = ref::brute_force(n, kSpecs);
    }
  }
  return cache;
}

const SimpleCounts& simples() {
  static const SimpleCounts s = simple_counts_by_inversion(301);
  return s;
}

Outcome criterion1() {
  Outcome o;
  const auto s = simple_counts_by_inversion(11);
  bool prefix = true;
  for (std::size_t i = 0; i < published::kSimples.size(); ++i) {
    prefix = prefix && s[i + 4] == published::kSimples[i];
  }
  o.check(prefix, "s_4..s_11 = 2, 6, 46, 338, 2926, 28146, 298526, 3454434");
  const auto s9 = simple_counts_by_inversion(9);
  for (std::size_t n = 1; n <= 9; ++n) {
    Permutation p = identity_permutation(n);
    unsigned long count = 0;
    do {
      count += ref::is_simple(p) ? 1 : 0;
    } while (std::next_permutation(p.begin(), p.end()));
    o.check(BigInt(count) == s9[n], "brute force n=" + std::to_string(n) + ": " + std::to_string(count));
  }
  return o;
}

Outcome criterion2() {
  Outcome o;
  std::size_t checked = 0, bad = 0;
  for (std::size_t n = 1; n <= 7; ++n) {
    Permutation p = identity_permutation(n);
    do {
      ++checked;
      bad += compose(decompose(p)) == p ? 0 : 1;
    } while (std::next_permutation(p.begin(), p.end()));
  }
  o.check(checked == 5913 && bad == 0, "round trip on all " + std::to_string(checked) + " permutations of size <= 7");
  std::mt19937_64 rng(20240601);
  bad = 0;
  for (int i = 0; i < 1000; ++i) {
    Permutation p = identity_permutation(200);
    std::shuffle(p.begin(), p.end(), rng);
    bad += compose(decompose(p)) == p ? 0 : 1;
  }
  o.check(bad == 0, "round trip on 1000 random permutations of size 200");
  auto L = [] { return SITree::leaf(); };
  const SITree want = SITree::node(
      NodeKind::minus,
      {SITree::node(NodeKind::plus, {L(), L(),
                                     SITree::node(NodeKind::prime,
                                                  {SITree::node(NodeKind::plus, {L(), L(), L()}), L(), L(), L()},
                                                  {2, 4, 1, 3})}),
       SITree::node(NodeKind::prime, {L(), L(), SITree::node(NodeKind::minus, {L(), L()}), L()}, {3, 1, 4, 2})});
  const auto got = decompose(parse_permutation(published::kRunningExample));
  o.check(got == want, "running example tree: " + to_json(got).dump());
  return o;
}

Outcome criterion3() {
  Outcome o;
  auto& bf = brute();
  for (std::size_t k : kSpecs) {
    const auto P = Enumeration(spec_of(k), 8).P();
    bool ok = true;
    for (std::size_t n = 1; n <= 8; ++n) {
      ok = ok && P[n] == bf[n].P.at(k).count;
    }
    o.check(ok, "P_n, n <= 8, k=" + label(k) + " against membership counts");
  }
  const auto full = Enumeration(LambdaSpec::full(), 9).P();
  bool fact = true;
  for (unsigned long n = 1; n <= 9; ++n) {
    fact = fact && full[n] == factorial(n);
  }
  o.check(fact, "P^(inf)_n = n! for n <= 9");
  const auto sch = Enumeration(LambdaSpec::schroeder(), 7).P();
  const std::vector<long> want{1, 2, 6, 22, 90, 394, 1806};
  bool ok = true;
  for (std::size_t n = 1; n <= 7; ++n) {
    ok = ok && sch[n] == want[n - 1];
  }
  o.check(ok, "schroeder P_n = 1, 2, 6, 22, 90, 394, 1806");
  return o;
}

Outcome criterion4() {
  Outcome o;
  const Rational eps(1, BigInt("1000000000000000"));
  int matched = 0;
  for (const auto& row : published::kTable) {
    const auto c = solve_constants(LambdaSpec::restricted(row.k), simples(), eps);
    o.check(c.tau.width() <= Rational(1, BigInt("100000000000")), "k=" + std::to_string(row.k) + " enclosure width <= 1e-11");
    auto agrees = [](const RationalInterval& iv, const std::string& printed, std::string& shown) {
      for (DigitRule rule : {DigitRule::round_half_up, DigitRule::truncate}) {
        if (to_significant(iv.lo, 10, rule) == printed && to_significant(iv.hi, 10, rule) == printed) {
          shown = to_significant(iv.lo, 10, rule) + (rule == DigitRule::truncate ? " (truncated)" : "");
          return true;
        }
      }
      shown = to_significant(iv.lo, 13) + ".." + to_significant(iv.hi, 13);
      return false;
    };
    std::string t, r;
    const bool tok = agrees(c.tau, row.tau, t);
    const bool rok = agrees(c.rho, row.rho, r);
    matched += (tok ? 1 : 0) + (rok ? 1 : 0);
    o.check(tok, "tau_" + std::to_string(row.k) + " printed " + row.tau + ", computed " + t);
    o.check(rok, "rho_" + std::to_string(row.k) + " printed " + row.rho + ", computed " + r);
  }
  o.note(std::to_string(matched) + "/20 printed values reproduced");
  return o;
}

Outcome criterion5() {
  Outcome o;
  const Rational eps(1, BigInt("1000000000000000000000000000000"));
  const auto c8 = solve_constants(LambdaSpec::restricted(8), simples(), eps);
  const auto exact8 = Enumeration(LambdaSpec::restricted(8), 10, simples()).P()[10];
  const Real e8 = abs(asymptotic_count(c8, 10) - to_real(exact8)) / to_real(exact8);
  o.check(e8 <= Real("0.02"), "k=8, n=10: exact " + to_decimal(exact8) + ", estimate " +
                                  to_significant(asymptotic_count(c8, 10), 8) + ", relative error " + pct(e8) +
                                  " (limit 2%)");
  const auto c4 = solve_constants(LambdaSpec::restricted(4), simples(), eps);
  const auto P4 = Enumeration(LambdaSpec::restricted(4), 60, simples()).P();
  const Real e4 = abs(asymptotic_count(c4, 30) - to_real(P4[30])) / to_real(P4[30]);
  o.check(e4 <= Real("0.01"), "k=4, n=30: exact " + to_decimal(P4[30]) + ", relative error " + pct(e4) + " (limit 1%)");
  for (unsigned long n : {40ul, 60ul}) {
    const Real e = abs(asymptotic_count(c4, n) - to_real(P4[n])) / to_real(P4[n]);
    o.note("k=4, n=" + std::to_string(n) + ": relative error " + pct(e));
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  const std::size_t N = 40;
  const auto rs = ref::simple_counts(8);
  for (std::size_t k : {4u, 7u, 0u}) {
    const Enumeration e(spec_of(k), N, simples());
    const auto parts = ref::lambda_parts(N, rs, k);
    const auto du = e.U_prime();
    const auto dl = derivative(e.lambda());
    const auto dLT = compose_polynomial<BigInt>(dl.coefficients(), e.U().truncated(dl.order()));
    struct Job {
      Param p;
      std::size_t kappa;
      ref::Mark m;
      std::string name;
    };
    std::vector<Job> jobs{{Param::internal_nodes, 0, ref::Mark::internal, "internal"},
                          {Param::prime_nodes, 0, ref::Mark::prime, "prime"},
                          {Param::subtree_size_sum, 0, ref::Mark::sss, "sss"}};
    for (std::size_t kappa = 2; kappa <= 6; ++kappa) {
      jobs.push_back({Param::arity, kappa, ref::Mark::arity, "arity" + std::to_string(kappa)});
    }
    bool all = true;
    std::string failed;
    for (const auto& j : jobs) {
      const auto xi = e.cumulative(j.p, Level::U, Semantics::lambda_tree, j.kappa).series;
      const auto H = e.lambda_tree_marker(j.p, j.kappa);
      const bool product = xi == (H * du).truncated(N);
      const bool iteration = xi == (H.truncated(N) + dLT * xi).truncated(N);
      const auto g = ref::lambda_grammar(N, parts, j.m, j.kappa);
      bool grammar = true;
      for (std::size_t n = 0; n <= N; ++n) {
        grammar = grammar && xi[n] == g.b[n];
      }
      if (!(product && iteration && grammar)) {
        all = false;
        failed += " " + j.name;
      }
    }
    o.check(all, "Xi = H T' to order 40 (internal, prime, arity 2..6, sss), k=" + label(k) +
                     ", against the bivariate grammar" + failed);
  }
  auto& bf = brute();
  for (std::size_t k : kSpecs) {
    const Enumeration e(spec_of(k), 8, simples());
    bool ok = true;
    for (Param p : {Param::internal_nodes, Param::prime_nodes, Param::subtree_size_sum}) {
      const auto xi = e.cumulative(p, Level::P).series;
      for (std::size_t n = 1; n <= 8; ++n) {
        const auto& sums = bf[n].P.at(k);
        const std::uint64_t want = p == Param::internal_nodes ? sums.internal
                                   : p == Param::prime_nodes  ? sums.prime
                                                              : sums.sss;
        ok = ok && xi[n] == want;
      }
    }
    o.check(ok, "P-level cumulative internal/prime/sss, n <= 8, k=" + label(k) + " against brute-force sums");
  }
  return o;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      r[idx[i]] = static_cast<double>(i);
    }
    return r;
  };
  const auto ra = ranks(a), rb = ranks(b);
  const double n = static_cast<double>(a.size());
  double d2 = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d2 += (ra[i] - rb[i]) * (ra[i] - rb[i]);
  }
  return 1 - 6 * d2 / (n * (n * n - 1));
}

Outcome criterion7() {
  Outcome o;
  const auto& s = simples();
  bool lemma = true;
  for (unsigned long n = 4; n <= 300; ++n) {
    lemma = lemma && to_real(s[n]) <= simple_count_upper_bound(n);
  }
  o.check(lemma, "s_n <= sqrt(2 pi) n^(n+1/2) e^(-n-2) for 4 <= n <= 300");
  const Real alpha("0.58");
  const Rational eps(1, BigInt("1000000000000000000000000000000"));
  std::vector<std::size_t> lower_fail, upper_fail, ek_fail;
  std::vector<double> ks, res;
  Real q_min = 10, q_max = 0;
  std::size_t q_min_k = 0;
  bool admissible = true;
  Real B100 = 0;
  for (std::size_t k = 4; k <= 100; ++k) {
    const auto c = solve_constants(LambdaSpec::restricted(k), s, eps);
    const auto r = bounds_report(k, alpha, Real(6), s, c);
    admissible = r.alpha_admissible;
    if (!r.find("tilde_lower")->holds) {
      lower_fail.push_back(k);
    }
    if (!r.find("tilde_upper")->holds) {
      upper_fail.push_back(k);
    }
    if (k >= 5 && !r.find("tilde_below_e_over_k")->holds) {
      ek_fail.push_back(k);
    }
    if (r.q_k < q_min) {
      q_min = r.q_k;
      q_min_k = k;
    }
    q_max = std::max(q_max, r.q_k);
    if (k >= 10) {
      ks.push_back(static_cast<double>(k));
      res.push_back(static_cast<double>(abs(r.residual)));
    }
    if (k == 100) {
      B100 = r.B;
      o.note("k=100: rho k/e = " + fmt(r.rho_scaled, 6) + ", residual " + fmt(r.residual, 4) + ", A = " + fmt(r.A, 3) +
             ", B = " + fmt(r.B, 4));
    }
  }
  if (!admissible) {
    o.note("alpha = 0.58 exceeds (e-2)/(e-1) = 0.41802; the bracket precondition does not hold");
  }
  o.note("q_k = k s_k tau~^(k-1) ranges over [" + fmt(q_min, 4) + " (k=" + std::to_string(q_min_k) + "), " +
         fmt(q_max, 4) + "]; the lower bracket needs q_k > alpha");
  o.check(lower_fail.empty(), "lower bracket (alpha/(k s_k))^(1/(k-1)) < tau~_k, k = 4..100: fails for " +
                                  std::to_string(lower_fail.size()) + " values of k");
  o.check(upper_fail.empty(), "upper bracket tau~_k < (1/(k s_k))^(1/(k-1)), k = 4..100");
  o.check(ek_fail.empty(), "tau~_k < e/k, k = 5..100");
  // residual trend over k = 10..100
  const double max_abs = *std::max_element(res.begin(), res.end());
  const auto peak = static_cast<std::size_t>(std::max_element(res.begin(), res.end()) - res.begin());
  bool shrinking = true;
  for (std::size_t i = peak + 1; i < res.size(); ++i) {
    shrinking = shrinking && res[i] < res[i - 1];
  }
  const double rho_s = spearman(ks, res);
  o.check(max_abs < 0.1, "|rho_k k/e - (1 - 5/2 log k/k)| < 0.1 over k = 10..100 (max " + fmt(max_abs, 4) + ")");
  o.check(rho_s < 0, "residual shrinks over the sweep: Spearman(k, |r_k|) = " + fmt(rho_s, 3));
  o.check(shrinking, "|r_k| strictly decreasing from its peak at k = " + fmt(ks[peak], 3));
  o.note("B(100) = " + fmt(B100, 4) + " (limit 1/(e-1) = 0.582)");
  return o;
}

Outcome criterion8() {
  Outcome o;
  const auto& s = simples();
  const Rational eps(1, BigInt("1000000000000000000000000000000"));
  const AnalyticLambda L7(LambdaSpec::restricted(7), s);
  const auto c7 = solve_constants(L7, eps);

  // (a) validation
  auto cfg = SamplerConfig::window(7, 1000, 0.1);
  cfg.seed = 7001;
  cfg.label_arity = 7;
  BoltzmannSampler sampler(cfg, s, c7);
  SampleStats st;
  ValidateOptions strict;
  strict.max_prime_arity = 7;
  for (int i = 0; i < 10000; ++i) {
    st.add(sampler.sample(), strict);
  }
  o.check(st.invalid_trees == 0, "(a) 10^4 trees at k=7, N=1000 (sizes 900..1100): " +
                                      std::to_string(st.invalid_trees) + " invalid, mean size " +
                                      fmt(st.size.mean, 6) + ", " + std::to_string(sampler.attempts()) + " attempts");

  // (b) uniformity over the 114 classes of size 5, k=4
  const auto c4 = solve_constants(LambdaSpec::restricted(4), s, eps);
  auto cfg5 = SamplerConfig::window(4, 5, 0);
  cfg5.seed = 5005;
  cfg5.label_arity = 4;
  BoltzmannSampler s5(cfg5, s, c4);
  std::map<Permutation, double> hits;
  Permutation p = identity_permutation(5);
  do {
    if (max_prime_arity(decompose(p)) <= 4) {
      hits[p] = 0;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  std::size_t outside = 0;
  for (int i = 0; i < 100000; ++i) {
    const auto q = compose(s5.sample());
    if (auto it = hits.find(q); it != hits.end()) {
      it->second += 1;
    } else {
      ++outside;
    }
  }
  std::vector<double> obs, probs;
  for (const auto& [q, h] : hits) {
    obs.push_back(h);
    probs.push_back(1.0 / static_cast<double>(hits.size()));
  }
  const auto chi = chi_square(obs, probs);
  o.check(hits.size() == 114 && outside == 0 && chi.p_value > 0.001,
          "(b) n=5, k=4, 10^5 samples over " + std::to_string(hits.size()) + " classes: chi2 = " +
              fmt(chi.statistic, 5) + ", dof " + std::to_string(chi.dof) + ", p = " + fmt(chi.p_value, 3));

  // (c) statistics against the tabulated constants
  const auto pc = parameter_constants(L7, c7);
  auto rel = [](double emp, const Real& th) { return std::abs(emp / static_cast<double>(th) - 1); };
  const double ei = rel(st.internal_density.mean, pc.internal_table);
  const double ep = rel(st.prime_density.mean, pc.prime_table);
  const double es = rel(st.sss_scaled.mean, pc.sss_table);
  o.check(ei <= 0.05, "(c) internal nodes / n: empirical " + fmt(st.internal_density.mean, 5) + ", constant " +
                          fmt(pc.internal_table, 5) + ", off by " + fmt(ei * 100, 3) + "% (limit 5%)");
  o.check(ep <= 0.05, "(c) prime nodes / n: empirical " + fmt(st.prime_density.mean, 5) + ", constant " +
                          fmt(pc.prime_table, 5) + ", off by " + fmt(ep * 100, 3) + "% (limit 5%)");
  o.check(es <= 0.10, "(c) subtree size sum / n^1.5: empirical " + fmt(st.sss_scaled.mean, 5) + ", constant " +
                          fmt(pc.sss_table, 5) + ", off by " + fmt(es * 100, 3) + "% (limit 10%)");
  o.note("strong interval tree constants: internal " + fmt(pc.internal_sit, 5) + " (off " +
         fmt(rel(st.internal_density.mean, pc.internal_sit) * 100, 3) + "%), prime " + fmt(pc.prime_sit, 5) + " (off " +
         fmt(rel(st.prime_density.mean, pc.prime_sit) * 100, 3) + "%), sss " + fmt(pc.sss_sit, 5) + " (off " +
         fmt(rel(st.sss_scaled.mean, pc.sss_sit) * 100, 3) + "%)");

  // (d) modal prime arity
  std::string hist;
  for (const auto& [a, count] : st.prime_arity_histogram) {
    hist += " " + std::to_string(a) + ":" + std::to_string(count);
  }
  o.check(st.modal_prime_arity() == 7, "(d) modal prime arity " + std::to_string(st.modal_prime_arity()) + " (histogram" +
                                           hist + ")");
  return o;
}

Outcome criterion9() {
  Outcome o;
  const Rational eps(1, BigInt("10000000000000000000000000000000000000000"));
  const auto sch = generic_limit_check(LambdaSpec::schroeder(), 60, eps);
  bool dec = sch.skipped.empty() && sch.rows.size() == 59;
  for (std::size_t i = 1; i < sch.rows.size(); ++i) {
    dec = dec && sch.rows[i].constants.tau.hi < sch.rows[i - 1].constants.tau.lo;
  }
  o.check(dec, "x^2/(1-x) truncations k = 2..60: tau_k strictly decreasing (disjoint enclosures)");
  const Real gap = abs(sch.rows.back().constants.tau_r() - sch.limit->tau_r());
  o.check(gap < Real("1e-8"), "|tau_60 - tau| = " + to_scientific(gap, 3) + " < 1e-8, tau = " +
                                  to_significant(sch.limit->tau.mid(), 12));
  const auto bin = generic_limit_check(LambdaSpec::polynomial({0, 0, 1}), 60, eps);
  bool half = bin.rows.size() == 59;
  for (const auto& row : bin.rows) {
    half = half && row.constants.tau.lo == Rational(1, 2) && row.constants.tau.hi == Rational(1, 2);
  }
  o.check(half, "x^2 truncations: tau_k = 1/2 exactly for k = 2..60");
  return o;
}

}  // namespace

int main() {
  PrecisionGuard precision(kDefaultDigits);
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
      {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}};
  int failed = 0;
  for (const auto& [id, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " (" << fmt(secs, 3) << " s)\n";
    for (const auto& n : o.notes) {
      std::cout << "    " << n << "\n";
    }
    std::cout.flush();
    failed += o.pass ? 0 : 1;
  }
  std::cout << (9 - failed) << "/9 criteria pass\n";
  return failed == 0 ? 0 : 1;
}
