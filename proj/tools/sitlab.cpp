// sitlab: command-line front end for the sitlab library.
//
//   sitlab simples --max 12
//   sitlab constants --k-range 4..13 --eps 1e-10
//   sitlab decompose "2 4 1 3"
//   sitlab sample --k 7 --size 1000 --eps 0.1 --count 5 --seed 42 --out dot

#include "sitlab/sitlab.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace sitlab;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const auto v = std::stoul(text);
      return {v, v};
    }
    const auto a = std::stoul(text.substr(0, dots));
    const auto b = std::stoul(text.substr(dots + 2));
    if (b < a) {
      throw UsageError("empty range '" + text + "'");
    }
    return {a, b};
  } catch (const std::logic_error&) {
    throw UsageError("malformed range '" + text + "' (expected A..B)");
  }
}

// "schroeder", "full"/"inf" or an integer (below 4 means schroeder)
std::size_t parse_k(const std::string& text) {
  if (text == "schroeder") {
    return 0;
  }
  if (text == "full" || text == "inf" || text == "infinity") {
    return kUnbounded;
  }
  try {
    std::size_t used = 0;
    const auto v = std::stoul(text, &used);
    if (used == text.size()) {
      return v;
    }
  } catch (const std::logic_error&) {
  }
  throw UsageError("malformed k '" + text + "' (integer, schroeder or full)");
}

Rational parse_eps(const std::string& text) {
  try {
    return parse_decimal(text);
  } catch (const std::exception&) {
    throw UsageError("malformed number '" + text + "'");
  }
}

std::string csv_real(const Real& v, int digits) {
  const Real a = boost::multiprecision::abs(v);
  if (a != 0 && (a >= 1e9 || a < 1e-6)) {
    return to_scientific(v, digits);
  }
  return to_significant(v, digits);
}

Json big_json(const BigInt& v) { return v.get_str(); }

struct Output {
  std::string path;
  std::ofstream file;
  std::ostream* out = &std::cout;

  void open() {
    if (!path.empty() && path != "-") {
      file.open(path);
      if (!file) {
        throw std::runtime_error("cannot write " + path);
      }
      out = &file;
    }
  }
  std::ostream& operator()() { return *out; }
};

std::string read_input(const std::string& arg) {
  if (arg == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  if (!arg.empty() && arg.front() == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) {
      throw std::runtime_error("cannot read " + arg.substr(1));
    }
    return std::string(std::istreambuf_iterator<char>(in), {});
  }
  return arg;
}

AnalyticConstants constants_for_k(std::size_t k, const SimpleCounts& s, const Rational& eps) {
  if (k == kUnbounded) {
    throw std::domain_error("k must be finite: the unrestricted class has radius of convergence 0");
  }
  return solve_constants(LambdaSpec::restricted(k), s, eps);
}

}  // namespace

int main(int argc, char** argv) {
  PrecisionGuard precision(kDefaultDigits);
  CLI::App app{"Strong interval trees, simple permutations and prime-degree restricted permutation classes"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file; flags override it");
  Output output;
  int digits = 10;
  std::string format;
  app.add_option("-o,--output", output.path, "write results here instead of stdout");
  app.add_option("--digits", digits, "significant digits for decimal output")->check(CLI::Range(1, 200));

  // simples
  auto* simples = app.add_subcommand("simples", "number of simple permutations s_n");
  std::size_t simples_max = 12;
  std::size_t simples_list = 0;
  simples->add_option("--max", simples_max, "largest n")->check(CLI::Range(1, 800));
  simples->add_option("--list", simples_list, "list the simple permutations of this size instead");
  simples->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  // count
  auto* count = app.add_subcommand("count", "exact counts of U^(k) and P^(k)");
  std::string count_k = "full";
  std::size_t count_max = 10;
  count->add_option("--k", count_k, "prime arity bound: integer, schroeder or full");
  count->add_option("--max", count_max, "largest n")->check(CLI::Range(1, 2000));
  count->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  // constants
  auto* constants = app.add_subcommand("constants", "certified tau_k, rho_k");
  std::string k_range = "4..13";
  std::string eps_text = "1e-10";
  constants->add_option("--k-range", k_range, "A..B");
  constants->add_option("--eps", eps_text, "enclosure width for tau_k");
  constants->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  // bounds
  auto* bounds = app.add_subcommand("bounds", "large-k bounds on s_n, tau~_k and rho_k");
  std::string bounds_range = "5..30";
  std::string alpha_text = "0.58";
  std::string beta_text = "6";
  unsigned long estimate_n = 0;
  std::size_t simple_bound_max = 0;
  bounds->add_option("--k-range", bounds_range, "A..B");
  bounds->add_option("--alpha", alpha_text, "alpha of the lower bounds");
  bounds->add_option("--beta", beta_text, "beta of the rho_k lower bound");
  bounds->add_option("--estimate-n", estimate_n, "also evaluate the large-k upper estimate at this n");
  bounds->add_option("--simple-bound-max", simple_bound_max, "instead check s_n <= sqrt(2 pi) n^(n+1/2) e^(-n-2) for n <= this");

  // limit-check
  auto* limit = app.add_subcommand("limit-check", "constants of truncations Lambda_k of an analytic Lambda");
  std::string limit_lambda = "schroeder";
  std::size_t limit_kmax = 30;
  std::string limit_eps = "1e-40";
  limit->add_option("--lambda", limit_lambda, "schroeder, binary (x^2) or poly:c0,c1,c2,...");
  limit->add_option("--k-max", limit_kmax, "largest truncation degree")->check(CLI::Range(2, 400));
  limit->add_option("--eps", limit_eps, "enclosure width");

  // decompose / compose
  auto* decomp = app.add_subcommand("decompose", "strong interval tree of a permutation");
  std::string perm_text;
  std::string tree_format = "json";
  decomp->add_option("permutation", perm_text, "e.g. \"2 4 1 3\", - for stdin")->required();
  decomp->add_option("--format", tree_format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
  auto* comp = app.add_subcommand("compose", "permutation of a strong interval tree");
  std::string tree_text;
  comp->add_option("tree", tree_text, "tree JSON, @file or - for stdin")->required();

  // stats-exact
  auto* stats = app.add_subcommand("stats-exact", "exact cumulative parameter sums and averages");
  std::string stats_param = "internal";
  std::string stats_k = "7";
  std::size_t stats_n = 20;
  std::string stats_level = "P";
  std::string stats_sem = "sit";
  std::size_t stats_kappa = 2;
  stats->add_option("--param", stats_param, "internal, prime, sss or arity");
  stats->add_option("--k", stats_k, "prime arity bound: integer, schroeder or full");
  stats->add_option("--n", stats_n, "largest size")->check(CLI::Range(1, 1000));
  stats->add_option("--level", stats_level, "U or P")->check(CLI::IsMember({"U", "P"}));
  stats->add_option("--semantics", stats_sem, "sit or lambda")->check(CLI::IsMember({"sit", "lambda"}));
  stats->add_option("--kappa", stats_kappa, "arity for --param arity");

  // sample / sample-stats
  std::string sample_k = "7";
  double sample_size = 1000;
  double sample_eps = 0.1;
  std::size_t sample_count = 1;
  std::uint64_t sample_seed = 0;
  std::size_t sample_labels = 0;
  std::size_t sample_attempts = 10'000'000;
  std::string sample_out = "json";
  auto add_sampling = [&](CLI::App* sc) {
    sc->add_option("--k", sample_k, "prime arity bound");
    sc->add_option("--size", sample_size, "target size N")->check(CLI::PositiveNumber);
    sc->add_option("--eps", sample_eps, "accept sizes in [(1-eps)N, (1+eps)N]")->check(CLI::Range(0.0, 0.999));
    sc->add_option("--count", sample_count, "number of accepted samples")->check(CLI::PositiveNumber);
    sc->add_option("--seed", sample_seed, "RNG seed (random and reported if omitted)");
    sc->add_option("--max-attempts", sample_attempts, "rejection budget per sample");
  };
  auto* sample = app.add_subcommand("sample", "Boltzmann samples of P^(k) trees");
  add_sampling(sample);
  sample->add_option("--labels", sample_labels, "label primes of arity <= L with uniform simple permutations");
  sample->add_option("--out", sample_out, "json (one tree per line) or dot")->check(CLI::IsMember({"json", "dot"}));
  auto* sstats = app.add_subcommand("sample-stats", "empirical parameter statistics of Boltzmann samples");
  add_sampling(sstats);

  // verify / stirling
  auto* verify = app.add_subcommand("verify", "exact series against exhaustive enumeration");
  std::size_t verify_n = 7;
  verify->add_option("--n-max", verify_n, "largest n")->check(CLI::Range(1, static_cast<int>(kExhaustiveCeiling)));
  auto* stirling = app.add_subcommand("stirling", "the large-k estimate at k = n against n!");
  std::string stirling_range = "5..60";
  stirling->add_option("--n-range", stirling_range, "A..B");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    output.open();
    std::ostream& out = output();

    if (*simples) {
      if (simples->count("--list")) {
        const auto list = enumerate_simples(simples_list);
        if (format == "json") {
          out << Json(list).dump() << "\n";
        } else {
          for (const auto& p : list) {
            out << format_permutation(p) << "\n";
          }
        }
        return 0;
      }
      const auto s = simple_counts_by_inversion(simples_max);
      if (format == "json") {
        Json arr = Json::array();
        for (const auto& v : s.values) {
          arr.push_back(big_json(v));
        }
        out << arr.dump() << "\n";
      } else {
        out << "n,s_n\n";
        for (std::size_t n = 0; n <= simples_max; ++n) {
          out << n << "," << to_decimal(s[n]) << "\n";
        }
      }
    } else if (*count) {
      const std::size_t k = parse_k(count_k);
      const Enumeration e(spec_for(k), count_max);
      const auto U = e.U();
      const auto P = e.P();
      if (format == "json") {
        Json j;
        j["spec"] = spec_label(k);
        j["U"] = Json::array();
        j["P"] = Json::array();
        for (std::size_t n = 0; n <= count_max; ++n) {
          j["U"].push_back(big_json(U[n]));
          j["P"].push_back(big_json(P[n]));
        }
        out << j.dump() << "\n";
      } else {
        out << "n,U,P\n";
        for (std::size_t n = 1; n <= count_max; ++n) {
          out << n << "," << to_decimal(U[n]) << "," << to_decimal(P[n]) << "\n";
        }
      }
    } else if (*constants) {
      const auto [a, b] = parse_range(k_range);
      if (a < 4) {
        throw UsageError("k-range must start at 4 or more");
      }
      const Rational eps = parse_eps(eps_text);
      const auto s = simple_counts_by_inversion(b);
      Json arr = Json::array();
      if (format != "json") {
        out << "k,tau_k,rho_k,tau_tilde_k,lambda2_k,beta_k,gamma_k,tau_width\n";
      }
      for (std::size_t k = a; k <= b; ++k) {
        const auto c = constants_for_k(k, s, eps);
        const std::string width = to_scientific(to_real(c.tau.width()), 3);
        if (format == "json") {
          arr.push_back({{"k", k},
                         {"tau_k", to_significant(c.tau.mid(), digits)},
                         {"rho_k", to_significant(c.rho.mid(), digits)},
                         {"tau_tilde_k", to_significant(c.tau_tilde.mid(), digits)},
                         {"lambda2_k", to_significant(c.lambda2.mid(), digits)},
                         {"beta_k", csv_real(c.beta.mid(), digits)},
                         {"gamma_k", csv_real(c.gamma.mid(), digits)},
                         {"tau_width", width}});
        } else {
          out << k << "," << to_significant(c.tau.mid(), digits) << "," << to_significant(c.rho.mid(), digits) << ","
              << to_significant(c.tau_tilde.mid(), digits) << "," << to_significant(c.lambda2.mid(), digits) << ","
              << csv_real(c.beta.mid(), digits) << "," << csv_real(c.gamma.mid(), digits) << "," << width << "\n";
        }
      }
      if (format == "json") {
        out << arr.dump(2) << "\n";
      }
    } else if (*bounds) {
      if (simple_bound_max > 0) {
        const auto s = simple_counts_by_inversion(simple_bound_max);
        out << "n,s_n,bound,holds\n";
        for (unsigned long n = 4; n <= simple_bound_max; ++n) {
          const Real sn = to_real(s[n]);
          const Real bound = simple_count_upper_bound(n);
          out << n << "," << to_scientific(sn, digits) << "," << to_scientific(bound, digits) << ","
              << (sn <= bound ? "true" : "false") << "\n";
        }
        return 0;
      }
      const auto [a, b] = parse_range(bounds_range);
      if (a < 4) {
        throw UsageError("k-range must start at 4 or more");
      }
      const Real alpha(alpha_text);
      const Real beta(beta_text);
      const auto s = simple_counts_by_inversion(b);
      const Rational eps("1/1000000000000000000000000000000");
      std::vector<BoundReport> reports;
      std::vector<std::string> names;
      for (std::size_t k = a; k <= b; ++k) {
        const auto c = constants_for_k(k, s, eps);
        reports.push_back(bounds_report(k, alpha, beta, s, c, estimate_n));
        for (const auto& q : reports.back().inequalities) {
          if (std::find(names.begin(), names.end(), q.name) == names.end()) {
            names.push_back(q.name);
          }
        }
      }
      // some checks only exist for larger k; their cells stay empty elsewhere
      out << "k,alpha_admissible";
      for (const auto& name : names) {
        out << "," << name << "_lhs," << name << "_rhs," << name << "_holds";
      }
      out << ",q_k,iota_k,A_k,B_k,beta_needed,rho_k_times_k_over_e,residual,estimate\n";
      for (const auto& r : reports) {
        out << r.k << "," << (r.alpha_admissible ? "true" : "false");
        for (const auto& name : names) {
          if (const auto* q = r.find(name)) {
            out << "," << csv_real(q->lhs, digits) << "," << csv_real(q->rhs, digits) << ","
                << (q->holds ? "true" : "false");
          } else {
            out << ",,,";
          }
        }
        out << "," << csv_real(r.q_k, digits) << "," << r.iota << "," << to_scientific(r.A, digits) << ","
            << csv_real(r.B, digits) << "," << csv_real(r.beta_needed, digits) << "," << csv_real(r.rho_scaled, digits)
            << "," << csv_real(r.residual, digits) << "," << (r.estimate ? to_scientific(*r.estimate, digits) : "") << "\n";
      }
      if (!reports.empty() && !reports.front().alpha_admissible) {
        std::cerr << "note: alpha = " << alpha_text << " is not below (e-2)/(e-1) = "
                  << to_significant(Real((boost::math::constants::e<Real>() - 2) / (boost::math::constants::e<Real>() - 1)), 6)
                  << "\n";
      }
    } else if (*limit) {
      LambdaSpec spec;
      if (limit_lambda == "schroeder") {
        spec = LambdaSpec::schroeder();
      } else if (limit_lambda == "binary") {
        spec = LambdaSpec::polynomial({0, 0, 1});
      } else if (limit_lambda.rfind("poly:", 0) == 0) {
        std::vector<BigInt> c;
        std::stringstream in(limit_lambda.substr(5));
        std::string tok;
        while (std::getline(in, tok, ',')) {
          try {
            c.emplace_back(tok, 10);
          } catch (const std::exception&) {
            throw UsageError("malformed coefficient '" + tok + "'");
          }
        }
        spec = LambdaSpec::polynomial(std::move(c));
      } else {
        throw UsageError("unknown --lambda '" + limit_lambda + "'");
      }
      const auto res = generic_limit_check(spec, limit_kmax, parse_eps(limit_eps));
      out << "k,tau_k,rho_k,tau_k_minus_tau,strictly_decreasing\n";
      const Rational tau = res.limit->tau.mid();
      const RationalInterval* prev = nullptr;
      for (const auto& row : res.rows) {
        const Rational t = row.constants.tau.mid();
        // strict decrease is certified when the enclosures are disjoint
        const bool dec = prev == nullptr || row.constants.tau.hi < prev->lo;
        out << row.k << "," << to_significant(t, digits) << "," << to_significant(row.constants.rho.mid(), digits) << ","
            << to_scientific(to_real(Rational(t - tau)), 4) << "," << (dec ? "true" : "false") << "\n";
        prev = &row.constants.tau;
      }
      out << "limit," << to_significant(tau, digits) << "," << to_significant(res.limit->rho.mid(), digits) << ",0,\n";
    } else if (*decomp) {
      const auto t = decompose(parse_permutation(read_input(perm_text)));
      out << (tree_format == "dot" ? to_dot(t) : to_json(t).dump() + "\n");
    } else if (*comp) {
      Json j;
      try {
        j = Json::parse(read_input(tree_text));
      } catch (const Json::parse_error& e) {
        throw UsageError(std::string("tree is not valid JSON: ") + e.what());
      }
      out << format_permutation(compose(tree_from_json(j))) << "\n";
    } else if (*stats) {
      const std::size_t k = parse_k(stats_k);
      const Param param = parse_param(stats_param);
      const Level level = stats_level == "U" ? Level::U : Level::P;
      const Semantics sem = stats_sem == "sit" ? Semantics::sit : Semantics::lambda_tree;
      const Enumeration e(spec_for(k), stats_n);
      const auto cnt = e.count(level);
      const auto xi = e.cumulative(param, level, sem, stats_kappa).series;
      out << "n,count,cumulative,average\n";
      for (std::size_t n = 1; n <= stats_n; ++n) {
        out << n << "," << to_decimal(cnt[n]) << "," << to_decimal(xi[n]) << ",";
        if (cnt[n] != 0) {
          out << to_significant(Rational(xi[n], cnt[n]), digits);
        }
        out << "\n";
      }
    } else if (*sample || *sstats) {
      const std::size_t k = parse_k(sample_k);
      if (k == kUnbounded) {
        throw std::domain_error("sampling needs a finite k");
      }
      CLI::App* sc = *sample ? sample : sstats;
      if (!sc->count("--seed")) {
        sample_seed = std::random_device{}();
        sample_seed = (sample_seed << 32) ^ std::random_device{}();
      }
      std::cerr << "seed=" << sample_seed << "\n";
      auto cfg = SamplerConfig::window(k, sample_size, sample_eps);
      cfg.seed = sample_seed;
      cfg.max_attempts = sample_attempts;
      cfg.label_arity = sample_labels;
      const auto s = simple_counts_by_inversion(std::max<std::size_t>(k, 4));
      const AnalyticConstants c = solve_constants(LambdaSpec::restricted(k), s, Rational(1, BigInt("1000000000000000000000000")));
      BoltzmannSampler sampler(cfg, s, c);
      if (*sample) {
        for (std::size_t i = 0; i < sample_count; ++i) {
          const auto t = sampler.sample();
          out << (sample_out == "dot" ? to_dot(t, "sample" + std::to_string(i)) : to_json(t).dump() + "\n");
        }
      } else {
        const auto st = sample_stats(sampler, sample_count, k);
        const auto pc = parameter_constants(AnalyticLambda(LambdaSpec::restricted(k), s), c);
        const double mean_n = st.size.mean;
        const double internal = st.internal_nodes.mean / mean_n;
        const double prime = st.prime_nodes.mean / mean_n;
        const double sss = st.subtree_size_sum.mean / std::pow(mean_n, 1.5);
        auto row = [&](const std::string& name, const std::string& basis, double emp, const Real& th) {
          const double t = static_cast<double>(th);
          out << name << "," << basis << "," << emp << "," << t << "," << (t != 0 ? (emp - t) / t : 0.0) << "\n";
        };
        out.precision(digits);
        out << "parameter,basis,empirical,theoretical,relative_error\n";
        row("internal_per_leaf", "table", internal, pc.internal_table);
        row("internal_per_leaf", "sit", internal, pc.internal_sit);
        row("prime_per_leaf", "table", prime, pc.prime_table);
        row("prime_per_leaf", "sit", prime, pc.prime_sit);
        row("sss_per_leaf_1.5", "table", sss, pc.sss_table);
        row("sss_per_leaf_1.5", "sit", sss, pc.sss_sit);
        std::cerr << "samples=" << st.samples << " attempts=" << st.attempts << " mean_size=" << mean_n
                  << " modal_prime_arity=" << st.modal_prime_arity() << " invalid=" << st.invalid_trees << "\n";
      }
    } else if (*verify) {
      const auto rows = verify_suite(verify_n);
      std::size_t failed = 0;
      out << "check,spec,n,expected,actual,result\n";
      for (const auto& r : rows) {
        out << r.check << "," << r.spec << "," << r.n << "," << r.expected << "," << r.actual << ","
            << (r.pass ? "PASS" : "FAIL") << "\n";
        failed += r.pass ? 0 : 1;
      }
      std::cerr << rows.size() - failed << "/" << rows.size() << " checks passed\n";
      return failed == 0 ? 0 : 1;
    } else if (*stirling) {
      const auto [a, b] = parse_range(stirling_range);
      out << "n,n_factorial,estimate_k_eq_n,ratio,estimate_k_eq_2n,ratio_2n,limit\n";
      const std::string lim = csv_real(stirling_constant(), digits);
      for (unsigned long n = a; n <= b; ++n) {
        const auto r = stirling_reconciliation(n);
        out << n << "," << to_decimal(r.factorial) << "," << to_scientific(r.estimate_at_n, digits) << ","
            << csv_real(r.ratio, digits) << "," << to_scientific(r.estimate_at_2n, digits) << ","
            << to_scientific(r.ratio_2n, digits) << "," << lim << "\n";
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
