#pragma once

// Certified constants tau, rho of T = z + Lambda(T), asymptotic estimates,
// parameter constants and the large-k bound evaluations.

#include "sitlab/lambda.hpp"
#include "sitlab/numeric.hpp"
#include "sitlab/simples.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sitlab {

class SubcriticalLambda : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct RationalInterval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

struct RealInterval {
  Real lo;
  Real hi;

  Real mid() const { return (lo + hi) / 2; }
};

struct LambdaValues {
  Rational value;
  Rational d1;
  Rational d2;
};

namespace detail {

// sum c_j y^j and its first two derivatives, exactly
inline void horner3(const std::vector<BigInt>& c, const Rational& y, Rational& f, Rational& f1, Rational& f2) {
  f = 0;
  f1 = 0;
  f2 = 0;
  for (std::size_t j = c.size(); j-- > 0;) {
    f2 = f2 * y + 2 * f1;
    f1 = f1 * y + f;
    f = f * y + c[j];
  }
}

}  // namespace detail

/// Lambda as an analytic function evaluable exactly at rationals.
/// Schroeder and restricted specs use the closed form x^2/(1-x) + S(x/(1-x));
/// polynomial specs are evaluated directly. The full spec has radius zero.
class AnalyticLambda {
 public:
  AnalyticLambda(const LambdaSpec& spec, const SimpleCounts& s) : spec_(spec) {
    switch (spec.kind) {
      case LambdaKind::full:
        throw std::domain_error("the unrestricted Lambda has radius of convergence 0");
      case LambdaKind::polynomial:
        coeffs_ = spec.coeffs;
        break;
      case LambdaKind::schroeder:
        break;
      case LambdaKind::restricted:
        coeffs_.assign(spec.k + 1, BigInt(0));
        for (std::size_t j = 4; j <= spec.k; ++j) {
          coeffs_[j] = s[j];
        }
        break;
    }
  }

  explicit AnalyticLambda(const LambdaSpec& spec)
      : AnalyticLambda(spec, spec.needs_simples() ? simple_counts_by_inversion(spec.k) : SimpleCounts{}) {}

  const LambdaSpec& spec() const { return spec_; }
  bool closed_form() const { return spec_.kind != LambdaKind::polynomial; }

  /// Prime part coefficients s_j (closed forms only).
  const std::vector<BigInt>& prime_coefficients() const { return coeffs_; }

  LambdaValues eval(const Rational& x) const {
    if (x < 0) {
      throw std::domain_error("Lambda evaluated at negative x");
    }
    LambdaValues v;
    if (!closed_form()) {
      detail::horner3(coeffs_, x, v.value, v.d1, v.d2);
      return v;
    }
    if (x >= 1) {
      throw std::domain_error("Lambda evaluated at x >= 1, outside the disc of convergence");
    }
    const Rational one_minus = 1 - x;
    const Rational y = x / one_minus;
    const Rational w = 1 + y;  // 1/(1-x)
    Rational S, S1, S2;
    detail::horner3(coeffs_, y, S, S1, S2);
    v.value = x * x / one_minus + S;
    v.d1 = w * w * (1 + S1) - 1;
    v.d2 = 2 * w * w * w * (1 + S1) + w * w * w * w * S2;
    return v;
  }

  /// S(y), S'(y) at y = x/(1-x); zero for polynomial specs.
  std::pair<Rational, Rational> prime_part_at(const Rational& y) const {
    if (!closed_form()) {
      return {Rational(0), Rational(0)};
    }
    Rational S, S1, S2;
    detail::horner3(coeffs_, y, S, S1, S2);
    return {S, S1};
  }

 private:
  LambdaSpec spec_;
  std::vector<BigInt> coeffs_;
};

inline LambdaValues eval_lambda_derivatives(std::size_t k, const Rational& x, const SimpleCounts& s) {
  return AnalyticLambda(LambdaSpec::restricted(k), s).eval(x);
}

struct AnalyticConstants {
  std::string name;
  RationalInterval tau;
  RationalInterval tau_tilde;
  RationalInterval rho;
  RationalInterval lambda_at_tau;  // Lambda(tau)
  RationalInterval lambda2;        // Lambda''(tau)
  RationalInterval prime_at;       // S(tau~)
  RationalInterval prime_d1_at;    // S'(tau~)
  RealInterval beta;
  RealInterval gamma;

  Real tau_r() const { return to_real(tau.mid()); }
  Real rho_r() const { return to_real(rho.mid()); }
  Real lambda2_r() const { return to_real(lambda2.mid()); }
};

/// Bisection on the increasing function Lambda' with an exact test Lambda'(x) < 1,
/// until the bracket width is at most eps. The bracket is the certificate.
inline AnalyticConstants solve_constants(const AnalyticLambda& L, const Rational& eps) {
  if (eps <= 0) {
    throw std::invalid_argument("enclosure width must be positive");
  }
  Rational lo(0);
  Rational hi;
  if (L.closed_form()) {
    // Lambda' blows up at 1; walk towards 1 until it exceeds 1
    hi = Rational(1, 2);
    int steps = 0;
    while (L.eval(hi).d1 <= 1) {
      lo = hi;
      hi = (hi + 1) / 2;
      if (++steps > 400) {
        throw SubcriticalLambda("subcritical Lambda: Lambda' stays below 1 on (0,1)");
      }
    }
  } else {
    hi = 1;
    int steps = 0;
    while (L.eval(hi).d1 <= 1) {
      lo = hi;
      hi *= 2;
      if (++steps > 200) {
        throw SubcriticalLambda("subcritical Lambda: Lambda' never reaches 1");
      }
    }
  }
  while (hi - lo > eps) {
    const Rational mid = (lo + hi) / 2;
    const Rational d = L.eval(mid).d1;
    if (d < 1) {
      lo = mid;
    } else if (d > 1) {
      hi = mid;
    } else {
      lo = hi = mid;
    }
  }
  AnalyticConstants c;
  c.name = L.spec().name();
  c.tau = {lo, hi};
  const LambdaValues vlo = L.eval(lo);
  const LambdaValues vhi = L.eval(hi);
  if (L.closed_form()) {
    c.tau_tilde = {lo / (1 - lo), hi / (1 - hi)};
  } else {
    c.tau_tilde = c.tau;  // no change of variable for a bare polynomial
  }
  // Psi(x) = x - Lambda(x) is concave with its maximum rho at tau, so rho lies
  // above both endpoint values and below the tangent at lo.
  const Rational psi_lo = lo - vlo.value;
  const Rational psi_hi = hi - vhi.value;
  c.rho = {psi_lo > psi_hi ? psi_lo : psi_hi, psi_lo + (1 - vlo.d1) * (hi - lo)};
  c.lambda_at_tau = {vlo.value, vhi.value};
  c.lambda2 = {vlo.d2, vhi.d2};
  const auto plo = L.prime_part_at(c.tau_tilde.lo);
  const auto phi = L.prime_part_at(c.tau_tilde.hi);
  c.prime_at = {plo.first, phi.first};
  c.prime_d1_at = {plo.second, phi.second};
  using boost::multiprecision::sqrt;
  const Real pi = boost::math::constants::pi<Real>();
  c.beta = {sqrt(2 * to_real(c.rho.lo) / to_real(c.lambda2.hi)), sqrt(2 * to_real(c.rho.hi) / to_real(c.lambda2.lo))};
  c.gamma = {sqrt(to_real(c.rho.lo) / (2 * pi * to_real(c.lambda2.hi))),
             sqrt(to_real(c.rho.hi) / (2 * pi * to_real(c.lambda2.lo)))};
  return c;
}

inline AnalyticConstants solve_constants(const LambdaSpec& spec, const SimpleCounts& s, const Rational& eps) {
  return solve_constants(AnalyticLambda(spec, s), eps);
}

/// [z^n] P ~ gamma/(1-tau)^2 rho^-n n^-3/2, or [z^n] U ~ gamma rho^-n n^-3/2.
inline Real asymptotic_count(const AnalyticConstants& c, unsigned long n, bool p_level = true) {
  using boost::multiprecision::pow;
  const Real tau = c.tau_r();
  const Real rho = c.rho_r();
  const Real nn(n);
  Real v = c.gamma.mid() * pow(rho, -nn) * pow(nn, Real(-1.5));
  if (p_level) {
    v /= (1 - tau) * (1 - tau);
  }
  return v;
}

struct ParameterConstants {
  // as tabulated for P^(k): (tau-rho)/rho, S(tau)/rho, beta^2/(4 rho gamma)
  Real internal_table;
  Real prime_table;
  Real sss_table;
  // trees of T = z + Lambda(T): Lambda(tau)/rho, sqrt(pi/(2 rho Lambda''(tau)))
  Real internal_generic;
  Real sss_generic;
  // nodes of the strong interval trees themselves
  Real internal_sit;
  Real prime_sit;
  Real sss_sit;
};

inline ParameterConstants parameter_constants(const AnalyticLambda& L, const AnalyticConstants& c) {
  using boost::multiprecision::sqrt;
  const Real pi = boost::math::constants::pi<Real>();
  ParameterConstants r;
  const Real tau = c.tau_r();
  const Real rho = c.rho_r();
  const Real l2 = c.lambda2_r();
  const Real beta = c.beta.mid();
  const Real gamma = c.gamma.mid();
  const Real lam = to_real(c.lambda_at_tau.mid());
  const Real S_tilde = to_real(c.prime_at.mid());
  const Real dS_tilde = to_real(c.prime_d1_at.mid());
  // S evaluated at tau rather than tau~
  const Real S_tau = to_real(L.prime_part_at(c.tau.mid()).first);
  r.internal_table = (tau - rho) / rho;
  r.prime_table = S_tau / rho;
  r.sss_table = beta * beta / (4 * rho * gamma);
  r.internal_generic = lam / rho;
  r.sss_generic = sqrt(pi / (2 * rho * l2));
  r.internal_sit = (lam + dS_tilde * tau * tau / (1 - tau)) / rho;
  r.prime_sit = S_tilde / rho;
  r.sss_sit = r.sss_generic * (1 + dS_tilde * (1 / ((1 - tau) * (1 - tau)) - 1));
  return r;
}

/// lambda_kappa tau^kappa / rho: mean number of arity-kappa nodes per leaf.
inline Real arity_constant(const PowerSeries<BigInt>& lambda, std::size_t kappa, const AnalyticConstants& c) {
  using boost::multiprecision::pow;
  if (kappa > lambda.order()) {
    throw std::out_of_range("lambda_" + std::to_string(kappa) + " not available");
  }
  return to_real(lambda[kappa]) * pow(c.tau_r(), static_cast<long>(kappa)) / c.rho_r();
}

/// Evidence (not proof) of aperiodicity: every coefficient from 1 on is nonzero.
inline bool all_coefficients_positive(const PowerSeries<BigInt>& U) {
  for (std::size_t n = 1; n <= U.order(); ++n) {
    if (U[n] <= 0) {
      return false;
    }
  }
  return true;
}

struct Inequality {
  std::string name;
  Real lhs;  // claimed lhs < rhs
  Real rhs;
  bool holds;
};

struct BoundReport {
  std::size_t k = 0;
  Real alpha;
  bool alpha_admissible = false;  // alpha < (e-2)/(e-1)
  Real beta;
  std::vector<Inequality> inequalities;
  Real q_k;                        // k s_k tau~^(k-1)
  std::size_t iota = 0;            // floor(k^(1/3))
  Real A;
  Real B;
  Real beta_needed;                // k (1 - rho/tau~)
  Real rho_scaled;                 // rho k/e
  Real residual;                   // rho k/e - (1 - 5/2 log k/k)
  std::optional<Real> estimate;         // upper-bound estimate at n_estimate
  unsigned long n_estimate = 0;

  const Inequality* find(const std::string& n) const {
    for (const auto& q : inequalities) {
      if (q.name == n) {
        return &q;
      }
    }
    return nullptr;
  }
};

inline std::size_t integer_cube_root(std::size_t k) {
  std::size_t r = 0;
  while ((r + 1) * (r + 1) * (r + 1) <= k) {
    ++r;
  }
  return r;
}

/// 1/(1-e/k)^2 sqrt(e/(4 k pi)) (k/e)^n (1 + 5/2 log k/k)^n n^-3/2, the O(1/k) term dropped.
inline Real large_k_estimate(const Real& k, const Real& n) {
  using boost::multiprecision::log;
  using boost::multiprecision::pow;
  using boost::multiprecision::sqrt;
  const Real e = boost::math::constants::e<Real>();
  const Real pi = boost::math::constants::pi<Real>();
  const Real a = 1 - e / k;
  return sqrt(e / (4 * k * pi)) / (a * a) * pow(k / e, n) * pow(1 + Real(5) / 2 * log(k) / k, n) * pow(n, Real(-1.5));
}

inline BoundReport bounds_report(std::size_t k, const Real& alpha, const Real& beta, const SimpleCounts& s,
                                 const AnalyticConstants& c, unsigned long n_estimate = 0) {
  using boost::multiprecision::log;
  using boost::multiprecision::pow;
  using boost::multiprecision::sqrt;
  if (k < 4) {
    throw std::domain_error("bounds need k >= 4");
  }
  const Real e = boost::math::constants::e<Real>();
  const Real pi = boost::math::constants::pi<Real>();
  const Real kk(k);
  BoundReport r;
  r.k = k;
  r.alpha = alpha;
  r.beta = beta;
  r.alpha_admissible = alpha < (e - 2) / (e - 1);
  const Real sk = to_real(s[k]);
  const Real tt_lo = to_real(c.tau_tilde.lo);
  const Real tt_hi = to_real(c.tau_tilde.hi);
  const Real tt = to_real(c.tau_tilde.mid());
  const Real rho_lo = to_real(c.rho.lo);
  const Real rho_hi = to_real(c.rho.hi);
  const Real inv = 1 / (kk - 1);

  r.inequalities.push_back({"simple_bound", sk, simple_count_upper_bound(k), sk <= simple_count_upper_bound(k)});
  const Real p2_lo = pow(alpha / (kk * sk), inv);
  const Real p2_hi = pow(1 / (kk * sk), inv);
  r.inequalities.push_back({"tilde_lower", p2_lo, tt_lo, p2_lo < tt_lo});
  r.inequalities.push_back({"tilde_upper", tt_hi, p2_hi, tt_hi < p2_hi});
  const Real lower_explicit = e / kk * pow(alpha * pow(e, 3) / (sqrt(2 * pi) * pow(kk, Real(2.5))), inv);
  r.inequalities.push_back({"tilde_lower_explicit", lower_explicit, tt_lo, lower_explicit < tt_lo});
  if (k >= 5) {
    const Real upper_explicit = e / kk * pow(pow(e, 3) / (sqrt(2 * pi) * pow(kk, Real(1.5)) * (kk - 4)), inv);
    r.inequalities.push_back({"tilde_upper_explicit", tt_hi, upper_explicit, tt_hi < upper_explicit});
    r.inequalities.push_back({"tilde_below_e_over_k", tt_hi, e / kk, tt_hi < e / kk});
    r.inequalities.push_back({"rho_upper", rho_hi, upper_explicit, rho_hi < upper_explicit});
    const Real rho_lower = lower_explicit * (1 - beta / kk);
    r.inequalities.push_back({"rho_lower", rho_lower, rho_lo, rho_lower < rho_lo});
  }
  r.q_k = kk * sk * pow(tt, static_cast<long>(k - 1));
  r.iota = integer_cube_root(k);
  r.A = 0;
  r.B = 0;
  for (std::size_t j = 4; j + 1 <= k; ++j) {
    const Real term = Real(j) * to_real(s[j]) * pow(tt, static_cast<long>(j - 1));
    if (j + r.iota + 1 <= k) {
      r.A += term;  // 4 <= j <= k - iota - 1
    } else {
      r.B += term;  // k - iota <= j <= k - 1
    }
  }
  const Real rho = to_real(c.rho.mid());
  r.beta_needed = kk * (1 - rho / tt);
  r.rho_scaled = rho * kk / e;
  r.residual = r.rho_scaled - (1 - Real(5) / 2 * log(kk) / kk);
  if (n_estimate > 0) {
    r.n_estimate = n_estimate;
    r.estimate = large_k_estimate(kk, Real(n_estimate));
  }
  return r;
}

struct StirlingRow {
  unsigned long n;
  BigInt factorial;
  Real estimate_at_n;     // estimate with k = n
  Real ratio;        // estimate_at_n / n!
  Real estimate_at_2n;    // estimate with k = 2n
  Real ratio_2n;     // estimate_at_2n / n!
};

/// sqrt(e/(8 pi^2)), the limiting ratio of the k = n estimate to n!.
inline Real stirling_constant() {
  using boost::multiprecision::sqrt;
  const Real pi = boost::math::constants::pi<Real>();
  return sqrt(boost::math::constants::e<Real>() / (8 * pi * pi));
}

inline StirlingRow stirling_reconciliation(unsigned long n) {
  if (n < 5) {
    throw std::domain_error("stirling reconciliation needs n >= 5 (1 - e/n must stay away from 0)");
  }
  StirlingRow r;
  r.n = n;
  r.factorial = factorial(n);
  const Real f = to_real(r.factorial);
  r.estimate_at_n = large_k_estimate(Real(n), Real(n));
  r.ratio = r.estimate_at_n / f;
  r.estimate_at_2n = large_k_estimate(Real(2 * n), Real(n));
  r.ratio_2n = r.estimate_at_2n / f;
  return r;
}

struct LimitRow {
  std::size_t k;
  AnalyticConstants constants;
};

struct LimitCheck {
  std::vector<LimitRow> rows;
  std::optional<AnalyticConstants> limit;  // constants of the untruncated Lambda
  std::vector<std::size_t> skipped;
};

/// Constants of the truncations Lambda_k = sum_{m<=k} lambda_m x^m for k = 2..K.
inline LimitCheck generic_limit_check(const LambdaSpec& spec, std::size_t K, const Rational& eps,
                                      const SimpleCounts& s = {}) {
  if (spec.kind == LambdaKind::full) {
    throw std::domain_error("the unrestricted Lambda has no finite singularity to converge to");
  }
  LimitCheck out;
  const auto lambda = lambda_coefficients(spec, K, s);
  for (std::size_t k = 2; k <= K; ++k) {
    std::vector<BigInt> c(lambda.coefficients().begin(), lambda.coefficients().begin() + static_cast<std::ptrdiff_t>(k + 1));
    bool any = false;
    for (const auto& v : c) {
      any = any || v != 0;
    }
    if (!any) {
      out.skipped.push_back(k);
      continue;
    }
    try {
      out.rows.push_back({k, solve_constants(AnalyticLambda(LambdaSpec::polynomial(c)), eps)});
    } catch (const SubcriticalLambda&) {
      out.skipped.push_back(k);
    }
  }
  out.limit = solve_constants(AnalyticLambda(spec, s), eps);
  return out;
}

}  // namespace sitlab
