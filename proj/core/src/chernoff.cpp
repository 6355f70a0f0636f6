#include "mwl/chernoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mwl/errors.hpp"

namespace mwl {

namespace {
constexpr double kLogOverflow = 700.0;  // exp(700) is the symbolic-infinity edge
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

void BoundParams::validate() const {
  require(walk_length >= 1, ErrorCode::precondition, "walk length must be >= 1");
  require(shape.order() >= 1, ErrorCode::precondition,
          "tensor shape needs at least one mode");
  require(observable_bound > 0.0, ErrorCode::precondition,
          "observable bound must be positive");
  require(C_env > 0.0 && sigma > 0.0, ErrorCode::precondition,
          "envelope constants must be positive");
  require(ky_fan_k >= 1 && ky_fan_k <= shape.total(), ErrorCode::precondition,
          "ky_fan_k out of range");
  require(theta > 0.0, ErrorCode::precondition, "theta must be positive");
  require(shape.total() >= walk_length, ErrorCode::precondition,
          "walk length exceeds the tensor dimension (the radical term "
          "sqrt((I-K)/K) requires K <= I_1^M)");
}

double scalar_expander_bound(int walk_length, double theta, double lambda2,
                             double c_omega) {
  require(lambda2 >= 0.0 && lambda2 <= 1.0, ErrorCode::precondition,
          "lambda2 must lie in [0,1]");
  require(c_omega > 0.0, ErrorCode::precondition, "constant must be positive");
  return 2.0 * std::exp(-c_omega * (1.0 - lambda2) * walk_length * theta * theta);
}

double log_bound_integrand(double t, const BoundParams& p, double gap) {
  require(t > 0.0, ErrorCode::precondition, "t must be positive");
  p.validate();

  const double K = static_cast<double>(p.walk_length);
  const double r = p.observable_bound;
  const double s = static_cast<double>(p.poly.power);
  const int deg = p.poly.degree();
  const double radical =
      std::sqrt((static_cast<double>(p.shape.total()) - K) / K);
  const double keff = K + 8.0 * gap;

  // log-sum-exp over the a_0 term and the l = 1..deg exponential terms
  std::vector<double> terms;
  terms.reserve(deg + 1);
  if (p.poly.coeffs[0] > 0.0) terms.push_back(std::log(p.poly.coeffs[0] * K));
  const double log_prefactor = std::log(p.C_env * (K + radical));
  for (int l = 1; l <= deg; ++l) {
    const double a = p.poly.coeffs[l];
    if (a <= 0.0) continue;
    const double lsr = static_cast<double>(l) * s * r;
    const double expo = 8.0 * K * gap + 2.0 * keff * lsr * t +
                        2.0 * (p.sigma * keff * lsr) * (p.sigma * keff * lsr) * t * t;
    terms.push_back(log_prefactor + std::log(a) + expo);
  }
  require(!terms.empty(), ErrorCode::precondition, "polynomial has no active terms");

  const double m = *std::max_element(terms.begin(), terms.end());
  double acc = 0.0;
  for (double x : terms) acc += std::exp(x - m);
  const double lse = m + std::log(acc);

  return (s - 1.0) * std::log(static_cast<double>(deg + 1)) - p.theta * t + lse;
}

double bound_integrand(double t, const BoundParams& p, double gap) {
  const double lv = log_bound_integrand(t, p, gap);
  return lv > kLogOverflow ? kInf : std::exp(lv);
}

MinimizeResult minimize_bound(const BoundParams& p, double gap, double t_max,
                              double tol) {
  require(t_max > 0.0 && tol > 0.0, ErrorCode::precondition,
          "t_max and tol must be positive");
  p.validate();

  const double t_lo = tol;
  require(t_lo < t_max, ErrorCode::precondition, "tol must be below t_max");
  auto f = [&](double t) { return log_bound_integrand(t, p, gap); };

  // Ternary search on the (convex) log-value.
  double lo = t_lo, hi = t_max;
  for (int it = 0; it < 400 && (hi - lo) > 1e-15 * std::max(1.0, hi); ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (f(m1) <= f(m2))
      hi = m2;
    else
      lo = m1;
  }

  MinimizeResult res;
  res.t_star = (lo + hi) / 2.0;
  res.log_value = f(res.t_star);
  // Snap to a boundary when it is genuinely lower (monotone cases).
  if (f(t_lo) <= res.log_value) {
    res.t_star = t_lo;
    res.log_value = f(t_lo);
    res.boundary = BoundaryFlag::at_lower;
  } else if (f(t_max) <= res.log_value) {
    res.t_star = t_max;
    res.log_value = f(t_max);
    res.boundary = BoundaryFlag::at_upper;
  } else {
    const double width = std::max(1e-9, 1e-6 * t_max);
    if (res.t_star - t_lo < width)
      res.boundary = BoundaryFlag::at_lower;
    else if (t_max - res.t_star < width)
      res.boundary = BoundaryFlag::at_upper;
  }

  res.value_raw = res.log_value > kLogOverflow ? kInf : std::exp(res.log_value);
  res.value_capped = std::min(res.value_raw, 1.0);
  return res;
}

std::string to_string(GapKind k) {
  switch (k) {
    case GapKind::exact_spectrum: return "exact_spectrum";
    case GapKind::eq7_formula: return "eq7_formula";
    case GapKind::envelope_lower: return "envelope_lower";
    case GapKind::envelope_upper: return "envelope_upper";
  }
  return "unknown";
}

BoundReport theorem1_bound(const BoundParams& p, const SpectralSummary& s) {
  BoundReport rep;
  rep.theta = p.theta;
  rep.source.kind = GapKind::exact_spectrum;
  rep.source.gap_value = s.gap;
  rep.source.provenance =
      s.convention == GapConvention::algebraic_second ? "algebraic_second"
                                                      : "absolute_second";
  if (s.gap > 1.0) rep.source.provenance += " [gap>1]";
  rep.opt = minimize_bound(p, s.gap);
  return rep;
}

MonotonicityCheck check_monotonicity(const BoundParams& p, double lambda_L_low,
                                     double lambda_L_high, double degree_sum,
                                     double t) {
  p.validate();
  require(degree_sum > 0.0, ErrorCode::precondition, "degree sum must be positive");
  require(lambda_L_low <= lambda_L_high, ErrorCode::precondition,
          "empty lambda interval");
  require(t >= 0.0, ErrorCode::precondition, "t must be nonnegative");

  // Exponent per degree-l term, written in gap = lambda_L / degree_sum:
  //   E_l(gap) = 8 K gap + 2 (K + 8 gap) lsr t + 2 sigma^2 (lsr)^2 (K + 8 gap)^2 t^2,
  // so dE_l/d(lambda_L) = [8K + 16 lsr t + 32 sigma^2 (lsr)^2 (K + 8 gap) t^2] / degree_sum,
  // which is increasing in gap whenever K + 8 gap >= 0; its minimum over the
  // interval therefore sits at the left endpoint.
  const double K = static_cast<double>(p.walk_length);
  const double s = static_cast<double>(p.poly.power);
  const double r = p.observable_bound;
  const double gap_lo = lambda_L_low / degree_sum;

  MonotonicityCheck out;
  out.min_derivative = std::numeric_limits<double>::infinity();
  bool any = false;
  for (int l = 1; l <= p.poly.degree(); ++l) {
    if (p.poly.coeffs[l] <= 0.0) continue;
    any = true;
    const double lsr = static_cast<double>(l) * s * r;
    const double keff_lo = K + 8.0 * gap_lo;
    const double d = (8.0 * K + 16.0 * lsr * t +
                      32.0 * p.sigma * p.sigma * lsr * lsr * keff_lo * t * t) /
                     degree_sum;
    out.min_derivative = std::min(out.min_derivative, d);
  }
  if (!any) {
    // a_0-only polynomial: the expression is constant in lambda_L
    out.min_derivative = 0.0;
    out.increasing = true;
    return out;
  }
  out.increasing = out.min_derivative >= 0.0;
  return out;
}

namespace {
BoundReport envelope_report(const BoundParams& p, double lambda_M,
                            const EnvelopeParams& env, double degree_sum,
                            EnvelopeSide side) {
  require(degree_sum > 0.0, ErrorCode::precondition, "degree sum must be positive");
  const double phi = side == EnvelopeSide::lower ? phi_lower(lambda_M, env)
                                                 : phi_upper(lambda_M, env);
  BoundReport rep;
  rep.theta = p.theta;
  rep.source.kind = side == EnvelopeSide::lower ? GapKind::envelope_lower
                                                : GapKind::envelope_upper;
  double phi_used = phi;
  if (phi_used < 0.0) {
    phi_used = 0.0;  // the envelope exited the valid spectral range
    rep.source.clamped = true;
  }
  rep.source.gap_value = phi_used / degree_sum;
  rep.source.provenance = "phi(" + std::to_string(lambda_M) + ")/" +
                          std::to_string(degree_sum);
  if (rep.source.gap_value > 1.0) rep.source.provenance += " [gap>1]";
  rep.opt = minimize_bound(p, rep.source.gap_value);
  return rep;
}
}  // namespace

EnvelopeBounds corollary_bounds(const BoundParams& p, double lambda_M,
                                const EnvelopeParams& env, double degree_sum) {
  require(lambda_M >= 0.0, ErrorCode::precondition, "lambda_M must be nonnegative");
  EnvelopeBounds out;
  out.lower_env = envelope_report(p, lambda_M, env, degree_sum, EnvelopeSide::lower);
  out.upper_env = envelope_report(p, lambda_M, env, degree_sum, EnvelopeSide::upper);

  // Substituting the envelope for the eigenvalue is only sound while the
  // exponent is increasing over the enclosed interval; check it at the
  // optimizer's own t.
  const double lam_lo = out.lower_env.source.gap_value * degree_sum;
  const double lam_hi = out.upper_env.source.gap_value * degree_sum;
  const double t_chk = std::max(out.lower_env.opt.t_star, out.upper_env.opt.t_star);
  const MonotonicityCheck mono =
      check_monotonicity(p, lam_lo, lam_hi, degree_sum, t_chk);
  require(mono.increasing, ErrorCode::precondition,
          "exponent is not increasing over the envelope interval");

  // Monotonicity in the gap makes the ordering structural; verify anyway.
  require(out.lower_env.opt.log_value <= out.upper_env.opt.log_value + 1e-9,
          ErrorCode::precondition, "envelope bounds are out of order");
  return out;
}

EnvelopeBounds sphere_example_bounds(const BoundParams& p, int i,
                                     const ManifoldDescriptor& d,
                                     const EnvelopeParams& env, double degree_sum) {
  require(d.family == ManifoldFamily::sphere, ErrorCode::precondition,
          "sphere bounds need a sphere descriptor");
  const double lam = laplace_beltrami_eigenvalue(i, d);
  return corollary_bounds(p, lam, env, degree_sum);
}

}  // namespace mwl
