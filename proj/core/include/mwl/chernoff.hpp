#pragma once

#include <string>

#include "mwl/manifold.hpp"
#include "mwl/spectral.hpp"
#include "mwl/tensor.hpp"

namespace mwl {

/// Everything the tail-bound right-hand side consumes. C_env and sigma are
/// the Gaussian-envelope constants of the norm-inequality interpolation
/// function (no canonical values exist; (1,1) is the illustrative default).
struct BoundParams {
  int walk_length = 1;         // K
  double observable_bound = 1;  // r
  PolynomialSpec poly{{0.0, 1.0}, 1};
  double C_env = 1.0;
  double sigma = 1.0;
  TensorShape shape;           // I_1..I_M; requires total >= K
  int ky_fan_k = 1;
  double theta = 1.0;

  void validate() const;
};

/// Scalar baseline 2 exp(-c (1-lambda) K theta^2). The hidden absolute
/// constant is caller-supplied.
double scalar_expander_bound(int walk_length, double theta, double lambda2,
                             double c_omega);

/// log of the bound integrand at a given t and spectral gap. All arithmetic
/// stays in log space; exponents are combined with log-sum-exp.
double log_bound_integrand(double t, const BoundParams& p, double gap);

/// The integrand itself; +infinity (symbolically) once the log exceeds 700.
double bound_integrand(double t, const BoundParams& p, double gap);

enum class BoundaryFlag { interior, at_lower, at_upper };

struct MinimizeResult {
  double t_star = 0.0;
  double log_value = 0.0;
  double value_raw = 0.0;     // may be +inf
  double value_capped = 0.0;  // min(value_raw, 1): a probability bound above 1 is vacuous
  BoundaryFlag boundary = BoundaryFlag::interior;
};

/// Minimizes the integrand over t in [tol, t_max]. The log-integrand is
/// convex in t (each summand's exponent is linear-plus-quadratic with a
/// nonnegative quadratic coefficient), so a ternary search converges;
/// boundary minima are flagged rather than hidden.
MinimizeResult minimize_bound(const BoundParams& p, double gap,
                              double t_max = 10.0, double tol = 1e-9);

enum class GapKind { exact_spectrum, eq7_formula, envelope_lower, envelope_upper };

std::string to_string(GapKind k);

struct GapSource {
  GapKind kind = GapKind::exact_spectrum;
  double gap_value = 0.0;
  std::string provenance;  // convention, eigenvalue index, envelope inputs...
  bool clamped = false;    // envelope value fell below 0 and was clamped
};

struct BoundReport {
  GapSource source;
  MinimizeResult opt;
  double theta = 0.0;
};

/// Tail bound with the gap read off the measured transition spectrum under
/// the summary's active convention.
BoundReport theorem1_bound(const BoundParams& p, const SpectralSummary& s);

struct MonotonicityCheck {
  bool increasing = false;
  double min_derivative = 0.0;  // lower bound on d(exponent)/d(lambda_L) over the interval
};

/// Verifies that the exponent is increasing in lambda_L over
/// [lambda_L_low, lambda_L_high] by sign-checking its derivative (analytic;
/// nonnegative whenever the parameters are positive and K + 8*gap stays
/// nonnegative on the interval).
MonotonicityCheck check_monotonicity(const BoundParams& p, double lambda_L_low,
                                     double lambda_L_high, double degree_sum,
                                     double t);

struct EnvelopeBounds {
  BoundReport lower_env;  // gap from phi_lower(lambda_M)/degree_sum
  BoundReport upper_env;  // gap from phi_upper(lambda_M)/degree_sum
};

/// Tail bounds evaluated at both spectral envelopes. phi_lower below 0 is
/// clamped to 0 and flagged. Guarantees lower_env <= upper_env (monotonicity
/// in the gap).
EnvelopeBounds corollary_bounds(const BoundParams& p, double lambda_M,
                                const EnvelopeParams& env, double degree_sum);

/// Sphere specialization: corollary_bounds composed with the closed-form
/// eigenvalue; bitwise identical to the generic path.
EnvelopeBounds sphere_example_bounds(const BoundParams& p, int i,
                                     const ManifoldDescriptor& d,
                                     const EnvelopeParams& env, double degree_sum);

}  // namespace mwl
