#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace mwl {

/// Mode sizes I_1..I_M of an order-2M tensor indexed (i_1..i_M, j_1..j_M).
struct TensorShape {
  std::vector<int> mode_dims;

  int order() const { return static_cast<int>(mode_dims.size()); }
  int total() const;  // product of mode_dims

  bool operator==(const TensorShape&) const = default;
};

/// Order-2M complex tensor with a square unfolding. Entries are stored in
/// row-major order over the combined index (i_1..i_M, j_1..j_M), which makes
/// unfold() the mixed-radix reshape with i_1 most significant.
class Tensor {
 public:
  Tensor(TensorShape shape, std::vector<std::complex<double>> entries);

  static Tensor refold(const Eigen::MatrixXcd& unfolding, TensorShape shape);

  Eigen::MatrixXcd unfold() const;
  const TensorShape& shape() const { return shape_; }
  const std::vector<std::complex<double>>& entries() const { return entries_; }

  /// Entry access by multi-index (0-based, length M each).
  std::complex<double> at(std::span<const int> i, std::span<const int> j) const;

 protected:
  TensorShape shape_;
  std::vector<std::complex<double>> entries_;
};

/// Tensor whose unfolding is Hermitian. On construction, asymmetry up to
/// `tol` (max-entry scale) is symmetrized away; anything larger is an error.
class HermitianTensor : public Tensor {
 public:
  static HermitianTensor from_unfolding(const Eigen::MatrixXcd& unfolding,
                                        TensorShape shape, double tol = 1e-10);
  static HermitianTensor from_tensor(const Tensor& t, double tol = 1e-10);
  static HermitianTensor identity(TensorShape shape);
  /// Diagonal tensor with the given real unfolding diagonal.
  static HermitianTensor diagonal(TensorShape shape, std::span<const double> diag);

 private:
  using Tensor::Tensor;
};

/// f: x -> (a_0 + a_1 x + ... + a_deg x^deg)^s with nonnegative coefficients,
/// s >= 1, and at least one positive coefficient.
struct PolynomialSpec {
  std::vector<double> coeffs;  // a_0..a_deg
  int power = 1;               // s

  PolynomialSpec(std::vector<double> coeffs, int power);
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  double eval(double x) const;
};

/// Contraction over the trailing M modes: unfold(a*b) = unfold(a)*unfold(b).
Tensor einstein_product(const Tensor& a, const Tensor& b);

/// Eigenvalues of the unfolding, descending.
Eigen::VectorXd eigenvalues(const HermitianTensor& t);

double spectral_norm(const HermitianTensor& t);

/// Sum of the k largest singular values of the unfolding (= k largest
/// |eigenvalues| for Hermitian tensors). The default norm for bound
/// comparisons.
double ky_fan_norm(const HermitianTensor& t, int k);

/// Sum of the k largest (signed) eigenvalues; the eigenvalue-flavored
/// variant, provided for comparison.
double ky_fan_signed(const HermitianTensor& t, int k);

/// Spectral calculus: diagonalize the unfolding, map each eigenvalue through
/// the scalar polynomial, recompose.
HermitianTensor apply_polynomial(const HermitianTensor& t, const PolynomialSpec& p);

/// exp(t * T) through the same spectral route.
HermitianTensor tensor_exponential(const HermitianTensor& t, double scale);

/// Symmetrized complex Gaussian rescaled so spectral_norm == bound exactly.
/// Deterministic per seed.
HermitianTensor random_hermitian(TensorShape shape, double bound, std::uint64_t seed);

}  // namespace mwl
