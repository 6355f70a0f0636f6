#include "mwl/tensor.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "mwl/errors.hpp"
#include "mwl/rng.hpp"

namespace mwl {

namespace {

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solve_hermitian(
    const Eigen::MatrixXcd& a, bool with_vectors) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es;
  es.compute(a, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  require(es.info() == Eigen::Success, ErrorCode::precondition,
          "Hermitian eigensolver failed to converge");
  return es;
}

double max_abs(const Eigen::MatrixXcd& a) {
  return a.cwiseAbs().maxCoeff();
}

}  // namespace

int TensorShape::total() const {
  int t = 1;
  for (int d : mode_dims) {
    require(d >= 1, ErrorCode::precondition, "mode dimensions must be positive");
    t *= d;
  }
  return t;
}

Tensor::Tensor(TensorShape shape, std::vector<std::complex<double>> entries)
    : shape_(std::move(shape)), entries_(std::move(entries)) {
  require(shape_.order() >= 1, ErrorCode::precondition, "tensor needs at least one mode");
  const long n = shape_.total();
  require(n <= 64, ErrorCode::precondition,
          "dense tensor storage is capped at unfolding side 64");
  require(static_cast<long>(entries_.size()) == n * n, ErrorCode::precondition,
          "entry count does not match the shape");
}

Tensor Tensor::refold(const Eigen::MatrixXcd& unfolding, TensorShape shape) {
  const int n = shape.total();
  require(unfolding.rows() == n && unfolding.cols() == n, ErrorCode::precondition,
          "unfolding side must equal the product of mode dimensions");
  std::vector<std::complex<double>> entries(static_cast<size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      entries[static_cast<size_t>(r) * n + c] = unfolding(r, c);
  return Tensor(std::move(shape), std::move(entries));
}

Eigen::MatrixXcd Tensor::unfold() const {
  const int n = shape_.total();
  Eigen::MatrixXcd u(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      u(r, c) = entries_[static_cast<size_t>(r) * n + c];
  return u;
}

std::complex<double> Tensor::at(std::span<const int> i, std::span<const int> j) const {
  const int m = shape_.order();
  require(static_cast<int>(i.size()) == m && static_cast<int>(j.size()) == m,
          ErrorCode::precondition, "multi-index length must equal the mode count");
  // Mixed-radix encoding with the first mode most significant.
  auto encode = [&](std::span<const int> idx) {
    long code = 0;
    for (int a = 0; a < m; ++a) {
      require(idx[a] >= 0 && idx[a] < shape_.mode_dims[a], ErrorCode::precondition,
              "multi-index out of range");
      code = code * shape_.mode_dims[a] + idx[a];
    }
    return code;
  };
  return entries_[static_cast<size_t>(encode(i)) * shape_.total() + encode(j)];
}

HermitianTensor HermitianTensor::from_unfolding(const Eigen::MatrixXcd& unfolding,
                                                TensorShape shape, double tol) {
  const int n = shape.total();
  require(unfolding.rows() == n && unfolding.cols() == n, ErrorCode::precondition,
          "unfolding side must equal the product of mode dimensions");
  const double scale = std::max(1.0, max_abs(unfolding));
  const double asym = max_abs(unfolding - unfolding.adjoint());
  require(asym <= tol * scale, ErrorCode::precondition,
          "unfolding is not Hermitian (asymmetry " + std::to_string(asym) + ")");
  const Eigen::MatrixXcd h = (unfolding + unfolding.adjoint()) / 2.0;
  const Tensor t = Tensor::refold(h, std::move(shape));
  return HermitianTensor(t.shape(), t.entries());
}

HermitianTensor HermitianTensor::from_tensor(const Tensor& t, double tol) {
  return from_unfolding(t.unfold(), t.shape(), tol);
}

HermitianTensor HermitianTensor::identity(TensorShape shape) {
  const int n = shape.total();
  return from_unfolding(Eigen::MatrixXcd::Identity(n, n), std::move(shape));
}

HermitianTensor HermitianTensor::diagonal(TensorShape shape,
                                          std::span<const double> diag) {
  const int n = shape.total();
  require(static_cast<int>(diag.size()) == n, ErrorCode::precondition,
          "diagonal length must equal the unfolding side");
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) u(i, i) = diag[i];
  return from_unfolding(u, std::move(shape));
}

PolynomialSpec::PolynomialSpec(std::vector<double> c, int s)
    : coeffs(std::move(c)), power(s) {
  require(!coeffs.empty(), ErrorCode::precondition, "polynomial needs coefficients");
  require(power >= 1, ErrorCode::precondition, "power must be >= 1");
  bool any_positive = false;
  for (double a : coeffs) {
    require(a >= 0.0, ErrorCode::precondition, "coefficients must be nonnegative");
    if (a > 0.0) any_positive = true;
  }
  require(any_positive, ErrorCode::precondition,
          "at least one coefficient must be positive");
}

double PolynomialSpec::eval(double x) const {
  double base = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) base = base * x + *it;
  double out = 1.0;
  for (int i = 0; i < power; ++i) out *= base;
  return out;
}

Tensor einstein_product(const Tensor& a, const Tensor& b) {
  require(a.shape() == b.shape(), ErrorCode::precondition,
          "einstein product requires matching shapes");
  return Tensor::refold(a.unfold() * b.unfold(), a.shape());
}

Eigen::VectorXd eigenvalues(const HermitianTensor& t) {
  const Eigen::VectorXd asc = solve_hermitian(t.unfold(), false).eigenvalues();
  return asc.reverse();
}

double spectral_norm(const HermitianTensor& t) {
  const Eigen::VectorXd ev = eigenvalues(t);
  return ev.cwiseAbs().maxCoeff();
}

double ky_fan_norm(const HermitianTensor& t, int k) {
  const Eigen::VectorXd ev = eigenvalues(t);
  require(k >= 1 && k <= ev.size(), ErrorCode::precondition, "k out of range");
  std::vector<double> s(ev.data(), ev.data() + ev.size());
  for (double& x : s) x = std::abs(x);
  std::sort(s.begin(), s.end(), std::greater<>());
  return std::accumulate(s.begin(), s.begin() + k, 0.0);
}

double ky_fan_signed(const HermitianTensor& t, int k) {
  const Eigen::VectorXd ev = eigenvalues(t);  // descending
  require(k >= 1 && k <= ev.size(), ErrorCode::precondition, "k out of range");
  return ev.head(k).sum();
}

namespace {
HermitianTensor spectral_map(const HermitianTensor& t,
                             const std::function<double(double)>& f) {
  const auto es = solve_hermitian(t.unfold(), true);
  Eigen::VectorXd mapped = es.eigenvalues();
  for (int i = 0; i < mapped.size(); ++i) mapped[i] = f(mapped[i]);
  const Eigen::MatrixXcd u = es.eigenvectors() * mapped.asDiagonal() *
                             es.eigenvectors().adjoint();
  return HermitianTensor::from_unfolding(u, t.shape(), 1e-8);
}
}  // namespace

HermitianTensor apply_polynomial(const HermitianTensor& t, const PolynomialSpec& p) {
  return spectral_map(t, [&p](double x) { return p.eval(x); });
}

HermitianTensor tensor_exponential(const HermitianTensor& t, double scale) {
  return spectral_map(t, [scale](double x) { return std::exp(scale * x); });
}

HermitianTensor random_hermitian(TensorShape shape, double bound,
                                 std::uint64_t seed) {
  require(bound > 0.0, ErrorCode::precondition, "spectral bound must be positive");
  const int n = shape.total();
  Rng rng(seed);
  Eigen::MatrixXcd g(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      g(r, c) = std::complex<double>(rng.normal(), rng.normal());
  Eigen::MatrixXcd h = (g + g.adjoint()) / 2.0;
  HermitianTensor t = HermitianTensor::from_unfolding(h, shape);
  const double norm = spectral_norm(t);
  require(norm > 0.0, ErrorCode::precondition, "degenerate random draw");
  return HermitianTensor::from_unfolding(t.unfold() * (bound / norm),
                                         std::move(shape));
}

}  // namespace mwl
