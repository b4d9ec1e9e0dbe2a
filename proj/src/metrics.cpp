#include "purify/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace purify {

namespace {

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b,
                      const char* what) {
  if (a.dim() != b.dim()) {
    throw StateError(std::string(what) + ": dimension mismatch (" +
                     std::to_string(a.dim()) + " vs " +
                     std::to_string(b.dim()) + ")");
  }
}

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "trace_distance");
  const HermitianEigen eig = hermitian_eig(rho.matrix() - sigma.matrix());
  return clamp_unit(0.5 * eig.values.cwiseAbs().sum());
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "fidelity");
  const Matrix root = psd_sqrt(rho.matrix());
  const Matrix inner = root * sigma.matrix() * root;
  const HermitianEigen eig = hermitian_eig(0.5 * (inner + inner.adjoint()));
  // Eigenvalues of a rank-deficient inner product carry O(eps) noise that the
  // square root would amplify to O(sqrt(eps)); treat that band as zero.
  const double scale = std::max(1.0, eig.values(0));
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * scale;
  double total = 0.0;
  for (Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) > floor) total += std::sqrt(eig.values(k));
  }
  return clamp_unit(total);
}

CanonicalAngles canonical_angles(const DensityMatrix& rho,
                                 const DensityMatrix& sigma,
                                 double rank_tol) {
  require_same_dim(rho, sigma, "canonical_angles");
  const Matrix qa = range_basis(rho.matrix(), rank_tol);
  const Matrix qb = range_basis(sigma.matrix(), rank_tol);
  const Svd s = svd(qa.adjoint() * qb);
  const Index paired = std::min(qa.cols(), qb.cols());

  const Matrix a = qa * s.u;
  const Matrix b = qb * s.v;

  // Angle per pair from both its cosine and its sine, so that small angles
  // keep full absolute accuracy.
  std::vector<double> raw(static_cast<std::size_t>(paired));
  for (Index i = 0; i < paired; ++i) {
    const Complex overlap = a.col(i).dot(b.col(i));
    const double sine = (b.col(i) - overlap * a.col(i)).norm();
    raw[static_cast<std::size_t>(i)] = std::atan2(sine, std::abs(overlap));
  }
  std::vector<Index> order(static_cast<std::size_t>(paired));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) {
    return raw[static_cast<std::size_t>(x)] < raw[static_cast<std::size_t>(y)];
  });

  CanonicalAngles out;
  out.basis_a.resize(rho.dim(), paired);
  out.basis_b.resize(rho.dim(), paired);
  for (Index i = 0; i < paired; ++i) {
    const Index src = order[static_cast<std::size_t>(i)];
    out.angles.push_back(raw[static_cast<std::size_t>(src)]);
    out.basis_a.col(i) = a.col(src);
    // Fix the phase so <a_i|b_i> is real and nonnegative.
    const Complex overlap = a.col(src).dot(b.col(src));
    const double mag = std::abs(overlap);
    out.basis_b.col(i) =
        mag > 0.0 ? Vector(b.col(src) * (std::conj(overlap) / mag))
                  : Vector(b.col(src));
  }
  out.residual_a = a.rightCols(a.cols() - paired);
  out.residual_b = b.rightCols(b.cols() - paired);
  return out;
}

double wcd(const DensityMatrix& rho, const DensityMatrix& sigma,
           double rank_tol) {
  require_same_dim(rho, sigma, "wcd");
  const Matrix qa = range_basis(rho.matrix(), rank_tol);
  const Matrix qb = range_basis(sigma.matrix(), rank_tol);
  const Matrix off_range = qb - qa * (qa.adjoint() * qb);
  Eigen::JacobiSVD<Matrix> solver(off_range);
  const RealVector& s = solver.singularValues();
  return clamp_unit(s(s.size() - 1));
}

AlphaBeta alpha_beta(const DensityMatrix& rho, const DensityMatrix& sigma,
                     double rank_tol) {
  return AlphaBeta{std::asin(wcd(rho, sigma, rank_tol)),
                   std::acos(fidelity(rho, sigma))};
}

}  // namespace purify
