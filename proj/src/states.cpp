#include "purify/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace purify {

namespace {

Vector gaussian_vector(Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

// Uniform sample from the probability simplex with `n` entries, via
// normalized exponentials.
std::vector<double> simplex_sample(Index n, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(static_cast<std::size_t>(n));
  for (double& x : p) x = expo(rng);
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x /= total;
  return p;
}

DensityMatrix diagonal_in(const Matrix& basis, const std::vector<double>& p) {
  RealVector spectrum = RealVector::Zero(basis.cols());
  for (std::size_t k = 0; k < p.size(); ++k) {
    spectrum(static_cast<Index>(k)) = p[k];
  }
  return DensityMatrix(basis * spectrum.cast<Complex>().asDiagonal() *
                       basis.adjoint());
}

}  // namespace

PureStateVector::PureStateVector(Vector amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw StateError("pure state: empty vector");
  if (!all_finite(amplitudes_)) {
    throw StateError("pure state: non-finite amplitude");
  }
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > kNormTol) {
    throw StateError("pure state: norm " + std::to_string(norm) +
                     " is not 1");
  }
}

PureStateVector PureStateVector::normalized(const Vector& v) {
  const double norm = v.norm();
  if (!(norm > 1e-300)) throw StateError("pure state: zero vector");
  return PureStateVector(v / norm);
}

PureStateVector PureStateVector::basis(Index dim, Index k) {
  if (k < 0 || k >= dim) throw StateError("pure state: basis index out of range");
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return PureStateVector(std::move(v));
}

DensityMatrix::DensityMatrix(const Matrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw StateError("density matrix: must be square and non-empty");
  }
  if (!all_finite(m)) throw StateError("density matrix: non-finite entry");
  const double herm = hermiticity_defect(m);
  if (herm > kTol) {
    throw StateError("density matrix: hermiticity defect " +
                     std::to_string(herm));
  }
  matrix_ = 0.5 * (m + m.adjoint());
  const double trace = matrix_.trace().real();
  if (std::abs(trace - 1.0) > kTol) {
    throw StateError("density matrix: trace " + std::to_string(trace));
  }
  const HermitianEigen eig = hermitian_eig(matrix_);
  const double min_eig = eig.values(eig.values.size() - 1);
  if (min_eig < -kTol) {
    throw StateError("density matrix: negative eigenvalue " +
                     std::to_string(min_eig));
  }
}

DensityMatrix DensityMatrix::from_pure(const PureStateVector& psi) {
  return DensityMatrix(psi.projector());
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

Ensemble::Ensemble(std::vector<DensityMatrix> states,
                   std::vector<double> priors)
    : states_(std::move(states)), priors_(std::move(priors)) {
  if (states_.empty()) throw StateError("ensemble: no states");
  if (states_.size() != priors_.size()) {
    throw StateError("ensemble: state and prior counts differ");
  }
  double total = 0.0;
  for (double p : priors_) {
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw StateError("ensemble: priors must be positive");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kPriorTol) {
    throw StateError("ensemble: priors sum to " + std::to_string(total));
  }
  for (const auto& s : states_) {
    if (s.dim() != states_.front().dim()) {
      throw StateError("ensemble: states have different dimensions");
    }
  }
}

Ensemble Ensemble::pair(DensityMatrix a, DensityMatrix b, double eta) {
  return Ensemble({std::move(a), std::move(b)}, {eta, 1.0 - eta});
}

Ensemble Ensemble::uniform(std::vector<DensityMatrix> states) {
  const double p = 1.0 / static_cast<double>(states.size());
  std::vector<double> priors(states.size(), p);
  return Ensemble(std::move(states), std::move(priors));
}

double purity(const DensityMatrix& rho) {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.matrix().squaredNorm();
}

bool is_pure(const DensityMatrix& rho, double tol) {
  return 1.0 - purity(rho) <= tol;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(kron(a.matrix(), b.matrix()));
}

Matrix random_unitary(Index dim, std::mt19937_64& rng) {
  Matrix g(dim, dim);
  for (Index j = 0; j < dim; ++j) g.col(j) = gaussian_vector(dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Absorb the phases of diag(R) so the distribution is Haar.
  for (Index k = 0; k < dim; ++k) {
    const Complex d = r(k, k);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(k) *= d / mag;
  }
  return q;
}

Matrix random_unitary(Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_unitary(dim, rng);
}

PureStateVector random_pure(Index dim, std::mt19937_64& rng) {
  if (dim < 1) throw StateError("random_pure: dim must be >= 1");
  return PureStateVector::normalized(gaussian_vector(dim, rng));
}

PureStateVector random_pure(Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_pure(dim, rng);
}

DensityMatrix random_mixed(Index dim, Index rank, std::mt19937_64& rng) {
  if (rank < 1 || rank > dim) {
    throw StateError("random_mixed: rank must lie in [1, dim]");
  }
  const Matrix basis = random_unitary(dim, rng);
  // Resample until every kept weight clears the rank threshold with margin,
  // so the numerical rank is exactly `rank`.
  std::vector<double> p;
  do {
    p = simplex_sample(rank, rng);
  } while (*std::min_element(p.begin(), p.end()) < 1e3 * tol::kRank);
  return diagonal_in(basis, p);
}

DensityMatrix random_mixed(Index dim, Index rank, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_mixed(dim, rank, rng);
}

std::pair<DensityMatrix, DensityMatrix> random_commuting_pair(
    Index dim, std::uint64_t seed) {
  if (dim < 2) throw StateError("random_commuting_pair: dim must be >= 2");
  std::mt19937_64 rng(seed);
  const Matrix basis = random_unitary(dim, rng);
  for (;;) {
    const auto p = simplex_sample(dim, rng);
    const auto q = simplex_sample(dim, rng);
    const double pmin = *std::min_element(p.begin(), p.end());
    const double qmin = *std::min_element(q.begin(), q.end());
    double overlap = 0.0;
    double diff = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      overlap += p[k] * q[k];
      diff = std::max(diff, std::abs(p[k] - q[k]));
    }
    if (pmin > 1e3 * tol::kRank && qmin > 1e3 * tol::kRank &&
        overlap > 1e-6 && diff > 1e-6) {
      return {diagonal_in(basis, p), diagonal_in(basis, q)};
    }
  }
}

Ensemble figure_example(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 2)) {
    throw StateError("figure_example: theta must lie in [0, pi/2]");
  }
  Vector zero(2), one(2), plus(2), tilted(2);
  zero << 1.0, 0.0;
  one << 0.0, 1.0;
  plus << std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2;
  tilted << std::cos(theta), std::sin(theta);

  const Matrix rho = kron(0.5 * (projector(zero) + projector(one)),
                          projector(zero));
  const Matrix rho_prime = 2.0 / 3.0 * kron(projector(zero), projector(plus)) +
                           1.0 / 3.0 * kron(projector(one), projector(tilted));
  return Ensemble::pair(DensityMatrix(rho), DensityMatrix(rho_prime), 0.5);
}

}  // namespace purify
