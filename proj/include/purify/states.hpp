#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "purify/linalg.hpp"

namespace purify {

class StateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unit vector in C^dim.
class PureStateVector {
 public:
  static constexpr double kNormTol = 1e-10;

  /// Throws StateError unless | ||v|| - 1 | <= kNormTol.
  explicit PureStateVector(Vector amplitudes);

  /// Normalizes first; throws on a (numerically) zero vector.
  static PureStateVector normalized(const Vector& v);

  static PureStateVector basis(Index dim, Index k);

  Index dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }
  Matrix projector() const { return purify::projector(amplitudes_); }

 private:
  Vector amplitudes_;
};

/// Hermitian, positive semidefinite, unit trace.
class DensityMatrix {
 public:
  static constexpr double kTol = 1e-8;

  /// Validates the invariants at kTol and stores the Hermitian part.
  explicit DensityMatrix(const Matrix& m);

  static DensityMatrix from_pure(const PureStateVector& psi);
  static DensityMatrix maximally_mixed(Index dim);

  Index dim() const { return matrix_.rows(); }
  const Matrix& matrix() const { return matrix_; }

 private:
  Matrix matrix_;
};

/// States of equal dimension with strictly positive priors summing to one.
class Ensemble {
 public:
  static constexpr double kPriorTol = 1e-10;

  Ensemble(std::vector<DensityMatrix> states, std::vector<double> priors);

  /// Two states with priors (eta, 1 - eta).
  static Ensemble pair(DensityMatrix a, DensityMatrix b, double eta);

  /// Uniform priors.
  static Ensemble uniform(std::vector<DensityMatrix> states);

  std::size_t size() const { return states_.size(); }
  Index dim() const { return states_.front().dim(); }
  const std::vector<DensityMatrix>& states() const { return states_; }
  const std::vector<double>& priors() const { return priors_; }
  const DensityMatrix& state(std::size_t i) const { return states_.at(i); }
  double prior(std::size_t i) const { return priors_.at(i); }

 private:
  std::vector<DensityMatrix> states_;
  std::vector<double> priors_;
};

/// tr rho^2.
double purity(const DensityMatrix& rho);

bool is_pure(const DensityMatrix& rho, double tol = 1e-9);

/// Tensor product of two states.
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

// Random generators. Every generator is a pure function of its seed.

/// Haar-random unitary (QR of a complex Ginibre matrix, phases fixed).
Matrix random_unitary(Index dim, std::mt19937_64& rng);
Matrix random_unitary(Index dim, std::uint64_t seed);

PureStateVector random_pure(Index dim, std::mt19937_64& rng);
PureStateVector random_pure(Index dim, std::uint64_t seed);

/// Spectrum uniform on the simplex (restricted to `rank` entries), Haar
/// basis. The result has exactly `rank` eigenvalues above tol::kRank.
DensityMatrix random_mixed(Index dim, Index rank, std::mt19937_64& rng);
DensityMatrix random_mixed(Index dim, Index rank, std::uint64_t seed);

/// Two distinct, non-orthogonal states diagonal in one Haar-random basis,
/// each with full support.
std::pair<DensityMatrix, DensityMatrix> random_commuting_pair(
    Index dim, std::uint64_t seed);

/// The dim-4 two-state family
///   rho  = 1/2 (|0><0| + |1><1|) (x) |0><0|
///   rho' = 2/3 |0><0| (x) |+><+| + 1/3 |1><1| (x) |t><t|,
///   |t>  = cos(theta)|0> + sin(theta)|1>,
/// with equal priors. theta must lie in [0, pi/2].
Ensemble figure_example(double theta);

}  // namespace purify
