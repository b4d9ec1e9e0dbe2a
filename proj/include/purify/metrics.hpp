#pragma once

#include <utility>
#include <vector>

#include "purify/states.hpp"

namespace purify {

/// Canonical (principal) angles between range(a) and range(b), together
/// with paired canonical bases.
///
/// Column i of `basis_a` and column i of `basis_b` form the i-th pair:
/// <a_i|b_j> = 0 for i != j and <a_i|b_i> = cos(angles[i]) >= 0. Range
/// vectors that have no partner (the ranks differ) are collected in the
/// residual blocks; they are orthogonal to every column of the other side.
struct CanonicalAngles {
  std::vector<double> angles;  // ascending, in [0, pi/2]
  Matrix basis_a;
  Matrix basis_b;
  Matrix residual_a;
  Matrix residual_b;

  std::size_t size() const { return angles.size(); }
};

/// 1/2 tr|rho - sigma|.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Uhlmann fidelity tr sqrt(sqrt(rho) sigma sqrt(rho)).
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

CanonicalAngles canonical_angles(const DensityMatrix& rho,
                                 const DensityMatrix& sigma,
                                 double rank_tol = tol::kRank);

/// Worst-case distinguishability: the smallest trace distance between pure
/// states drawn from range(rho) and range(sigma), i.e. the sine of the
/// smallest canonical angle.
///
/// Evaluated as the smallest singular value of (1 - P_rho) Q_sigma, which
/// stays accurate when the ranges (nearly) intersect.
double wcd(const DensityMatrix& rho, const DensityMatrix& sigma,
           double rank_tol = tol::kRank);

struct AlphaBeta {
  double alpha;  // arcsin(wcd)
  double beta;   // arccos(fidelity)
};

AlphaBeta alpha_beta(const DensityMatrix& rho, const DensityMatrix& sigma,
                     double rank_tol = tol::kRank);

}  // namespace purify
