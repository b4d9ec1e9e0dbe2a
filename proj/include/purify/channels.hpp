#pragma once

#include <cstdint>
#include <vector>

#include "purify/metrics.hpp"
#include "purify/states.hpp"

namespace purify {

class ChannelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CptpCheck {
  bool ok;
  double defect;  // max-entry norm of sum K^dag K - I
};

CptpCheck is_cptp(const std::vector<Matrix>& kraus, double tol = 1e-8);

/// Completely positive trace-preserving map rho -> sum_k K_k rho K_k^dag.
/// Construction checks trace preservation at `tol`.
class KrausChannel {
 public:
  static constexpr double kTol = 1e-8;

  KrausChannel(Index in_dim, Index out_dim, std::vector<Matrix> kraus,
               double tol = kTol);

  Index in_dim() const { return in_dim_; }
  Index out_dim() const { return out_dim_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  /// Raw action on any in_dim x in_dim operator.
  Matrix apply(const Matrix& m) const;

 private:
  Index in_dim_;
  Index out_dim_;
  std::vector<Matrix> kraus_;
};

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho);

/// `second` after `first`.
KrausChannel compose(const KrausChannel& first, const KrausChannel& second);

KrausChannel identity_channel(Index dim);

/// Every input goes to |phi><phi|.
KrausChannel constant_channel(Index in_dim, const PureStateVector& phi);

/// rho -> (1 - p) rho + p tr(rho) I/d.
KrausChannel depolarizing(Index dim, double p);

/// rho -> rho (x) sigma, Kraus operators sqrt(mu_k) (I (x) |v_k>) from the
/// spectral decomposition of sigma.
KrausChannel tensor_with_state(Index in_dim, const DensityMatrix& sigma);

/// Kraus operators cut from a Haar-random isometry C^in -> C^out (x) C^count.
/// Requires out_dim * kraus_count >= in_dim.
KrausChannel random_channel(Index in_dim, Index out_dim, Index kraus_count,
                            std::uint64_t seed);

/// A channel sending |a><a| to |phi><phi| and |b><b| to |phi'><phi'|.
///
/// Feasible exactly when |<phi|phi'>| >= |<a|b>| (up to 1e-10). Built as a
/// Stinespring isometry a -> phi (x) e_a, b -> phi' (x) e_b with
/// <e_a|e_b> = <a|b> / <phi|phi'>; inputs orthogonal to span{a, b} are sent
/// to phi. The action and trace preservation are re-verified before
/// returning; ChannelError on any failure.
KrausChannel pure_pair_contraction(const PureStateVector& a,
                                   const PureStateVector& b,
                                   const PureStateVector& phi,
                                   const PureStateVector& phi_prime);

struct EqualDistanceResult {
  KrausChannel channel;
  PureStateVector phi;        // image of rho
  PureStateVector phi_prime;  // image of rho'
};

/// Channel mapping rho and rho' to pure states whose trace distance equals
/// wcd(rho, rho').
///
/// The canonical pairs span mutually orthogonal blocks
/// S_i = span{chi_i, chi'_i}. A block-projective measurement followed by a
/// per-block pure_pair_contraction sends every chi_i to phi and every chi'_i
/// to phi', where phi = |0>, phi' = cos(a)|0> + sin(a)|1> and a is the
/// smallest canonical angle. Unpaired range vectors go to phi (rho side) or
/// phi' (rho' side); the complement of both ranges goes to phi. Output
/// dimension is 2.
EqualDistanceResult equal_distance_pure_outputs(const DensityMatrix& rho,
                                                const DensityMatrix& rho_prime,
                                                double rank_tol = tol::kRank);

}  // namespace purify
