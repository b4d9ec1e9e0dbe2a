#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "purify/channels.hpp"
#include "purify/metrics.hpp"
#include "purify/states.hpp"

namespace purify {

/// Pure state on system (x) aux whose aux-marginal is the input state.
struct Purification {
  PureStateVector state;
  Index system_dim;
  Index aux_dim;
};

/// |psi> = sum_k sqrt(p_k) |chi_k>|k> over the eigenvalues p_k > rank_tol.
Purification purify_state(const DensityMatrix& rho,
                          double rank_tol = tol::kRank);

/// Largest |<psi|psi'>| over all purifications of rho and sigma, evaluated
/// as the trace norm of the rank-compressed overlap A^dag B, where
/// A = Q_rho sqrt(P_rho) and B = Q_sigma sqrt(P_sigma) come from the two
/// spectral decompositions.
double max_purification_overlap(const DensityMatrix& rho,
                                const DensityMatrix& sigma,
                                double rank_tol = tol::kRank);

/// Bounds on the optimal deviation from perfect faithfulness of a
/// pure-output two-state purifier. `eta_used` is the smaller prior.
struct DeltaBounds {
  double lower;          // max(0, eta (D - wcd))
  double upper_const;    // eta D
  double upper_uhlmann;  // eta sin(beta - alpha)
  double eta_used;
};

DeltaBounds delta_bounds(const DensityMatrix& rho,
                         const DensityMatrix& rho_prime, double eta,
                         double eta_prime);

/// Witness that a set is essentially pure:
///   rho_i (x) omega_aux = U (|phi_i><phi_i| (x) sigma_B) U^dag.
struct EssentiallyPureCertificate {
  Matrix unitary;
  DensityMatrix omega_aux;
  DensityMatrix sigma_b;
  std::vector<PureStateVector> phis;
  Index dim_a;
  Index dim_b;
};

/// Largest entrywise residual of the certificate identity over `states`.
/// Returns +inf when the shapes do not fit.
double certificate_residual(const std::vector<DensityMatrix>& states,
                            const EssentiallyPureCertificate& cert);

bool verify_certificate(const std::vector<DensityMatrix>& states,
                        const EssentiallyPureCertificate& cert,
                        double tol = 1e-8);

struct EssentiallyPureFamily {
  std::vector<DensityMatrix> states;
  EssentiallyPureCertificate certificate;
};

/// rho_i = U (|phi_i><phi_i| (x) sigma_B) U^dag with trivial omega_aux.
EssentiallyPureFamily essentially_pure_family(
    const std::vector<PureStateVector>& phis, const DensityMatrix& sigma_b,
    const Matrix& unitary);

/// Random essentially-pure pair in dim_a * dim_b dimensions: Haar U, mixed
/// sigma_B of full rank, random non-orthogonal non-parallel phi_1, phi_2.
EssentiallyPureFamily random_essentially_pure_family(Index dim_a, Index dim_b,
                                                     std::size_t count,
                                                     std::uint64_t seed);

enum class Verdict { Yes, No, Undetermined };

std::string to_string(Verdict v);

struct PairCheck {
  std::size_t i;
  std::size_t j;
  double trace_distance;
  double wcd;
  bool distance_equals_wcd;
  bool angles_degenerate;  // all canonical angles equal within tol
};

struct ComponentReport {
  std::vector<std::size_t> members;
  Verdict verdict;
  std::string reason;  // failed necessary condition or passing evidence
  bool spectra_equal;
  std::vector<PairCheck> pairs;
  std::optional<EssentiallyPureCertificate> certificate;
};

struct PurifiabilityVerdict {
  Verdict verdict;
  // Two-state diagnostics (the pair itself, or NaN when not applicable).
  double trace_distance;
  double wcd;
  std::vector<ComponentReport> components;
  std::optional<EssentiallyPureCertificate> certificate;
};

inline constexpr double kTwoStateTol = 1e-7;
inline constexpr double kSpectrumTol = 1e-7;
inline constexpr double kOrthogonalityTol = 1e-9;

/// Perfect purification of {rho, rho'} is possible iff their trace distance
/// equals their worst-case distinguishability.
PurifiabilityVerdict can_purify_perfectly(const DensityMatrix& rho,
                                          const DensityMatrix& rho_prime,
                                          double tol = kTwoStateTol);

/// Connected components of the graph with an edge wherever
/// tr(rho_i rho_j) > tol. Components are sorted by smallest member.
std::vector<std::vector<std::size_t>> orthogonal_union_decomposition(
    const Ensemble& ensemble, double tol = kOrthogonalityTol);

/// Decides sets of any size where possible:
///   * singletons are YES,
///   * two-state components use can_purify_perfectly,
///   * larger components run the necessary conditions (equal spectra,
///     pairwise D == wcd, completely degenerate canonical angles); any
///     failure is NO, otherwise UNDETERMINED unless `hint` verifies on the
///     whole component, which makes it YES.
PurifiabilityVerdict analyze_set(
    const Ensemble& ensemble, double tol = kTwoStateTol,
    const std::optional<EssentiallyPureCertificate>& hint = std::nullopt);

/// Two random mixed states of rank in [2, dim] with tr(a b) > 1e-6.
std::pair<DensityMatrix, DensityMatrix> random_nonorthogonal_mixed_pair(
    Index dim, std::mt19937_64& rng);

/// Number of YES verdicts among `trials` random pairs of non-orthogonal
/// mixed states (ranks in [2, dim]). In dimension 4, the first `injected`
/// pairs are replaced by essentially-pure pairs.
std::size_t min_dimension_demo(Index dim, std::size_t trials,
                               std::uint64_t seed, std::size_t injected = 0);

}  // namespace purify
