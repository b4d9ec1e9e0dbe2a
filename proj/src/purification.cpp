#include "purify/purification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace purify {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double overlap_trace(const DensityMatrix& a, const DensityMatrix& b) {
  // tr(AB) = sum_ij A_ij conj(B_ij) for Hermitian B.
  return (a.matrix().cwiseProduct(b.matrix().conjugate())).sum().real();
}

Index numerical_rank(const RealVector& descending, double rank_tol) {
  Index r = 0;
  while (r < descending.size() && descending(r) > rank_tol) ++r;
  return r;
}

DensityMatrix trivial_state() { return DensityMatrix(Matrix::Ones(1, 1)); }

// Tries to exhibit {rho, rho'} as U(|phi_i><phi_i| (x) sigma_B)U^dag using
// the canonical pairing chi'_k = P' chi_k / cos(a). Only returns a
// certificate that verifies at 1e-8.
std::optional<EssentiallyPureCertificate> pair_certificate(
    const DensityMatrix& rho, const DensityMatrix& rho_prime, double d,
    double w) {
  const Index dim = rho.dim();
  try {
    if (d <= kTwoStateTol) {
      // Identical states: A is one-dimensional.
      EssentiallyPureCertificate cert{
          Matrix::Identity(dim, dim),
          trivial_state(),
          rho,
          {PureStateVector::basis(1, 0), PureStateVector::basis(1, 0)},
          1,
          dim};
      if (verify_certificate({rho, rho_prime}, cert)) return cert;
      return std::nullopt;
    }
    const Matrix qa = range_basis(rho.matrix());
    const Matrix qb = range_basis(rho_prime.matrix());
    const Index r = qa.cols();
    if (qb.cols() != r || 2 * r > dim) return std::nullopt;
    const double c = std::sqrt(std::max(0.0, 1.0 - w * w));
    if (c < 1e-12 || w < 1e-12) return std::nullopt;

    Matrix v(dim, 2 * r);
    v.leftCols(r) = qa;
    v.rightCols(r) = ((qb * (qb.adjoint() * qa)) / c - c * qa) / w;
    if ((v.adjoint() * v - Matrix::Identity(2 * r, 2 * r))
            .cwiseAbs()
            .maxCoeff() > 1e-6) {
      return std::nullopt;
    }

    Matrix sigma = qa.adjoint() * rho.matrix() * qa;
    sigma /= sigma.trace().real();

    Vector tilted(2);
    tilted << c, w;
    std::vector<PureStateVector> phis{PureStateVector::basis(2, 0),
                                      PureStateVector::normalized(tilted)};

    if (dim == 2 * r) {
      EssentiallyPureCertificate cert{v, trivial_state(), DensityMatrix(sigma),
                                      std::move(phis), 2, r};
      if (verify_certificate({rho, rho_prime}, cert)) return cert;
      return std::nullopt;
    }

    // dim > 2r: append a pure qubit aux, B = C^dim with sigma padded.
    Matrix unitary = Matrix::Zero(2 * dim, 2 * dim);
    Vector aux0(2);
    aux0 << 1.0, 0.0;
    std::vector<Index> free_cols;
    Matrix used(2 * dim, 2 * r);
    for (Index a = 0; a < 2; ++a) {
      for (Index k = 0; k < dim; ++k) {
        const Index col = a * dim + k;
        if (k < r) {
          const Vector image = kron(v.col(a * r + k), aux0);
          unitary.col(col) = image;
          used.col(a * r + k) = image;
        } else {
          free_cols.push_back(col);
        }
      }
    }
    const Matrix rest = orthogonal_complement(used, 2 * dim);
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
      unitary.col(free_cols[j]) = rest.col(static_cast<Index>(j));
    }
    Matrix padded = Matrix::Zero(dim, dim);
    padded.topLeftCorner(r, r) = sigma;
    EssentiallyPureCertificate cert{unitary,
                                    DensityMatrix(projector(aux0)),
                                    DensityMatrix(padded),
                                    std::move(phis),
                                    2,
                                    dim};
    if (verify_certificate({rho, rho_prime}, cert)) return cert;
  } catch (const std::invalid_argument&) {
  }
  return std::nullopt;
}

std::vector<double> sorted_spectrum(const DensityMatrix& rho) {
  const HermitianEigen eig = hermitian_eig(rho.matrix());
  return {eig.values.data(), eig.values.data() + eig.values.size()};
}

EssentiallyPureCertificate restrict_certificate(
    const EssentiallyPureCertificate& cert,
    const std::vector<std::size_t>& members) {
  EssentiallyPureCertificate out = cert;
  out.phis.clear();
  for (std::size_t m : members) out.phis.push_back(cert.phis.at(m));
  return out;
}

}  // namespace

Purification purify_state(const DensityMatrix& rho, double rank_tol) {
  const HermitianEigen eig = hermitian_eig(rho.matrix());
  const Index dim = rho.dim();
  const Index rank = numerical_rank(eig.values, rank_tol);
  Vector psi = Vector::Zero(dim * rank);
  for (Index k = 0; k < rank; ++k) {
    const double weight = std::sqrt(eig.values(k));
    for (Index i = 0; i < dim; ++i) {
      psi(i * rank + k) = weight * eig.vectors(i, k);
    }
  }
  return Purification{PureStateVector::normalized(psi), dim, rank};
}

double max_purification_overlap(const DensityMatrix& rho,
                                const DensityMatrix& sigma, double rank_tol) {
  if (rho.dim() != sigma.dim()) {
    throw StateError("max_purification_overlap: dimension mismatch");
  }
  const auto factor = [rank_tol](const DensityMatrix& s) {
    const HermitianEigen eig = hermitian_eig(s.matrix());
    const Index r = numerical_rank(eig.values, rank_tol);
    Matrix f = eig.vectors.leftCols(r);
    for (Index k = 0; k < r; ++k) f.col(k) *= std::sqrt(eig.values(k));
    return f;
  };
  const Matrix overlap = factor(rho).adjoint() * factor(sigma);
  Eigen::JacobiSVD<Matrix> solver(overlap);
  return std::min(1.0, solver.singularValues().sum());
}

DeltaBounds delta_bounds(const DensityMatrix& rho,
                         const DensityMatrix& rho_prime, double eta,
                         double eta_prime) {
  if (!(eta > 0.0) || !(eta_prime > 0.0) ||
      std::abs(eta + eta_prime - 1.0) > Ensemble::kPriorTol) {
    throw StateError("delta_bounds: priors must be positive and sum to 1");
  }
  const double eta_min = std::min(eta, eta_prime);
  const double d = trace_distance(rho, rho_prime);
  const double w = wcd(rho, rho_prime);
  const AlphaBeta ab = alpha_beta(rho, rho_prime);
  return DeltaBounds{eta_min * std::max(0.0, d - w), eta_min * d,
                     eta_min * std::sin(std::max(0.0, ab.beta - ab.alpha)),
                     eta_min};
}

double certificate_residual(const std::vector<DensityMatrix>& states,
                            const EssentiallyPureCertificate& cert) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const Index total = cert.dim_a * cert.dim_b;
  if (states.size() != cert.phis.size() || cert.unitary.rows() != total ||
      cert.unitary.cols() != total || cert.sigma_b.dim() != cert.dim_b) {
    return kInf;
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].dim() * cert.omega_aux.dim() != total ||
        cert.phis[i].dim() != cert.dim_a) {
      return kInf;
    }
    const Matrix lhs = kron(states[i].matrix(), cert.omega_aux.matrix());
    const Matrix rhs = cert.unitary *
                       kron(cert.phis[i].projector(), cert.sigma_b.matrix()) *
                       cert.unitary.adjoint();
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  const Matrix gram = cert.unitary.adjoint() * cert.unitary;
  worst = std::max(
      worst, (gram - Matrix::Identity(total, total)).cwiseAbs().maxCoeff());
  return worst;
}

bool verify_certificate(const std::vector<DensityMatrix>& states,
                        const EssentiallyPureCertificate& cert, double tol) {
  return certificate_residual(states, cert) <= tol;
}

EssentiallyPureFamily essentially_pure_family(
    const std::vector<PureStateVector>& phis, const DensityMatrix& sigma_b,
    const Matrix& unitary) {
  if (phis.empty()) throw StateError("essentially_pure_family: no states");
  const Index dim_a = phis.front().dim();
  const Index dim_b = sigma_b.dim();
  const Index total = dim_a * dim_b;
  for (const auto& phi : phis) {
    if (phi.dim() != dim_a) {
      throw StateError("essentially_pure_family: phi dimensions differ");
    }
  }
  if (unitary.rows() != total || unitary.cols() != total) {
    throw StateError("essentially_pure_family: U must be " +
                     std::to_string(total) + "x" + std::to_string(total));
  }
  const double defect = (unitary.adjoint() * unitary -
                         Matrix::Identity(total, total))
                            .cwiseAbs()
                            .maxCoeff();
  if (defect > 1e-9) {
    throw StateError("essentially_pure_family: U is not unitary (defect " +
                     std::to_string(defect) + ")");
  }
  EssentiallyPureFamily family{
      {},
      EssentiallyPureCertificate{unitary, trivial_state(), sigma_b, phis,
                                 dim_a, dim_b}};
  for (const auto& phi : phis) {
    family.states.emplace_back(unitary *
                               kron(phi.projector(), sigma_b.matrix()) *
                               unitary.adjoint());
  }
  return family;
}

EssentiallyPureFamily random_essentially_pure_family(Index dim_a, Index dim_b,
                                                     std::size_t count,
                                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Matrix unitary = random_unitary(dim_a * dim_b, rng);
  const DensityMatrix sigma_b = random_mixed(dim_b, dim_b, rng);
  std::vector<PureStateVector> phis;
  while (phis.size() < count) {
    PureStateVector candidate = random_pure(dim_a, rng);
    const bool generic = std::all_of(
        phis.begin(), phis.end(), [&](const PureStateVector& other) {
          const double c =
              std::abs(other.amplitudes().dot(candidate.amplitudes()));
          return c > 1e-3 && c < 1.0 - 1e-3;
        });
    if (generic) phis.push_back(std::move(candidate));
  }
  return essentially_pure_family(phis, sigma_b, unitary);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes:
      return "YES";
    case Verdict::No:
      return "NO";
    case Verdict::Undetermined:
      return "UNDETERMINED";
  }
  return "UNDETERMINED";
}

PurifiabilityVerdict can_purify_perfectly(const DensityMatrix& rho,
                                          const DensityMatrix& rho_prime,
                                          double tol) {
  if (rho.dim() != rho_prime.dim()) {
    throw StateError("can_purify_perfectly: dimension mismatch");
  }
  const double d = trace_distance(rho, rho_prime);
  const double w = wcd(rho, rho_prime);
  const bool equal = std::abs(d - w) <= tol;

  ComponentReport report;
  report.members = {0, 1};
  report.verdict = equal ? Verdict::Yes : Verdict::No;
  report.reason = equal ? "trace distance equals worst-case distinguishability"
                        : "trace distance differs from worst-case "
                          "distinguishability";
  report.spectra_equal = false;
  const auto a = sorted_spectrum(rho);
  const auto b = sorted_spectrum(rho_prime);
  double gap = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    gap = std::max(gap, std::abs(a[k] - b[k]));
  }
  report.spectra_equal = gap <= kSpectrumTol;
  const CanonicalAngles ca = canonical_angles(rho, rho_prime);
  const auto [lo, hi] = std::minmax_element(ca.angles.begin(), ca.angles.end());
  report.pairs.push_back(PairCheck{0, 1, d, w, equal,
                                   ca.residual_a.cols() == 0 &&
                                       ca.residual_b.cols() == 0 &&
                                       *hi - *lo <= tol});
  if (equal && d < 1.0 - tol) report.certificate = pair_certificate(rho, rho_prime, d, w);

  PurifiabilityVerdict out{report.verdict, d, w, {}, report.certificate};
  out.components.push_back(std::move(report));
  return out;
}

std::vector<std::vector<std::size_t>> orthogonal_union_decomposition(
    const Ensemble& ensemble, double tol) {
  const std::size_t n = ensemble.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  const auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (overlap_trace(ensemble.state(i), ensemble.state(j)) > tol) {
        const std::size_t ri = find(i);
        const std::size_t rj = find(j);
        if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
      }
    }
  }
  std::vector<std::vector<std::size_t>> components;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (slot[root] == n) {
      slot[root] = components.size();
      components.emplace_back();
    }
    components[slot[root]].push_back(i);
  }
  return components;
}

PurifiabilityVerdict analyze_set(
    const Ensemble& ensemble, double tol,
    const std::optional<EssentiallyPureCertificate>& hint) {
  const bool hint_usable =
      hint.has_value() && hint->phis.size() == ensemble.size();
  const auto hint_for = [&](const std::vector<std::size_t>& members)
      -> std::optional<EssentiallyPureCertificate> {
    if (!hint_usable) return std::nullopt;
    std::vector<DensityMatrix> states;
    for (std::size_t m : members) states.push_back(ensemble.state(m));
    auto restricted = restrict_certificate(*hint, members);
    if (verify_certificate(states, restricted)) return restricted;
    return std::nullopt;
  };

  PurifiabilityVerdict out{Verdict::Yes, kNaN, kNaN, {}, std::nullopt};
  for (const auto& members : orthogonal_union_decomposition(ensemble)) {
    ComponentReport report;
    report.members = members;
    if (members.size() == 1) {
      report.verdict = Verdict::Yes;
      report.reason = "single state";
      report.spectra_equal = true;
    } else if (members.size() == 2) {
      PurifiabilityVerdict pair = can_purify_perfectly(
          ensemble.state(members[0]), ensemble.state(members[1]), tol);
      report = std::move(pair.components.front());
      report.members = members;
      for (auto& p : report.pairs) {
        p.i = members[0];
        p.j = members[1];
      }
    } else {
      const auto reference = sorted_spectrum(ensemble.state(members[0]));
      const Index ref_rank =
          numerical_rank(RealVector::Map(reference.data(),
                                         static_cast<Index>(reference.size())),
                         tol::kRank);
      report.spectra_equal = true;
      for (std::size_t m : members) {
        const auto spec = sorted_spectrum(ensemble.state(m));
        double gap = 0.0;
        for (std::size_t k = 0; k < spec.size(); ++k) {
          gap = std::max(gap, std::abs(spec[k] - reference[k]));
        }
        const Index rank = numerical_rank(
            RealVector::Map(spec.data(), static_cast<Index>(spec.size())),
            tol::kRank);
        if (gap > kSpectrumTol || rank != ref_rank) report.spectra_equal = false;
      }
      bool distances_ok = true;
      bool angles_ok = true;
      for (std::size_t x = 0; x < members.size(); ++x) {
        for (std::size_t y = x + 1; y < members.size(); ++y) {
          const auto& a = ensemble.state(members[x]);
          const auto& b = ensemble.state(members[y]);
          const double d = trace_distance(a, b);
          const double w = wcd(a, b);
          const CanonicalAngles ca = canonical_angles(a, b);
          const auto [lo, hi] =
              std::minmax_element(ca.angles.begin(), ca.angles.end());
          const bool degenerate = ca.residual_a.cols() == 0 &&
                                  ca.residual_b.cols() == 0 &&
                                  *hi - *lo <= tol;
          const bool equal = std::abs(d - w) <= tol;
          distances_ok = distances_ok && equal;
          angles_ok = angles_ok && degenerate;
          report.pairs.push_back(
              PairCheck{members[x], members[y], d, w, equal, degenerate});
        }
      }
      if (!report.spectra_equal) {
        report.verdict = Verdict::No;
        report.reason = "spectra differ";
      } else if (!distances_ok) {
        report.verdict = Verdict::No;
        report.reason =
            "a pair has trace distance different from worst-case "
            "distinguishability";
      } else if (!angles_ok) {
        report.verdict = Verdict::No;
        report.reason = "a pair has non-degenerate canonical angles";
      } else {
        report.verdict = Verdict::Undetermined;
        report.reason = "necessary conditions hold; no certificate";
      }
    }
    if (report.verdict != Verdict::No && !report.certificate) {
      if (auto cert = hint_for(members)) {
        report.certificate = std::move(cert);
        report.verdict = Verdict::Yes;
        report.reason = "certificate verified";
      }
    }

    if (report.verdict == Verdict::No) {
      out.verdict = Verdict::No;
    } else if (report.verdict == Verdict::Undetermined &&
               out.verdict == Verdict::Yes) {
      out.verdict = Verdict::Undetermined;
    }
    out.components.push_back(std::move(report));
  }

  if (ensemble.size() == 2) {
    out.trace_distance = trace_distance(ensemble.state(0), ensemble.state(1));
    out.wcd = wcd(ensemble.state(0), ensemble.state(1));
  }
  if (out.components.size() == 1) {
    out.certificate = out.components.front().certificate;
  } else if (out.verdict == Verdict::Yes) {
    std::vector<std::size_t> all(ensemble.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    out.certificate = hint_for(all);
  }
  return out;
}

std::pair<DensityMatrix, DensityMatrix> random_nonorthogonal_mixed_pair(
    Index dim, std::mt19937_64& rng) {
  if (dim < 2) throw StateError("random_nonorthogonal_mixed_pair: dim < 2");
  std::uniform_int_distribution<Index> rank_dist(2, dim);
  for (;;) {
    DensityMatrix a = random_mixed(dim, rank_dist(rng), rng);
    DensityMatrix b = random_mixed(dim, rank_dist(rng), rng);
    if (overlap_trace(a, b) > 1e-6) return {std::move(a), std::move(b)};
  }
}

std::size_t min_dimension_demo(Index dim, std::size_t trials,
                               std::uint64_t seed, std::size_t injected) {
  if (dim < 2 || dim > 4) {
    throw StateError("min_dimension_demo: dim must be 2, 3 or 4");
  }
  if (injected > 0 && dim != 4) {
    throw StateError("min_dimension_demo: injection needs dim 4");
  }
  std::mt19937_64 rng(seed);
  std::size_t yes = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    if (t < injected) {
      const auto family = random_essentially_pure_family(2, 2, 2, rng());
      if (can_purify_perfectly(family.states[0], family.states[1]).verdict ==
          Verdict::Yes) {
        ++yes;
      }
      continue;
    }
    const auto [a, b] = random_nonorthogonal_mixed_pair(dim, rng);
    if (can_purify_perfectly(a, b).verdict == Verdict::Yes) ++yes;
  }
  return yes;
}

}  // namespace purify
