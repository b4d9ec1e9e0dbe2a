#include "purify/channels.hpp"

#include <cmath>
#include <string>

namespace purify {

namespace {

constexpr double kFeasibilityTol = 1e-10;
constexpr double kActionTol = 1e-8;
constexpr double kParallelTol = 1e-12;

// Splits an isometry C^in -> C^out (x) C^env into its env-indexed Kraus
// operators, skipping operators that vanish identically.
std::vector<Matrix> kraus_from_isometry(const Matrix& v, Index out_dim,
                                        Index env_dim) {
  std::vector<Matrix> kraus;
  for (Index k = 0; k < env_dim; ++k) {
    Matrix op(out_dim, v.cols());
    for (Index o = 0; o < out_dim; ++o) op.row(o) = v.row(o * env_dim + k);
    if (op.cwiseAbs().maxCoeff() > 0.0) kraus.push_back(std::move(op));
  }
  return kraus;
}

Vector basis_vector(Index dim, Index k) {
  Vector e = Vector::Zero(dim);
  e(k) = 1.0;
  return e;
}

}  // namespace

CptpCheck is_cptp(const std::vector<Matrix>& kraus, double tol) {
  if (kraus.empty()) return {false, 1.0};
  const Index in = kraus.front().cols();
  const Index out = kraus.front().rows();
  Matrix sum = Matrix::Zero(in, in);
  for (const Matrix& k : kraus) {
    if (k.cols() != in || k.rows() != out) {
      throw ChannelError("is_cptp: Kraus operators have inconsistent shapes");
    }
    sum += k.adjoint() * k;
  }
  const double defect =
      (sum - Matrix::Identity(in, in)).cwiseAbs().maxCoeff();
  return {defect <= tol, defect};
}

KrausChannel::KrausChannel(Index in_dim, Index out_dim,
                           std::vector<Matrix> kraus, double tol)
    : in_dim_(in_dim), out_dim_(out_dim), kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw ChannelError("channel: empty Kraus list");
  for (const Matrix& k : kraus_) {
    if (k.rows() != out_dim_ || k.cols() != in_dim_) {
      throw ChannelError("channel: Kraus operator is " +
                         std::to_string(k.rows()) + "x" +
                         std::to_string(k.cols()) + ", expected " +
                         std::to_string(out_dim_) + "x" +
                         std::to_string(in_dim_));
    }
  }
  const CptpCheck check = is_cptp(kraus_, tol);
  if (!check.ok) {
    throw ChannelError("channel: not trace preserving, defect " +
                       std::to_string(check.defect));
  }
}

Matrix KrausChannel::apply(const Matrix& m) const {
  if (m.rows() != in_dim_ || m.cols() != in_dim_) {
    throw ChannelError("apply: input dimension " + std::to_string(m.rows()) +
                       " does not match channel input " +
                       std::to_string(in_dim_));
  }
  Matrix out = Matrix::Zero(out_dim_, out_dim_);
  for (const Matrix& k : kraus_) out += k * m * k.adjoint();
  return out;
}

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho) {
  return DensityMatrix(channel.apply(rho.matrix()));
}

KrausChannel compose(const KrausChannel& first, const KrausChannel& second) {
  if (first.out_dim() != second.in_dim()) {
    throw ChannelError("compose: dimension mismatch");
  }
  std::vector<Matrix> kraus;
  kraus.reserve(first.kraus().size() * second.kraus().size());
  for (const Matrix& b : second.kraus()) {
    for (const Matrix& a : first.kraus()) kraus.push_back(b * a);
  }
  return KrausChannel(first.in_dim(), second.out_dim(), std::move(kraus));
}

KrausChannel identity_channel(Index dim) {
  return KrausChannel(dim, dim, {Matrix::Identity(dim, dim)});
}

KrausChannel constant_channel(Index in_dim, const PureStateVector& phi) {
  std::vector<Matrix> kraus;
  for (Index j = 0; j < in_dim; ++j) {
    kraus.push_back(phi.amplitudes() * basis_vector(in_dim, j).adjoint());
  }
  return KrausChannel(in_dim, phi.dim(), std::move(kraus));
}

KrausChannel depolarizing(Index dim, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ChannelError("depolarizing: p must lie in [0, 1]");
  }
  std::vector<Matrix> kraus;
  if (p < 1.0) kraus.push_back(std::sqrt(1.0 - p) * Matrix::Identity(dim, dim));
  const double weight = std::sqrt(p / static_cast<double>(dim));
  if (weight > 0.0) {
    for (Index i = 0; i < dim; ++i) {
      for (Index j = 0; j < dim; ++j) {
        kraus.push_back(weight * basis_vector(dim, i) *
                        basis_vector(dim, j).adjoint());
      }
    }
  }
  return KrausChannel(dim, dim, std::move(kraus));
}

KrausChannel tensor_with_state(Index in_dim, const DensityMatrix& sigma) {
  const HermitianEigen eig = hermitian_eig(sigma.matrix());
  const Index aux = sigma.dim();
  const Matrix eye = Matrix::Identity(in_dim, in_dim);
  std::vector<Matrix> kraus;
  for (Index k = 0; k < aux; ++k) {
    const double mu = eig.values(k);
    if (mu <= 0.0) continue;
    kraus.push_back(std::sqrt(mu) * kron(eye, Matrix(eig.vectors.col(k))));
  }
  // Renormalize away the clamped negative roundoff so TP holds tightly.
  Matrix sum = Matrix::Zero(in_dim, in_dim);
  for (const Matrix& k : kraus) sum += k.adjoint() * k;
  const double scale = sum.trace().real() / static_cast<double>(in_dim);
  for (Matrix& k : kraus) k /= std::sqrt(scale);
  return KrausChannel(in_dim, in_dim * aux, std::move(kraus));
}

KrausChannel random_channel(Index in_dim, Index out_dim, Index kraus_count,
                            std::uint64_t seed) {
  if (in_dim < 1 || out_dim < 1 || kraus_count < 1) {
    throw ChannelError("random_channel: dimensions and count must be >= 1");
  }
  const Index big = out_dim * kraus_count;
  if (big < in_dim) {
    throw ChannelError(
        "random_channel: out_dim * kraus_count must be >= in_dim");
  }
  std::mt19937_64 rng(seed);
  const Matrix u = random_unitary(big, rng);
  const Matrix v = u.leftCols(in_dim);
  std::vector<Matrix> kraus;
  for (Index k = 0; k < kraus_count; ++k) {
    kraus.push_back(v.middleRows(k * out_dim, out_dim));
  }
  return KrausChannel(in_dim, out_dim, std::move(kraus));
}

KrausChannel pure_pair_contraction(const PureStateVector& a,
                                   const PureStateVector& b,
                                   const PureStateVector& phi,
                                   const PureStateVector& phi_prime) {
  if (a.dim() != b.dim() || phi.dim() != phi_prime.dim()) {
    throw ChannelError("pure_pair_contraction: dimension mismatch");
  }
  const Index in = a.dim();
  const Index out = phi.dim();
  const Complex c = a.amplitudes().dot(b.amplitudes());
  const Complex c_target = phi.amplitudes().dot(phi_prime.amplitudes());
  if (std::abs(c_target) < std::abs(c) - kFeasibilityTol) {
    throw ChannelError(
        "pure_pair_contraction: infeasible, target overlap " +
        std::to_string(std::abs(c_target)) + " below source overlap " +
        std::to_string(std::abs(c)));
  }

  // Environment labels: two for span{a, b}, one per complement direction.
  Complex gamma = std::abs(c_target) > 1e-15 ? c / c_target : Complex(0.0);
  if (std::abs(gamma) > 1.0) gamma /= std::abs(gamma);

  const Vector e1 = a.amplitudes();
  const Vector residual = b.amplitudes() - c * e1;
  const double s = residual.norm();
  Matrix span_basis(in, s > kParallelTol ? 2 : 1);
  span_basis.col(0) = e1;
  if (s > kParallelTol) span_basis.col(1) = residual / s;
  const Matrix complement = orthogonal_complement(span_basis, in);
  const Index env = 2 + complement.cols();

  Vector env_a = Vector::Zero(env);
  Vector env_b = Vector::Zero(env);
  env_a(0) = 1.0;
  env_b(0) = gamma;
  env_b(1) = std::sqrt(std::max(0.0, 1.0 - std::norm(gamma)));

  const Vector image_a = kron(phi.amplitudes(), env_a);
  const Vector image_b = kron(phi_prime.amplitudes(), env_b);

  Matrix iso = image_a * e1.adjoint();
  if (s > kParallelTol) {
    const Vector image_e2 = (image_b - c * image_a) / s;
    iso += image_e2 * span_basis.col(1).adjoint();
  }
  for (Index j = 0; j < complement.cols(); ++j) {
    iso += kron(phi.amplitudes(), basis_vector(env, 2 + j)) *
           complement.col(j).adjoint();
  }

  KrausChannel channel(in, out, kraus_from_isometry(iso, out, env));
  const double err_a =
      (channel.apply(a.projector()) - phi.projector()).cwiseAbs().maxCoeff();
  const double err_b = (channel.apply(b.projector()) - phi_prime.projector())
                           .cwiseAbs()
                           .maxCoeff();
  if (err_a > kActionTol || err_b > kActionTol) {
    throw ChannelError("pure_pair_contraction: action check failed (" +
                       std::to_string(err_a) + ", " + std::to_string(err_b) +
                       ")");
  }
  return channel;
}

EqualDistanceResult equal_distance_pure_outputs(const DensityMatrix& rho,
                                                const DensityMatrix& rho_prime,
                                                double rank_tol) {
  const CanonicalAngles ca = canonical_angles(rho, rho_prime, rank_tol);
  const Index dim = rho.dim();
  const double alpha = ca.angles.front();

  Vector phi_vec(2), phi_prime_vec(2);
  phi_vec << 1.0, 0.0;
  phi_prime_vec << std::cos(alpha), std::sin(alpha);
  const PureStateVector phi(phi_vec);
  const PureStateVector phi_prime(phi_prime_vec);

  std::vector<Matrix> kraus;
  std::vector<Vector> covered;

  for (std::size_t i = 0; i < ca.size(); ++i) {
    const Index col = static_cast<Index>(i);
    const Vector chi = ca.basis_a.col(col);
    const Vector chi_prime = ca.basis_b.col(col);
    const double cosine = std::cos(ca.angles[i]);
    const Vector off = chi_prime - chi * chi.dot(chi_prime);
    const double sine = off.norm();
    covered.push_back(chi);
    if (sine <= kParallelTol) {
      // Zero angle: alpha is zero too, so phi' == phi.
      kraus.push_back(phi_vec * chi.adjoint());
      continue;
    }
    Matrix block(dim, 2);
    block.col(0) = chi;
    block.col(1) = off / sine;
    covered.push_back(block.col(1));

    Vector local_a(2), local_b(2);
    local_a << 1.0, 0.0;
    local_b << cosine, std::sin(ca.angles[i]);
    const KrausChannel local = pure_pair_contraction(
        PureStateVector(local_a), PureStateVector::normalized(local_b), phi,
        phi_prime);
    for (const Matrix& k : local.kraus()) kraus.push_back(k * block.adjoint());
  }
  for (Index j = 0; j < ca.residual_a.cols(); ++j) {
    covered.push_back(ca.residual_a.col(j));
    kraus.push_back(phi_vec * ca.residual_a.col(j).adjoint());
  }
  for (Index j = 0; j < ca.residual_b.cols(); ++j) {
    covered.push_back(ca.residual_b.col(j));
    kraus.push_back(phi_prime_vec * ca.residual_b.col(j).adjoint());
  }

  Matrix span(dim, static_cast<Index>(covered.size()));
  for (std::size_t j = 0; j < covered.size(); ++j) {
    span.col(static_cast<Index>(j)) = covered[j];
  }
  const Matrix complement = orthogonal_complement(span, dim);
  for (Index j = 0; j < complement.cols(); ++j) {
    kraus.push_back(phi_vec * complement.col(j).adjoint());
  }

  return EqualDistanceResult{KrausChannel(dim, 2, std::move(kraus)), phi,
                             phi_prime};
}

}  // namespace purify
