#pragma once

// Dense complex kernels for small matrices (dimension up to a few dozen).
//
// Everything here is a pure function over Eigen values. Conventions:
//   * eigenvalues and singular values are returned in DESCENDING order,
//   * Kronecker products use the row-major "left factor is the slow index"
//     convention, so |i>|j> lives at index i * dim_b + j.

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace purify {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
inline constexpr double kHermiticity = 1e-8;
inline constexpr double kPsd = 1e-8;
inline constexpr double kRank = 1e-8;
inline constexpr double kReconstruction = 1e-9;
}  // namespace tol

class LinalgError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct HermitianEigen {
  RealVector values;  // descending
  Matrix vectors;     // orthonormal columns, column k pairs with values[k]
};

struct Svd {
  RealVector singular;  // descending, >= 0
  Matrix u;             // rows x rows
  Matrix v;             // cols x cols
};

/// Largest entrywise deviation from hermiticity, max |m - m^dag|.
double hermiticity_defect(const Matrix& m);

bool all_finite(const Matrix& m);

/// Eigendecomposition of a Hermitian matrix. Only the Hermitian part is
/// decomposed; throws LinalgError if the input is not square or deviates
/// from hermiticity by more than `herm_tol`.
HermitianEigen hermitian_eig(const Matrix& m,
                             double herm_tol = tol::kHermiticity);

/// Full SVD, m = U diag(s) V^dag.
Svd svd(const Matrix& m);

/// Principal square root of a PSD matrix. Eigenvalues in [-tol, 0) are
/// clamped to zero; anything below -tol is rejected.
Matrix psd_sqrt(const Matrix& m, double psd_tol = tol::kPsd);

/// tr|m| (sum of singular values). Note: no factor 1/2.
double trace_norm(const Matrix& m);

Matrix kron(const Matrix& a, const Matrix& b);

enum class Keep { A, B };

/// Partial trace of an operator on A (x) B, keeping the named factor.
Matrix partial_trace(const Matrix& m, Index dim_a, Index dim_b, Keep keep);

/// Orthonormal basis (as columns) of the span of eigenvectors whose
/// eigenvalue exceeds `rank_tol`. Columns are ordered by descending
/// eigenvalue.
Matrix range_basis(const Matrix& m, double rank_tol = tol::kRank);

/// Orthonormal basis of the orthogonal complement of span(columns), where
/// `columns` is assumed to have orthonormal columns already.
Matrix orthogonal_complement(const Matrix& columns, Index dim);

Matrix projector(const Vector& v);

Matrix dagger(const Matrix& m);

}  // namespace purify
