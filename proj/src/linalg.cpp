#include "purify/linalg.hpp"

#include <cmath>

namespace purify {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw LinalgError(std::string(what) + ": matrix is " +
                      std::to_string(m.rows()) + "x" +
                      std::to_string(m.cols()) + ", expected square");
  }
}

void require_finite(const Matrix& m, const char* what) {
  if (!all_finite(m)) {
    throw LinalgError(std::string(what) + ": non-finite entry");
  }
}

}  // namespace

double hermiticity_defect(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool all_finite(const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      const Complex z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  }
  return true;
}

Matrix dagger(const Matrix& m) { return m.adjoint(); }

Matrix projector(const Vector& v) { return v * v.adjoint(); }

HermitianEigen hermitian_eig(const Matrix& m, double herm_tol) {
  require_square(m, "hermitian_eig");
  require_finite(m, "hermitian_eig");
  const double defect = hermiticity_defect(m);
  if (defect > herm_tol) {
    throw LinalgError("hermitian_eig: hermiticity defect " +
                      std::to_string(defect) + " exceeds tolerance");
  }
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw LinalgError("hermitian_eig: eigensolver did not converge");
  }
  // Eigen returns ascending order; flip to descending.
  const Index n = h.rows();
  HermitianEigen out{RealVector(n), Matrix(n, n)};
  for (Index k = 0; k < n; ++k) {
    out.values(k) = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

Svd svd(const Matrix& m) {
  require_finite(m, "svd");
  Eigen::JacobiSVD<Matrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return Svd{solver.singularValues(), solver.matrixU(), solver.matrixV()};
}

Matrix psd_sqrt(const Matrix& m, double psd_tol) {
  const HermitianEigen eig = hermitian_eig(m, psd_tol);
  const Index n = eig.values.size();
  RealVector roots(n);
  for (Index k = 0; k < n; ++k) {
    const double lambda = eig.values(k);
    if (lambda < -psd_tol) {
      throw LinalgError("psd_sqrt: eigenvalue " + std::to_string(lambda) +
                        " below -tolerance (not PSD)");
    }
    roots(k) = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
  }
  Matrix r = eig.vectors * roots.cast<Complex>().asDiagonal() *
             eig.vectors.adjoint();
  return 0.5 * (r + r.adjoint());
}

double trace_norm(const Matrix& m) {
  require_square(m, "trace_norm");
  require_finite(m, "trace_norm");
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> solver(m);
  return solver.singularValues().sum();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& m, Index dim_a, Index dim_b, Keep keep) {
  if (dim_a <= 0 || dim_b <= 0 || m.rows() != dim_a * dim_b ||
      m.cols() != dim_a * dim_b) {
    throw LinalgError("partial_trace: matrix is " + std::to_string(m.rows()) +
                      "x" + std::to_string(m.cols()) + ", dims are " +
                      std::to_string(dim_a) + "x" + std::to_string(dim_b));
  }
  if (keep == Keep::A) {
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (Index k = 0; k < dim_b; ++k) {
      for (Index i = 0; i < dim_a; ++i) {
        for (Index j = 0; j < dim_a; ++j) {
          out(i, j) += m(i * dim_b + k, j * dim_b + k);
        }
      }
    }
    return out;
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (Index k = 0; k < dim_a; ++k) {
    out += m.block(k * dim_b, k * dim_b, dim_b, dim_b);
  }
  return out;
}

Matrix range_basis(const Matrix& m, double rank_tol) {
  const HermitianEigen eig = hermitian_eig(m, tol::kHermiticity);
  Index rank = 0;
  while (rank < eig.values.size() && eig.values(rank) > rank_tol) ++rank;
  return eig.vectors.leftCols(rank);
}

Matrix orthogonal_complement(const Matrix& columns, Index dim) {
  if (columns.cols() == 0) return Matrix::Identity(dim, dim);
  const Matrix rest =
      Matrix::Identity(dim, dim) - columns * columns.adjoint();
  // Eigenvalues of a projector are 0 or 1; split at one half.
  return range_basis(rest, 0.5);
}

}  // namespace purify
