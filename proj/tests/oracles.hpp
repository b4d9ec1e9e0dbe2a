#pragma once

// Test-only reference computations. These deliberately avoid the library's
// algorithmic routes (SVD pairing, closed-form trace norms) and fall back to
// definitions plus derivative-free search.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "purify/linalg.hpp"
#include "purify/states.hpp"

namespace oracle {

using purify::Complex;
using purify::Index;
using purify::Matrix;
using purify::Vector;

/// Nelder-Mead minimization; returns the best value found.
inline double nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> start, double step,
                          int max_evals = 4000, double ftol = 1e-13) {
  const std::size_t n = start.size();
  std::vector<std::vector<double>> simplex(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step;
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) values[i] = f(simplex[i]);
  int evals = static_cast<int>(n + 1);

  std::vector<std::size_t> order(n + 1);
  while (evals < max_evals) {
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];
    if (values[worst] - values[best] < ftol) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / n;
    }
    const auto along = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t k = 0; k < n; ++k) {
        p[k] = centroid[k] + t * (simplex[worst][k] - centroid[k]);
      }
      return p;
    };
    auto reflected = along(-1.0);
    const double fr = f(reflected);
    ++evals;
    if (fr < values[best]) {
      auto expanded = along(-2.0);
      const double fe = f(expanded);
      ++evals;
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
    } else if (fr < values[second]) {
      simplex[worst] = reflected;
      values[worst] = fr;
    } else {
      auto contracted = along(fr < values[worst] ? -0.5 : 0.5);
      const double fc = f(contracted);
      ++evals;
      if (fc < std::min(fr, values[worst])) {
        simplex[worst] = contracted;
        values[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t k = 0; k < n; ++k) {
            simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
          }
          values[i] = f(simplex[i]);
          ++evals;
        }
      }
    }
  }
  return *std::min_element(values.begin(), values.end());
}

/// Unit vector in span(basis) from hyperspherical magnitudes and relative
/// phases: r columns take (r - 1) angles then (r - 1) phases.
inline Vector hyperspherical(const Matrix& basis, const double* params) {
  const Index r = basis.cols();
  Vector coeff(r);
  double remaining = 1.0;
  for (Index k = 0; k < r; ++k) {
    double mag = remaining;
    if (k < r - 1) {
      mag = remaining * std::cos(params[k]);
      remaining *= std::sin(params[k]);
    }
    const double phase = k == 0 ? 0.0 : params[r - 1 + k - 1];
    coeff(k) = std::polar(mag, phase);
  }
  return basis * coeff;
}

/// Minimum over unit |chi> in span(basis_a), |chi'> in span(basis_b) of the
/// pure-state trace distance sqrt(1 - |<chi|chi'>|^2), by grid search plus
/// Nelder-Mead refinement. Bases must have orthonormal columns.
inline double brute_force_wcd(const Matrix& basis_a, const Matrix& basis_b,
                              int grid = 8, int refine = 4) {
  const Index ra = basis_a.cols();
  const Index rb = basis_b.cols();
  const std::size_t na = static_cast<std::size_t>(2 * (ra - 1));
  const std::size_t nb = static_cast<std::size_t>(2 * (rb - 1));
  const std::size_t n = na + nb;
  const auto objective = [&](const std::vector<double>& p) {
    const Vector a = hyperspherical(basis_a, p.data());
    const Vector b = hyperspherical(basis_b, p.data() + na);
    const double c = std::min(1.0, std::abs(a.dot(b)));
    return std::sqrt(std::max(0.0, 1.0 - c * c));
  };
  if (n == 0) return objective({});

  // Full grid: angles in [0, pi/2], phases in [0, 2 pi).
  std::vector<std::pair<double, std::vector<double>>> starts;
  std::vector<int> idx(n, 0);
  const auto coordinate = [&](std::size_t k, int i) {
    const bool is_angle = (k < na) ? (k < na / 2) : (k - na < nb / 2);
    return is_angle ? (std::numbers::pi / 2) * (i + 0.5) / grid
                    : 2.0 * std::numbers::pi * i / grid;
  };
  for (;;) {
    std::vector<double> p(n);
    for (std::size_t k = 0; k < n; ++k) p[k] = coordinate(k, idx[k]);
    starts.emplace_back(objective(p), p);
    std::size_t k = 0;
    while (k < n && ++idx[k] == grid) idx[k++] = 0;
    if (k == n) break;
  }
  const int keep = std::min<int>(refine, static_cast<int>(starts.size()));
  std::partial_sort(starts.begin(), starts.begin() + keep, starts.end(),
                    [](const auto& x, const auto& y) { return x.first < y.first; });
  double best = starts.front().first;
  for (int s = 0; s < keep; ++s) {
    best = std::min(best, nelder_mead(objective, starts[static_cast<std::size_t>(s)].second,
                                      0.5 / grid * std::numbers::pi));
  }
  return best;
}

/// exp(iH) for the Hermitian matrix built from n^2 real parameters.
inline Matrix unitary_from_params(const double* p, Index n) {
  Matrix h = Matrix::Zero(n, n);
  std::size_t k = 0;
  for (Index i = 0; i < n; ++i) h(i, i) = p[k++];
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      h(i, j) = Complex(p[k], p[k + 1]);
      h(j, i) = std::conj(h(i, j));
      k += 2;
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  Vector phases(n);
  for (Index i = 0; i < n; ++i) phases(i) = std::polar(1.0, eig.eigenvalues()(i));
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

/// Purification sum_k sqrt(p_k)|v_k>|k> padded to a dim-sized aux space.
inline Vector standard_purification(const Matrix& rho) {
  const Index d = rho.rows();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(rho);
  Vector psi = Vector::Zero(d * d);
  for (Index k = 0; k < d; ++k) {
    const double p = std::max(0.0, eig.eigenvalues()(k));
    for (Index i = 0; i < d; ++i) psi(i * d + k) = std::sqrt(p) * eig.eigenvectors()(i, k);
  }
  return psi;
}

/// max over aux unitaries U of |<psi|(1 (x) U)|psi'>| by multi-start
/// Nelder-Mead over the Lie-algebra coordinates of U.
inline double uhlmann_search(const Matrix& rho, const Matrix& sigma,
                             std::uint64_t seed, int starts = 6) {
  const Index d = rho.rows();
  const Vector psi = standard_purification(rho);
  const Vector phi = standard_purification(sigma);
  const auto objective = [&](const std::vector<double>& p) {
    const Matrix u = unitary_from_params(p.data(), d);
    const Matrix lifted = purify::kron(Matrix::Identity(d, d), u);
    return -std::abs(psi.dot(lifted * phi));
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  double best = 0.0;
  for (int s = 0; s < starts; ++s) {
    std::vector<double> p(static_cast<std::size_t>(d * d));
    for (double& x : p) x = angle(rng);
    best = std::min(best, nelder_mead(objective, p, 0.7, 20000, 1e-15));
  }
  return -best;
}

/// (a (x) b)_{(i k),(j l)} = a_ij b_kl, element by element.
inline Matrix kron_by_index(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < b.rows(); ++k)
      for (Index j = 0; j < a.cols(); ++j)
        for (Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// tr_B by explicit <i k| m |j k> summation.
inline Matrix trace_out_b(const Matrix& m, Index da, Index db) {
  Matrix out = Matrix::Zero(da, da);
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < da; ++j)
      for (Index k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
  return out;
}

inline Matrix trace_out_a(const Matrix& m, Index da, Index db) {
  Matrix out = Matrix::Zero(db, db);
  for (Index k = 0; k < db; ++k)
    for (Index l = 0; l < db; ++l)
      for (Index i = 0; i < da; ++i) out(k, l) += m(i * db + k, i * db + l);
  return out;
}

inline Matrix random_hermitian(Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix g(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      const double re = n(rng);
      const double im = n(rng);
      g(i, j) = Complex(re, im);
    }
  return 0.5 * (g + g.adjoint());
}

inline Matrix random_complex(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix g(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) {
      const double re = n(rng);
      const double im = n(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

/// rank-r state with explicit range basis (first r columns of a Haar
/// unitary) and uniform-simplex weights.
struct StateWithRange {
  purify::DensityMatrix state;
  Matrix range;
};

inline StateWithRange state_with_range(Index d, Index r, std::mt19937_64& rng) {
  const Matrix u = purify::random_unitary(d, rng);
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(static_cast<std::size_t>(r));
  double total = 0.0;
  for (double& x : w) total += (x = e(rng) + 1e-3);
  Matrix rho = Matrix::Zero(d, d);
  for (Index k = 0; k < r; ++k) {
    rho += (w[static_cast<std::size_t>(k)] / total) * u.col(k) * u.col(k).adjoint();
  }
  return {purify::DensityMatrix(rho), u.leftCols(r)};
}

}  // namespace oracle
