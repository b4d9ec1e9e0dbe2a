#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "purify/purification.hpp"

using namespace purify;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

PureStateVector ket(std::initializer_list<Complex> amps) {
  Vector v(static_cast<Index>(amps.size()));
  Index i = 0;
  for (Complex a : amps) v(i++) = a;
  return PureStateVector::normalized(v);
}

DensityMatrix diag_state(std::initializer_list<double> values) {
  RealVector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v(i++) = x;
  return DensityMatrix(Matrix(v.cast<Complex>().asDiagonal()));
}

}  // namespace

TEST_SUITE("purification") {

TEST_CASE("purify_state") {
  SUBCASE("pure input keeps a one-dimensional aux") {
    const PureStateVector psi = random_pure(3, std::uint64_t{301});
    const Purification p = purify_state(DensityMatrix::from_pure(psi));
    CHECK(p.aux_dim == 1);
    CHECK(std::abs(std::abs(p.state.amplitudes().dot(psi.amplitudes())) - 1.0) <= 1e-12);
  }
  SUBCASE("maximally mixed qubit becomes maximally entangled") {
    const Purification p = purify_state(DensityMatrix::maximally_mixed(2));
    CHECK(p.aux_dim == 2);
    const Matrix proj = p.state.projector();
    CHECK(max_abs(partial_trace(proj, 2, 2, Keep::A) - Matrix::Identity(2, 2) / 2.0) <= 1e-12);
    CHECK(max_abs(partial_trace(proj, 2, 2, Keep::B) - Matrix::Identity(2, 2) / 2.0) <= 1e-12);
  }
  SUBCASE("random states") {
    std::mt19937_64 rng(303);
    for (int trial = 0; trial < 50; ++trial) {
      const Index d = 2 + trial % 7;
      const Index r = 1 + trial % d;
      const auto rho = random_mixed(d, r, rng);
      const Purification p = purify_state(rho);
      CHECK(p.aux_dim == r);
      const Matrix marginal = partial_trace(p.state.projector(), d, p.aux_dim, Keep::A);
      CHECK(max_abs(marginal - rho.matrix()) <= 1e-10);
      CHECK(purity(DensityMatrix::from_pure(p.state)) >= 1.0 - 1e-10);
    }
  }
}

TEST_CASE("Uhlmann: purification overlap equals fidelity") {
  std::mt19937_64 rng(307);
  for (int trial = 0; trial < 40; ++trial) {
    const Index d = 2 + trial % 3;
    const auto a = random_mixed(d, 1 + trial % d, rng);
    const auto b = random_mixed(d, 1 + (trial / 2) % d, rng);
    CHECK(std::abs(max_purification_overlap(a, b) - fidelity(a, b)) <= 1e-8);
  }
  // Independent search over aux unitaries.
  for (int trial = 0; trial < 6; ++trial) {
    const Index d = 2 + trial % 2;
    const auto a = random_mixed(d, d, rng);
    const auto b = random_mixed(d, 1 + trial % d, rng);
    CHECK(std::abs(oracle::uhlmann_search(a.matrix(), b.matrix(), rng()) - fidelity(a, b)) <= 1e-4);
  }
}

TEST_CASE("delta_bounds") {
  const double pi = std::numbers::pi;
  const auto rho = random_mixed(4, 2, std::uint64_t{311});
  const DeltaBounds same = delta_bounds(rho, rho, 0.5, 0.5);
  CHECK(same.lower == 0.0);
  CHECK(same.upper_const <= 1e-12);
  CHECK(same.upper_uhlmann <= 1e-4);

  const Ensemble zero = figure_example(0.0);
  const DeltaBounds b0 = delta_bounds(zero.state(0), zero.state(1), 0.5, 0.5);
  CHECK(std::abs(b0.lower - b0.upper_const) <= 1e-9);  // wcd = 0
  CHECK(b0.upper_const < b0.upper_uhlmann);

  const Ensemble quarter = figure_example(pi / 4);
  const DeltaBounds bq = delta_bounds(quarter.state(0), quarter.state(1), 0.5, 0.5);
  CHECK(std::abs(bq.lower - 0.0050) <= 0.0005);
  CHECK(std::abs(bq.upper_uhlmann - 0.0072) <= 0.0005);
  CHECK(bq.eta_used == 0.5);

  const DeltaBounds skew = delta_bounds(quarter.state(0), quarter.state(1), 0.8, 0.2);
  CHECK(skew.eta_used == doctest::Approx(0.2));
  CHECK(skew.upper_const == doctest::Approx(0.2 / 0.5 * bq.upper_const));

  CHECK_THROWS_AS(delta_bounds(rho, rho, 0.5, 0.6), StateError);
  CHECK_THROWS_AS(delta_bounds(rho, rho, 0.0, 1.0), StateError);

  for (int k = 0; k <= 157; ++k) {
    const double theta = std::min(0.01 * k, pi / 2);
    const Ensemble e = figure_example(theta);
    const DeltaBounds b = delta_bounds(e.state(0), e.state(1), 0.5, 0.5);
    CHECK(b.lower <= b.upper_const + 1e-9);
    CHECK(b.lower <= b.upper_uhlmann + 1e-9);
  }
}

TEST_CASE("can_purify_perfectly") {
  std::mt19937_64 rng(313);
  const auto rho = random_mixed(4, 3, rng);
  CHECK(can_purify_perfectly(rho, rho).verdict == Verdict::Yes);

  const auto zero = DensityMatrix::from_pure(PureStateVector::basis(2, 0));
  const auto one = DensityMatrix::from_pure(PureStateVector::basis(2, 1));
  const PurifiabilityVerdict orth = can_purify_perfectly(zero, one);
  CHECK(orth.verdict == Verdict::Yes);
  CHECK(orth.trace_distance == doctest::Approx(1.0));
  CHECK(orth.wcd == doctest::Approx(1.0));

  const auto [p, q] = random_commuting_pair(3, rng());
  const PurifiabilityVerdict no = can_purify_perfectly(p, q);
  CHECK(no.verdict == Verdict::No);
  CHECK_FALSE(no.certificate.has_value());

  // Two different pure states are always perfectly purifiable.
  const auto a = DensityMatrix::from_pure(random_pure(3, rng));
  const auto b = DensityMatrix::from_pure(random_pure(3, rng));
  CHECK(can_purify_perfectly(a, b).verdict == Verdict::Yes);
}

TEST_CASE("essentially pure families") {
  SUBCASE("|0>, |+> with diag(2/3, 1/3)") {
    const auto family = essentially_pure_family({ket({1.0, 0.0}), ket({1.0, 1.0})},
                                                diag_state({2.0 / 3.0, 1.0 / 3.0}),
                                                Matrix::Identity(4, 4));
    const auto& a = family.states[0];
    const auto& b = family.states[1];
    const Matrix comm = a.matrix() * b.matrix() - b.matrix() * a.matrix();
    CHECK(max_abs(comm) > 1e-3);
    CHECK(range_basis(a.matrix()).cols() == 2);
    CHECK(std::abs(trace_distance(a, b) - wcd(a, b)) <= 1e-12);
    CHECK(std::abs(trace_distance(a, b) - std::sqrt(0.5)) <= 1e-12);
    CHECK(verify_certificate(family.states, family.certificate));
    const PurifiabilityVerdict v = can_purify_perfectly(a, b);
    CHECK(v.verdict == Verdict::Yes);
    REQUIRE(v.certificate.has_value());
    CHECK(certificate_residual({a, b}, *v.certificate) <= 1e-8);
  }
  SUBCASE("pure sigma_B gives pure states") {
    const auto family = essentially_pure_family(
        {random_pure(2, std::uint64_t{1}), random_pure(2, std::uint64_t{2})},
        DensityMatrix::from_pure(random_pure(3, std::uint64_t{3})),
        random_unitary(6, std::uint64_t{4}));
    for (const auto& s : family.states) CHECK(is_pure(s));
  }
  SUBCASE("shared spectrum and random certificates") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto family = random_essentially_pure_family(2, 3, 3, seed);
      const auto spectrum = hermitian_eig(family.certificate.sigma_b.matrix()).values;
      for (const auto& s : family.states) {
        const auto values = hermitian_eig(s.matrix()).values;
        CHECK((values.head(3) - spectrum).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK(values.tail(3).cwiseAbs().maxCoeff() <= 1e-10);
      }
      CHECK(certificate_residual(family.states, family.certificate) <= 1e-10);
      // Certificates reconstructed from the pair alone (dim 6 = 2 * rank 3).
      const auto v = can_purify_perfectly(family.states[0], family.states[1]);
      CHECK(v.verdict == Verdict::Yes);
      REQUIRE(v.certificate.has_value());
      CHECK(certificate_residual({family.states[0], family.states[1]}, *v.certificate) <= 1e-8);
    }
  }
  SUBCASE("embedded in a larger space needs an aux qubit") {
    // Essentially pure pair of rank 2 padded into C^5.
    const auto family = random_essentially_pure_family(2, 2, 2, std::uint64_t{17});
    Matrix a = Matrix::Zero(5, 5), b = Matrix::Zero(5, 5);
    a.topLeftCorner(4, 4) = family.states[0].matrix();
    b.topLeftCorner(4, 4) = family.states[1].matrix();
    const auto v = can_purify_perfectly(DensityMatrix(a), DensityMatrix(b));
    CHECK(v.verdict == Verdict::Yes);
    REQUIRE(v.certificate.has_value());
    CHECK(v.certificate->omega_aux.dim() == 2);
    CHECK(certificate_residual({DensityMatrix(a), DensityMatrix(b)}, *v.certificate) <= 1e-8);
  }
  SUBCASE("non-unitary U is rejected") {
    CHECK_THROWS_AS(essentially_pure_family({ket({1.0, 0.0})}, diag_state({0.5, 0.5}),
                                            2.0 * Matrix::Identity(4, 4)),
                    StateError);
  }
}

TEST_CASE("orthogonal_union_decomposition") {
  std::mt19937_64 rng(317);
  const Matrix u = random_unitary(4, rng);
  std::vector<DensityMatrix> orth;
  for (Index k = 0; k < 3; ++k) orth.push_back(DensityMatrix(Matrix(u.col(k) * u.col(k).adjoint())));
  const auto singles = orthogonal_union_decomposition(Ensemble::uniform(orth));
  CHECK(singles.size() == 3);

  std::vector<DensityMatrix> overlapping{random_mixed(3, 2, rng), random_mixed(3, 2, rng),
                                         random_mixed(3, 3, rng)};
  CHECK(orthogonal_union_decomposition(Ensemble::uniform(overlapping)).size() == 1);

  Matrix block_a = Matrix::Zero(4, 4), block_b = Matrix::Zero(4, 4);
  block_a(2, 2) = 0.6;
  block_a(3, 3) = 0.4;
  block_a(2, 3) = block_a(3, 2) = 0.2;
  block_b(2, 2) = 1.0;
  std::vector<DensityMatrix> mixed{diag_state({1, 0, 0, 0}), diag_state({0, 1, 0, 0}),
                                   DensityMatrix(block_a), DensityMatrix(block_b)};
  const auto parts = orthogonal_union_decomposition(Ensemble::uniform(mixed));
  REQUIRE(parts.size() == 3);
  CHECK(parts[0] == std::vector<std::size_t>{0});
  CHECK(parts[1] == std::vector<std::size_t>{1});
  CHECK(parts[2] == std::vector<std::size_t>{2, 3});
}

TEST_CASE("analyze_set") {
  std::mt19937_64 rng(319);
  SUBCASE("mutually orthogonal pure states") {
    const Matrix u = random_unitary(5, rng);
    std::vector<DensityMatrix> states;
    for (Index k = 0; k < 4; ++k) states.push_back(DensityMatrix(Matrix(u.col(k) * u.col(k).adjoint())));
    const auto v = analyze_set(Ensemble::uniform(states));
    CHECK(v.verdict == Verdict::Yes);
    CHECK(v.components.size() == 4);
  }
  SUBCASE("a commuting non-orthogonal pair makes it NO") {
    const auto [p, q] = random_commuting_pair(3, rng());
    Matrix pe = Matrix::Zero(5, 5), qe = Matrix::Zero(5, 5), far = Matrix::Zero(5, 5);
    pe.topLeftCorner(3, 3) = p.matrix();
    qe.topLeftCorner(3, 3) = q.matrix();
    far(4, 4) = 1.0;
    const auto v = analyze_set(Ensemble::uniform({DensityMatrix(pe), DensityMatrix(qe), DensityMatrix(far)}));
    CHECK(v.verdict == Verdict::No);
    CHECK(v.components.size() == 2);
    CHECK_FALSE(v.components[0].reason.empty());
  }
  SUBCASE("three-state essentially pure family") {
    const auto family = random_essentially_pure_family(2, 2, 3, rng());
    const Ensemble e = Ensemble::uniform(family.states);
    const auto v = analyze_set(e);
    CHECK(v.verdict == Verdict::Undetermined);
    REQUIRE(v.components.size() == 1);
    CHECK(v.components[0].spectra_equal);
    for (const auto& p : v.components[0].pairs) {
      CHECK(p.distance_equals_wcd);
      CHECK(p.angles_degenerate);
    }
    const auto certified = analyze_set(e, kTwoStateTol, family.certificate);
    CHECK(certified.verdict == Verdict::Yes);
    REQUIRE(certified.certificate.has_value());
    CHECK(certificate_residual(family.states, *certified.certificate) <= 1e-8);
  }
  SUBCASE("three states with unequal spectra") {
    const auto v = analyze_set(Ensemble::uniform({random_mixed(4, 2, rng), random_mixed(4, 2, rng),
                                                  random_mixed(4, 2, rng)}));
    CHECK(v.verdict == Verdict::No);
    CHECK(v.components[0].reason == "spectra differ");
  }
  SUBCASE("two-state essentially pure family carries a certificate") {
    const auto family = random_essentially_pure_family(2, 2, 2, rng());
    const auto v = analyze_set(Ensemble::uniform(family.states));
    CHECK(v.verdict == Verdict::Yes);
    REQUIRE(v.certificate.has_value());
    CHECK(verify_certificate(family.states, *v.certificate));
  }
}

TEST_CASE("min_dimension_demo") {
  CHECK(min_dimension_demo(2, 100, 1) == 0);
  CHECK(min_dimension_demo(3, 100, 2) == 0);
  CHECK(min_dimension_demo(4, 60, 3, 25) == 25);
  CHECK_THROWS_AS(min_dimension_demo(5, 10, 1), StateError);
  CHECK_THROWS_AS(min_dimension_demo(3, 10, 1, 2), StateError);
}

}
