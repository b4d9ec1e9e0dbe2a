#include "purify/sweep.hpp"

#include <numbers>
#include <ostream>
#include <stdexcept>

#include "purify/io.hpp"
#include "purify/metrics.hpp"
#include "purify/purification.hpp"

namespace purify {

SweepRow sweep_row(double theta) {
  const Ensemble pair = figure_example(theta);
  const DensityMatrix& rho = pair.state(0);
  const DensityMatrix& rho_prime = pair.state(1);
  const DeltaBounds bounds =
      delta_bounds(rho, rho_prime, pair.prior(0), pair.prior(1));
  return SweepRow{theta,
                  trace_distance(rho, rho_prime),
                  wcd(rho, rho_prime),
                  fidelity(rho, rho_prime),
                  bounds.lower,
                  bounds.upper_const,
                  bounds.upper_uhlmann};
}

std::vector<SweepRow> sweep(double theta_min, double theta_max, int steps) {
  if (!(theta_min >= 0.0 && theta_min < theta_max &&
        theta_max <= std::numbers::pi / 2)) {
    throw std::invalid_argument(
        "sweep: need 0 <= theta_min < theta_max <= pi/2");
  }
  if (steps < 2) throw std::invalid_argument("sweep: steps must be >= 2");

  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) {
    // Pin the last point to theta_max exactly.
    const double theta =
        k == steps - 1 ? theta_max
                       : theta_min + (theta_max - theta_min) * k / (steps - 1);
    rows.push_back(sweep_row(theta));
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << '\n';
  for (const SweepRow& r : rows) {
    out << format_number(r.theta) << ',' << format_number(r.trace_distance)
        << ',' << format_number(r.wcd) << ',' << format_number(r.fidelity)
        << ',' << format_number(r.lower) << ','
        << format_number(r.upper_const) << ','
        << format_number(r.upper_uhlmann) << '\n';
  }
}

}  // namespace purify
