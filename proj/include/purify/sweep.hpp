#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace purify {

/// One grid point of the two-state bound sweep over figure_example(theta).
struct SweepRow {
  double theta;
  double trace_distance;
  double wcd;
  double fidelity;
  double lower;
  double upper_const;
  double upper_uhlmann;
};

inline constexpr const char* kSweepHeader =
    "theta,trace_distance,wcd,fidelity,lower,upper_const,upper_uhlmann";

SweepRow sweep_row(double theta);

/// `steps` points from theta_min to theta_max inclusive. Requires
/// 0 <= theta_min < theta_max <= pi/2 and steps >= 2.
std::vector<SweepRow> sweep(double theta_min, double theta_max, int steps);

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace purify
