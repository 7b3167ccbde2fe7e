#pragma once

#include <iosfwd>
#include <vector>

#include "akcotton/frame_algebra.hpp"

namespace akc {

struct FlowState {
  Mat3 metric = identity3();
  double time = 0.0;
  double cotton_norm = 0.0;  // Frobenius norm of the current Cotton-York tensor
};

struct FlowOptions {
  /// Rescale to det g = 1 after every step.
  bool normalize_volume = false;
};

/// Right-hand side of dg/dt = C(g) for the fixed bracket of `brackets`.
Mat3 cotton_velocity(const MetricLieAlgebra3& brackets, const Mat3& metric);

/// State at time 0 with its Cotton norm filled in.
FlowState initial_state(const MetricLieAlgebra3& brackets, const Mat3& metric);

/// One classical RK4 step. Every stage is symmetrized and must stay positive
/// definite, else DegenerateMetric.
FlowState flow_step(const MetricLieAlgebra3& brackets, const FlowState& state, double dt,
                    const FlowOptions& opts = {});

struct FlowRun {
  std::vector<FlowState> trajectory;
  bool fixed_point = false;
  bool aborted = false;  // DegenerateMetric stopped the run early
  double max_drift = 0.0;  // max over samples of |g(t) - g(0)|_F
};

/// Iterates flow_step. The trajectory holds the initial state, every
/// `stride`-th state and the final state. A DegenerateMetric mid-run ends the
/// run with aborted = true and the partial trajectory.
FlowRun flow_run(const MetricLieAlgebra3& brackets, const Mat3& g0, double dt, int steps,
                 double fixed_point_tol, int stride = 1, const FlowOptions& opts = {});

/// Rows "time,g11,g12,g13,g22,g23,g33,cotton_norm" with a header line.
void write_trajectory_csv(std::ostream& os, const std::vector<FlowState>& trajectory);

}  // namespace akc
