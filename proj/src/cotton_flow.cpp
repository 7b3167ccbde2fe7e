#include "akcotton/cotton_flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "akcotton/cotton.hpp"
#include "akcotton/errors.hpp"

namespace akc {

namespace {

Mat3 checked(const Mat3& g, const char* where) {
  const Mat3 s = symmetrized(g);
  Mat3 lower;
  if (!cholesky(s, lower)) {
    std::ostringstream msg;
    msg << "metric lost positive definiteness at " << where;
    throw DegenerateMetric(msg.str());
  }
  return s;
}

}  // namespace

Mat3 cotton_velocity(const MetricLieAlgebra3& brackets, const Mat3& metric) {
  return cotton_york(brackets.with_metric(metric)).matrix();
}

FlowState initial_state(const MetricLieAlgebra3& brackets, const Mat3& metric) {
  FlowState s;
  s.metric = checked(metric, "initial state");
  s.cotton_norm = frobenius(cotton_velocity(brackets, s.metric));
  return s;
}

FlowState flow_step(const MetricLieAlgebra3& brackets, const FlowState& state, double dt,
                    const FlowOptions& opts) {
  if (!(dt > 0.0)) throw std::invalid_argument("flow_step: dt must be positive");
  const Mat3 g = checked(state.metric, "stage 1");
  const Mat3 k1 = cotton_velocity(brackets, g);
  const Mat3 g2 = checked(g + (0.5 * dt) * k1, "stage 2");
  const Mat3 k2 = cotton_velocity(brackets, g2);
  const Mat3 g3 = checked(g + (0.5 * dt) * k2, "stage 3");
  const Mat3 k3 = cotton_velocity(brackets, g3);
  const Mat3 g4 = checked(g + dt * k3, "stage 4");
  const Mat3 k4 = cotton_velocity(brackets, g4);

  Mat3 next = checked(g + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4), "step end");
  if (opts.normalize_volume) next = (1.0 / std::cbrt(det(next))) * next;

  FlowState out;
  out.metric = next;
  out.time = state.time + dt;
  out.cotton_norm = frobenius(cotton_velocity(brackets, next));
  return out;
}

FlowRun flow_run(const MetricLieAlgebra3& brackets, const Mat3& g0, double dt, int steps,
                 double fixed_point_tol, int stride, const FlowOptions& opts) {
  if (steps < 1) throw std::invalid_argument("flow_run: steps must be >= 1");
  if (stride < 1) throw std::invalid_argument("flow_run: stride must be >= 1");
  FlowRun run;
  FlowState state = initial_state(brackets, g0);
  const Mat3 start = state.metric;
  run.trajectory.push_back(state);
  for (int n = 1; n <= steps; ++n) {
    try {
      state = flow_step(brackets, state, dt, opts);
    } catch (const DegenerateMetric&) {
      run.aborted = true;
      break;
    }
    run.max_drift = std::max(run.max_drift, frobenius(state.metric - start));
    if (n % stride == 0 || n == steps) run.trajectory.push_back(state);
  }
  if (run.trajectory.back().time != state.time) run.trajectory.push_back(state);
  run.fixed_point = !run.aborted && state.cotton_norm <= fixed_point_tol;
  return run;
}

void write_trajectory_csv(std::ostream& os, const std::vector<FlowState>& trajectory) {
  os << "time,g11,g12,g13,g22,g23,g33,cotton_norm\n";
  char buf[64];
  auto put = [&](double x, char sep) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    os << buf << sep;
  };
  for (const FlowState& s : trajectory) {
    const Mat3& g = s.metric;
    put(s.time, ',');
    put(g[0][0], ',');
    put(g[0][1], ',');
    put(g[0][2], ',');
    put(g[1][1], ',');
    put(g[1][2], ',');
    put(g[2][2], ',');
    put(s.cotton_norm, '\n');
  }
}

}  // namespace akc
