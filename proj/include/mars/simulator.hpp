#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mars/assembly.hpp"
#include "mars/linear_model.hpp"
#include "mars/regulator.hpp"

namespace mars {

// Closed-loop hover-tracking rollout of the 8-state model under forward
// Euler. The controller sees `believed` (gain, allocation map, gravity
// feedforward); the plant applies the commanded rotor thrusts through the
// true (possibly faulted) wrench map. Sensor noise is Gaussian, seeded, and
// reproducible: identical config and seed give identical traces.
struct SimConfig {
  double dt = 1e-3;
  double duration = 6.0;
  int record_stride = 10;       // trace row every this many steps
  double height_step = 3.0;     // z reference applied at t = 0
  double yaw_step = 1.5;        // yaw reference (rad) applied at t = 0
  double noise_pos = 0.01;      // sigma on measured height
  double noise_att = 0.005;     // sigma on measured attitude angles
  double noise_rate = 0.01;     // sigma on measured rates
  unsigned long long seed = 1;
  RegulatorWeights weights{};
  double crash_norm = 1e6;      // state norm that ends the run as a crash
  // The hover-linearized model only describes small tilts; losing roll or
  // pitch containment past this angle ends the run as a crash.
  double crash_tilt = 1.5707963267948966;  // rad (pi/2)
};

struct SimResult {
  bool crashed = false;
  double crash_time = 0.0;         // valid only when crashed
  double rmse_height = 0.0;        // reference-tracking error, height
  double rmse_attitude = 0.0;      // reference-tracking error, angles
  double max_thrust_saturation = 0.0;  // worst commanded-vs-applied gap
  // Trace rows: t, p_z, phi, theta, psi, v_z, w_x, w_y, w_z.
  std::vector<Eigen::Matrix<double, 9, 1>> trace;
};

SimResult run_tracking(const Assembly& plant, const Assembly& believed,
                       const SimConfig& config);

}  // namespace mars
