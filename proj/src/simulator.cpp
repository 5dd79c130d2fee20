#include "mars/simulator.hpp"

#include <cmath>
#include <random>

#include "mars/box_lsq.hpp"
#include "mars/errors.hpp"
#include "mars/wrench_map.hpp"

namespace mars {

SimResult run_tracking(const Assembly& plant, const Assembly& believed,
                       const SimConfig& config) {
  if (!(config.dt > 0.0)) throw InputError("dt must be positive");
  if (!(config.duration >= config.dt))
    throw InputError("duration must cover at least one step");
  if (config.record_stride < 1)
    throw InputError("record_stride must be >= 1");
  if (!(config.crash_norm > 0.0))
    throw InputError("crash_norm must be positive");
  if (!(config.crash_tilt > 0.0))
    throw InputError("crash_tilt must be positive");

  using StateVec = Eigen::Matrix<double, kStateDim, 1>;

  // The controller is designed against what it believes the vehicle to be;
  // the plant answers with what it actually is. Faults only reshape the
  // attainable wrench set, so the rigid-body dynamics are shared.
  const RigidBodyModel body = aggregate_rigid_body(plant);
  const LinearModel dynamics = linear_model(body);
  const Eigen::Vector4d hover = gravity_wrench(body);
  const Regulator regulator = lqr_gain(linear_model(aggregate_rigid_body(believed)),
                                       config.weights);
  const WrenchMap believed_map = wrench_map(believed);
  const WrenchMap true_map = wrench_map(plant);
  const BoxLsqSolver allocator;

  StateVec reference = StateVec::Zero();
  reference(0) = config.height_step;
  reference(3) = config.yaw_step;

  StateVec sigma;
  sigma << config.noise_pos, config.noise_att, config.noise_att,
      config.noise_att, config.noise_rate, config.noise_rate,
      config.noise_rate, config.noise_rate;

  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> unit_normal(0.0, 1.0);

  SimResult result;
  StateVec x = StateVec::Zero();
  const auto steps = static_cast<long>(std::llround(config.duration / config.dt));
  double sum_sq_height = 0.0;
  double sum_sq_attitude = 0.0;
  long measured = 0;

  for (long k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * config.dt;
    if (k % config.record_stride == 0) {
      Eigen::Matrix<double, 9, 1> row;
      row(0) = t;
      row.tail<kStateDim>() = x;
      result.trace.push_back(row);
    }

    const StateVec error = x - reference;
    sum_sq_height += error(0) * error(0);
    sum_sq_attitude += error.segment<3>(1).squaredNorm();
    ++measured;

    StateVec noise;
    for (int i = 0; i < kStateDim; ++i) noise(i) = sigma(i) * unit_normal(rng);
    const StateVec x_meas = x + noise;

    const Eigen::Vector4d wanted =
        hover - regulator.gain * (x_meas - reference);
    const BoxLsqResult allocation =
        allocator.solve(believed_map.columns, wanted, believed_map.thrust_max);
    result.max_thrust_saturation = std::max(
        result.max_thrust_saturation,
        (wanted - believed_map.apply(allocation.x)).lpNorm<Eigen::Infinity>());

    const Eigen::Vector4d applied = true_map.apply(allocation.x);
    x += config.dt * (dynamics.A * x + dynamics.B * (applied - hover));

    if (!x.allFinite() || x.norm() > config.crash_norm ||
        std::abs(x(1)) > config.crash_tilt ||
        std::abs(x(2)) > config.crash_tilt) {
      result.crashed = true;
      result.crash_time = t + config.dt;
      break;
    }
  }

  if (!result.crashed) {
    Eigen::Matrix<double, 9, 1> row;
    row(0) = static_cast<double>(steps) * config.dt;
    row.tail<kStateDim>() = x;
    result.trace.push_back(row);
  }

  result.rmse_height = std::sqrt(sum_sq_height / static_cast<double>(measured));
  result.rmse_attitude =
      std::sqrt(sum_sq_attitude / (3.0 * static_cast<double>(measured)));
  return result;
}

}  // namespace mars
