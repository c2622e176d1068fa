#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "inertid/model.hpp"
#include "inertid/spatial.hpp"

namespace inertid {

/// Generalized state. Layout:
///   q = [base position (3, world), base quaternion (x,y,z,w), joint angles]
///   v = [base twist (linear, angular) in the base frame, joint velocities]
///   a = dv/dt, component-wise.
struct State {
  Eigen::VectorXd q;
  Eigen::VectorXd v;
  Eigen::VectorXd a;
};

/// Checks dimensions and the unit-quaternion invariant (1e-9).
void validate_state(const RobotModel& model, const State& s);

SE3 base_pose(const Eigen::VectorXd& q);
void set_base_pose(Eigen::VectorXd& q, const SE3& pose);

/// World pose of every link frame, in link order.
std::vector<SE3> forward_kinematics(const RobotModel& model, const Eigen::VectorXd& q);

/// World pose of one contact frame.
SE3 contact_frame_pose(const RobotModel& model, const std::vector<SE3>& link_poses,
                       const std::string& frame_name);

/// Generalized force M(q) a + n(q, v): rows 0..5 are the base wrench in base
/// coordinates, rows 6.. the actuated joint forces. `params` optionally
/// overrides the model's link parameters (stacked, 10 per link).
Eigen::VectorXd inverse_dynamics(const RobotModel& model, const State& s);
Eigen::VectorXd inverse_dynamics(const RobotModel& model, const State& s,
                                 const Eigen::VectorXd& params);

struct Regressor {
  Eigen::MatrixXd Y;         // (n+6) x 10*n_b
  std::uint64_t state_hash;  // provenance of the (q, v, a) it was built from
};

/// Regressor Y with Y * phi == inverse_dynamics(model-with-phi, state) for
/// every phi. Built column-wise from unit-parameter inverse dynamics sweeps.
Regressor regressor(const RobotModel& model, const State& s);

struct ContactSet {
  std::vector<std::string> active;
  int n_e() const { return static_cast<int>(active.size()); }
};

/// Stacked 3-row translational Jacobians of the active contact frames,
/// world-aligned, in declaration order of `contacts.active`: rows map v to
/// the world velocity of each contact point.
Eigen::MatrixXd contact_jacobian(const RobotModel& model, const Eigen::VectorXd& q,
                                 const ContactSet& contacts);

/// World-frame acceleration of each active contact point for the given
/// state; with a = 0 this is the velocity-product bias Jdot * v.
Eigen::VectorXd contact_point_acceleration(const RobotModel& model, const State& s,
                                           const ContactSet& contacts);

/// Body Jacobian of one link: maps v to the link's twist in its own frame.
Eigen::MatrixXd body_jacobian(const RobotModel& model, const std::vector<SE3>& link_poses,
                              int link);

/// Integrates q by v*dt (base on SE3 tangent, joints additively) and
/// renormalizes the quaternion.
Eigen::VectorXd integrate(const RobotModel& model, const Eigen::VectorXd& q,
                          const Eigen::VectorXd& v, double dt);

std::uint64_t state_hash(const State& s);

}  // namespace inertid
