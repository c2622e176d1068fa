#include "inertid/spatialdyn.hpp"

#include <cmath>
#include <stdexcept>

namespace inertid {

namespace {

SE3 joint_transform(const JointSpec& joint, double angle) {
  switch (joint.type) {
    case JointType::revolute:
      return joint.placement * SE3{axis_angle(joint.axis, angle), Vec3::Zero()};
    case JointType::prismatic:
      return joint.placement * SE3{Mat3::Identity(), joint.axis * angle};
    case JointType::floating:
      throw std::logic_error("joint_transform called on the floating joint");
  }
  return SE3::Identity();
}

Vec6 joint_subspace(const JointSpec& joint) {
  Vec6 s = Vec6::Zero();
  if (joint.type == JointType::revolute) s.tail<3>() = joint.axis;
  else s.head<3>() = joint.axis;
  return s;
}

struct LocalKinematics {
  std::vector<SE3> X_parent;  // pose of link i in its parent link frame (root: world)
  std::vector<Vec6> S;        // joint subspace in link i coordinates (root: unused)
};

LocalKinematics local_kinematics(const RobotModel& model, const Eigen::VectorXd& q) {
  LocalKinematics kin;
  kin.X_parent.resize(model.n_b);
  kin.S.resize(model.n_b, Vec6::Zero());
  for (int i = 0; i < model.n_b; ++i) {
    const JointSpec& joint = model.joints[model.link_joint[i]];
    if (i == model.root_link) {
      kin.X_parent[i] = base_pose(q) * joint.placement;
      continue;
    }
    const int ai = model.actuated_index[model.link_joint[i]];
    kin.X_parent[i] = joint_transform(joint, q(7 + ai));
    kin.S[i] = joint_subspace(joint);
  }
  return kin;
}

}  // namespace

void validate_state(const RobotModel& model, const State& s) {
  if (s.q.size() != model.nq() || s.v.size() != model.nv() || s.a.size() != model.nv())
    throw std::invalid_argument("state dimensions do not match the model (expected q:" +
                                std::to_string(model.nq()) + " v:" + std::to_string(model.nv()) +
                                ")");
  const double qn = s.q.segment<4>(3).norm();
  if (std::abs(qn - 1.0) > 1e-9)
    throw std::invalid_argument("base quaternion is not unit norm");
}

SE3 base_pose(const Eigen::VectorXd& q) {
  const Quat quat(q(6), q(3), q(4), q(5));  // stored (x,y,z,w)
  return SE3{quat.toRotationMatrix(), q.head<3>()};
}

void set_base_pose(Eigen::VectorXd& q, const SE3& pose) {
  q.head<3>() = pose.p;
  const Quat quat(pose.R);
  q(3) = quat.x();
  q(4) = quat.y();
  q(5) = quat.z();
  q(6) = quat.w();
}

std::vector<SE3> forward_kinematics(const RobotModel& model, const Eigen::VectorXd& q) {
  if (q.size() != model.nq())
    throw std::invalid_argument("forward_kinematics: bad configuration dimension");
  const LocalKinematics kin = local_kinematics(model, q);
  std::vector<SE3> X(model.n_b);
  for (int i = 0; i < model.n_b; ++i) {
    if (i == model.root_link) X[i] = kin.X_parent[i];
    else X[i] = X[model.link_parent[i]] * kin.X_parent[i];
  }
  return X;
}

SE3 contact_frame_pose(const RobotModel& model, const std::vector<SE3>& link_poses,
                       const std::string& frame_name) {
  const auto ref = model.find_contact_frame(frame_name);
  if (!ref) throw std::invalid_argument("unknown contact frame '" + frame_name + "'");
  return link_poses[ref->link] * ref->frame->placement;
}

Eigen::VectorXd inverse_dynamics(const RobotModel& model, const State& s) {
  return inverse_dynamics(model, s, stack_priors(model));
}

Eigen::VectorXd inverse_dynamics(const RobotModel& model, const State& s,
                                 const Eigen::VectorXd& params) {
  validate_state(model, s);
  if (params.size() != 10 * model.n_b)
    throw std::invalid_argument("inverse_dynamics: parameter vector must have 10*n_b entries");

  const LocalKinematics kin = local_kinematics(model, s.q);
  std::vector<Vec6> V(model.n_b), A(model.n_b), F(model.n_b);

  for (int i = 0; i < model.n_b; ++i) {
    if (i == model.root_link) {
      V[i] = s.v.head<6>();
      A[i] = s.a.head<6>();
      // Gravity enters as a uniform frame acceleration.
      A[i].head<3>() -= kin.X_parent[i].R.transpose() * model.gravity;
    } else {
      const SE3 X_inv = kin.X_parent[i].inverse();
      const int ai = model.actuated_index[model.link_joint[i]];
      const Vec6 vj = kin.S[i] * s.v(6 + ai);
      V[i] = transform_motion(X_inv, V[model.link_parent[i]]) + vj;
      A[i] = transform_motion(X_inv, A[model.link_parent[i]]) + kin.S[i] * s.a(6 + ai) +
             cross_motion(V[i], vj);
    }
    const SpatialInertia I = InertialParams(Vec10(params.segment<10>(10 * i))).spatial();
    F[i] = I.apply(A[i]) + cross_force(V[i], I.apply(V[i]));
  }

  Eigen::VectorXd out = Eigen::VectorXd::Zero(model.nv());
  for (int i = model.n_b - 1; i >= 0; --i) {
    if (i == model.root_link) {
      out.head<6>() = F[i];
    } else {
      out(6 + model.actuated_index[model.link_joint[i]]) = kin.S[i].dot(F[i]);
      F[model.link_parent[i]] += transform_force(kin.X_parent[i], F[i]);
    }
  }
  return out;
}

Regressor regressor(const RobotModel& model, const State& s) {
  validate_state(model, s);
  Regressor reg;
  reg.state_hash = state_hash(s);
  reg.Y.resize(model.nv(), 10 * model.n_b);
  Eigen::VectorXd unit = Eigen::VectorXd::Zero(10 * model.n_b);
  for (int col = 0; col < 10 * model.n_b; ++col) {
    unit(col) = 1.0;
    reg.Y.col(col) = inverse_dynamics(model, s, unit);
    unit(col) = 0.0;
  }
  return reg;
}

Eigen::MatrixXd body_jacobian(const RobotModel& model, const std::vector<SE3>& link_poses,
                              int link) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(6, model.nv());
  const SE3 X_lw = link_poses[link].inverse();
  // Base columns: the whole tree moving rigidly with the base.
  const SE3 X_lb = X_lw * link_poses[model.root_link];
  for (int k = 0; k < 6; ++k) {
    Vec6 e = Vec6::Zero();
    e(k) = 1.0;
    J.col(k) = transform_motion(X_lb, e);
  }
  // Joint columns along the path to the root.
  for (int i = link; i != model.root_link; i = model.link_parent[i]) {
    const JointSpec& joint = model.joints[model.link_joint[i]];
    const int ai = model.actuated_index[model.link_joint[i]];
    J.col(6 + ai) = transform_motion(X_lw * link_poses[i], joint_subspace(joint));
  }
  return J;
}

Eigen::MatrixXd contact_jacobian(const RobotModel& model, const Eigen::VectorXd& q,
                                 const ContactSet& contacts) {
  const std::vector<SE3> X = forward_kinematics(model, q);
  Eigen::MatrixXd Jc(3 * contacts.n_e(), model.nv());
  for (int c = 0; c < contacts.n_e(); ++c) {
    const auto ref = model.find_contact_frame(contacts.active[c]);
    if (!ref)
      throw std::invalid_argument("contact_jacobian: unknown contact frame '" +
                                  contacts.active[c] + "'");
    const Eigen::MatrixXd Jb = body_jacobian(model, X, ref->link);
    const Vec3 pc = ref->frame->placement.p;
    // World velocity of the point: R * (v + w x pc).
    Jc.middleRows<3>(3 * c) =
        X[ref->link].R * (Jb.topRows<3>() - skew(pc) * Jb.bottomRows<3>());
  }
  return Jc;
}

Eigen::VectorXd contact_point_acceleration(const RobotModel& model, const State& s,
                                           const ContactSet& contacts) {
  validate_state(model, s);
  const LocalKinematics kin = local_kinematics(model, s.q);
  std::vector<SE3> X(model.n_b);
  std::vector<Vec6> V(model.n_b), A(model.n_b);
  for (int i = 0; i < model.n_b; ++i) {
    if (i == model.root_link) {
      X[i] = kin.X_parent[i];
      V[i] = s.v.head<6>();
      A[i] = s.a.head<6>();
    } else {
      X[i] = X[model.link_parent[i]] * kin.X_parent[i];
      const SE3 X_inv = kin.X_parent[i].inverse();
      const int ai = model.actuated_index[model.link_joint[i]];
      const Vec6 vj = kin.S[i] * s.v(6 + ai);
      V[i] = transform_motion(X_inv, V[model.link_parent[i]]) + vj;
      A[i] = transform_motion(X_inv, A[model.link_parent[i]]) + kin.S[i] * s.a(6 + ai) +
             cross_motion(V[i], vj);
    }
  }
  Eigen::VectorXd out(3 * contacts.n_e());
  for (int c = 0; c < contacts.n_e(); ++c) {
    const auto ref = model.find_contact_frame(contacts.active[c]);
    if (!ref)
      throw std::invalid_argument("contact_point_acceleration: unknown contact frame '" +
                                  contacts.active[c] + "'");
    const int l = ref->link;
    const Vec3 pc = ref->frame->placement.p;
    const Vec3 v = V[l].head<3>(), w = V[l].tail<3>();
    const Vec3 al = A[l].head<3>(), aa = A[l].tail<3>();
    out.segment<3>(3 * c) = X[l].R * (al + aa.cross(pc) + w.cross(v + w.cross(pc)));
  }
  return out;
}

Eigen::VectorXd integrate(const RobotModel& model, const Eigen::VectorXd& q,
                          const Eigen::VectorXd& v, double dt) {
  if (q.size() != model.nq() || v.size() != model.nv())
    throw std::invalid_argument("integrate: dimension mismatch");
  Eigen::VectorXd out = q;
  const SE3 X = base_pose(q);
  out.head<3>() = X.p + X.R * (v.head<3>() * dt);
  const Mat3 Rn = X.R * exp_so3(v.segment<3>(3) * dt);
  Quat quat(Rn);
  quat.normalize();
  out(3) = quat.x();
  out(4) = quat.y();
  out(5) = quat.z();
  out(6) = quat.w();
  out.tail(model.n) = q.tail(model.n) + v.tail(model.n) * dt;
  return out;
}

std::uint64_t state_hash(const State& s) {
  std::uint64_t h = fnv1a(s.q.data(), sizeof(double) * s.q.size());
  h = fnv1a(s.v.data(), sizeof(double) * s.v.size(), h);
  h = fnv1a(s.a.data(), sizeof(double) * s.a.size(), h);
  return h;
}

}  // namespace inertid
