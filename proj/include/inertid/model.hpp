#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "inertid/consistency.hpp"
#include "inertid/spatial.hpp"

namespace inertid {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class JointType { revolute, prismatic, floating };

struct JointSpec {
  std::string name;
  JointType type = JointType::revolute;
  Vec3 axis = Vec3::UnitZ();          // in the child (joint) frame; unused for floating
  std::string parent_link;            // "world" for the floating root joint
  std::string child_link;
  SE3 placement;                      // parent link frame -> joint frame
};

struct ContactFrame {
  std::string name;
  SE3 placement;  // link frame -> contact frame
};

struct LinkSpec {
  std::string name;
  InertialParams prior_params;
  EllipsoidBound bounding_ellipsoid;
  std::vector<ContactFrame> contact_frames;
};

/// Kinematic tree of a floating-base robot. Immutable after load; link
/// declaration order fixes the block order of the stacked parameter vector.
struct RobotModel {
  std::vector<LinkSpec> links;
  std::vector<JointSpec> joints;  // declaration order; actuated joint i -> q(7+i), v(6+i)
  Vec3 gravity = Vec3(0.0, 0.0, -9.81);

  int n = 0;    // actuated joint count
  int n_b = 0;  // link count

  int nq() const { return n + 7; }  // base position (3) + quaternion (4) + joints
  int nv() const { return n + 6; }

  // Derived indexing, filled by finalize().
  std::vector<int> link_parent;             // parent link index, -1 for root
  std::vector<int> link_joint;              // joint index connecting link to parent
  std::vector<int> actuated_index;          // per joint: actuated slot, -1 for floating
  int root_link = -1;

  int link_index(const std::string& name) const;
  int joint_index(const std::string& name) const;

  struct ContactFrameRef {
    int link;
    int index_in_link;
    const ContactFrame* frame;
  };
  std::optional<ContactFrameRef> find_contact_frame(const std::string& name) const;
  std::vector<std::string> contact_frame_names() const;

  /// Validates invariants and builds the derived indexing. Throws
  /// ValidationError naming the violated invariant.
  void finalize(double consistency_eps = 1e-6);
};

/// Loads a model description file; all invariants are checked (including
/// full physical consistency of every prior).
RobotModel load_model(const std::string& path);

/// Parses a model from text; `origin` is used in error messages.
RobotModel parse_model(const std::string& text, const std::string& origin = "<string>");

/// Canonical serialization; parses back to an identical model.
std::string serialize_model(const RobotModel& model);
void save_model(const RobotModel& model, const std::string& path);

/// Stacked prior parameter vector (10 * n_b), in link declaration order.
Eigen::VectorXd stack_priors(const RobotModel& model);

/// Model with the stacked parameters replacing all link priors.
RobotModel with_parameters(const RobotModel& model, const Eigen::VectorXd& phi);

/// Default bounding ellipsoid when a link declares none: axis-aligned,
/// centered at the prior CoM, semi-axes 1.5x the CoM-to-origin distance with
/// a 5 cm floor.
EllipsoidBound default_ellipsoid(const InertialParams& prior);

/// FNV-1a hash of the canonical serialization; stable across runs.
std::uint64_t model_hash(const RobotModel& model);

std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t seed = 1469598103934665603ull);

}  // namespace inertid
