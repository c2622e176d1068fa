#include "inertid/model.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace inertid {

namespace {

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

struct Tokenizer {
  std::string origin;
  int line_no = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(origin + ":" + std::to_string(line_no) + ": " + msg);
  }

  std::vector<std::string> split(const std::string& line) const {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) {
      if (tok[0] == '#') break;  // trailing comment
      out.push_back(tok);
    }
    return out;
  }

  double number(const std::string& tok, const std::string& field) const {
    std::size_t pos = 0;
    double x = 0.0;
    try {
      x = std::stod(tok, &pos);
    } catch (const std::exception&) {
      fail("field '" + field + "': expected a number, got '" + tok + "'");
    }
    if (pos != tok.size()) fail("field '" + field + "': trailing characters in '" + tok + "'");
    return x;
  }

  Vec3 vec3(const std::vector<std::string>& toks, std::size_t at, const std::string& field) const {
    if (toks.size() < at + 3) fail("field '" + field + "': expected 3 numbers");
    return Vec3(number(toks[at], field), number(toks[at + 1], field), number(toks[at + 2], field));
  }
};

}  // namespace

int RobotModel::link_index(const std::string& name) const {
  for (std::size_t i = 0; i < links.size(); ++i)
    if (links[i].name == name) return static_cast<int>(i);
  return -1;
}

int RobotModel::joint_index(const std::string& name) const {
  for (std::size_t i = 0; i < joints.size(); ++i)
    if (joints[i].name == name) return static_cast<int>(i);
  return -1;
}

std::optional<RobotModel::ContactFrameRef> RobotModel::find_contact_frame(
    const std::string& name) const {
  for (std::size_t l = 0; l < links.size(); ++l)
    for (std::size_t f = 0; f < links[l].contact_frames.size(); ++f)
      if (links[l].contact_frames[f].name == name)
        return ContactFrameRef{static_cast<int>(l), static_cast<int>(f),
                               &links[l].contact_frames[f]};
  return std::nullopt;
}

std::vector<std::string> RobotModel::contact_frame_names() const {
  std::vector<std::string> names;
  for (const auto& l : links)
    for (const auto& f : l.contact_frames) names.push_back(f.name);
  return names;
}

void RobotModel::finalize(double consistency_eps) {
  n_b = static_cast<int>(links.size());
  if (n_b == 0) throw ValidationError("model has no links");

  std::set<std::string> names;
  for (const auto& l : links)
    if (!names.insert(l.name).second)
      throw ValidationError("duplicate link name '" + l.name + "'");
  for (const auto& j : joints)
    if (!names.insert(j.name).second)
      throw ValidationError("duplicate joint or link name '" + j.name + "'");
  {
    std::set<std::string> frames;
    for (const auto& l : links)
      for (const auto& f : l.contact_frames)
        if (!frames.insert(f.name).second)
          throw ValidationError("duplicate contact frame name '" + f.name + "'");
  }

  int floating_count = 0;
  n = 0;
  actuated_index.assign(joints.size(), -1);
  link_parent.assign(links.size(), -1);
  link_joint.assign(links.size(), -1);
  root_link = -1;

  for (std::size_t ji = 0; ji < joints.size(); ++ji) {
    const JointSpec& j = joints[ji];
    if (j.type == JointType::floating) {
      ++floating_count;
      if (j.parent_link != "world")
        throw ValidationError("floating joint '" + j.name + "' must have parent 'world'");
    } else {
      if (std::abs(j.axis.norm() - 1.0) > 1e-9)
        throw ValidationError("joint '" + j.name + "' axis is not unit norm");
      actuated_index[ji] = n++;
    }
    const int child = link_index(j.child_link);
    if (child < 0)
      throw ValidationError("joint '" + j.name + "' child link '" + j.child_link + "' not found");
    if (link_joint[child] >= 0)
      throw ValidationError("link '" + j.child_link + "' has multiple parent joints");
    link_joint[child] = static_cast<int>(ji);
    if (j.type == JointType::floating) {
      root_link = child;
      link_parent[child] = -1;
    } else {
      const int parent = link_index(j.parent_link);
      if (parent < 0)
        throw ValidationError("joint '" + j.name + "' parent link '" + j.parent_link +
                              "' not found");
      link_parent[child] = parent;
    }
  }

  if (floating_count == 0) throw ValidationError("no floating joint (the tree root is missing)");
  if (floating_count > 1) throw ValidationError("multiple floating joints");

  for (std::size_t li = 0; li < links.size(); ++li)
    if (link_joint[li] < 0)
      throw ValidationError("link '" + links[li].name + "' is not connected by any joint");

  // Tree check: every link must reach the root without revisiting a link.
  for (std::size_t li = 0; li < links.size(); ++li) {
    std::set<int> seen;
    int cur = static_cast<int>(li);
    while (cur != root_link) {
      if (!seen.insert(cur).second)
        throw ValidationError("joint graph contains a cycle through link '" + links[li].name +
                              "'");
      cur = link_parent[cur];
      if (cur < 0)
        throw ValidationError("link '" + links[li].name + "' is not rooted at the floating base");
    }
  }
  // Children must be declared after parents so forward passes can run in
  // declaration order.
  for (std::size_t li = 0; li < links.size(); ++li)
    if (link_parent[li] >= static_cast<int>(li))
      throw ValidationError("link '" + links[li].name + "' is declared before its parent '" +
                            links[link_parent[li]].name + "'");

  for (auto& l : links) {
    if (!l.bounding_ellipsoid.valid())
      throw ValidationError("link '" + l.name + "' bounding ellipsoid semi-axes must be positive");
    const auto report = is_fully_consistent(l.prior_params, l.bounding_ellipsoid, consistency_eps);
    if (!report.fully_consistent)
      throw ValidationError("link '" + l.name + "' prior parameters are not fully consistent: " +
                            report.describe());
  }
}

EllipsoidBound default_ellipsoid(const InertialParams& prior) {
  EllipsoidBound e;
  e.center = prior.com();
  const double r = std::max(1.5 * prior.com().norm(), 0.05);
  e.semi_axes = Vec3::Constant(r);
  return e;
}

RobotModel parse_model(const std::string& text, const std::string& origin) {
  RobotModel model;
  Tokenizer tz{origin, 0};

  std::istringstream is(text);
  std::string line;
  enum class Section { none, link, joint };
  Section section = Section::none;
  LinkSpec link;
  bool link_has_ellipsoid = false;
  JointSpec joint;
  double mass = 0.0;
  Vec3 com = Vec3::Zero();
  Eigen::Matrix<double, 6, 1> inertia6 = Eigen::Matrix<double, 6, 1>::Zero();
  Vec3 joint_rpy = Vec3::Zero();

  auto close_link = [&] {
    Mat3 I;
    I << inertia6(0), inertia6(1), inertia6(2), inertia6(1), inertia6(3), inertia6(4),
        inertia6(2), inertia6(4), inertia6(5);
    link.prior_params = InertialParams(mass, mass * com, I);
    if (!link_has_ellipsoid) link.bounding_ellipsoid = default_ellipsoid(link.prior_params);
    model.links.push_back(link);
  };
  auto close_joint = [&] {
    joint.placement.R = rpy_to_rotation(joint_rpy.x(), joint_rpy.y(), joint_rpy.z());
    model.joints.push_back(joint);
  };

  while (std::getline(is, line)) {
    ++tz.line_no;
    const auto toks = tz.split(line);
    if (toks.empty()) continue;
    const std::string& key = toks[0];

    if (section == Section::none) {
      if (key == "gravity") {
        model.gravity = tz.vec3(toks, 1, "gravity");
      } else if (key == "link" || key == "joint") {
        if (toks.size() != 2) tz.fail("'" + key + "' needs exactly one name");
        if (!valid_identifier(toks[1])) tz.fail("invalid identifier '" + toks[1] + "'");
        if (key == "link") {
          section = Section::link;
          link = LinkSpec{};
          link.name = toks[1];
          link_has_ellipsoid = false;
          mass = 0.0;
          com.setZero();
          inertia6.setZero();
        } else {
          section = Section::joint;
          joint = JointSpec{};
          joint.name = toks[1];
          joint_rpy.setZero();
        }
      } else {
        tz.fail("unknown top-level key '" + key + "'");
      }
      continue;
    }

    if (key == "end") {
      if (section == Section::link) close_link();
      else close_joint();
      section = Section::none;
      continue;
    }

    if (section == Section::link) {
      if (key == "mass") {
        if (toks.size() != 2) tz.fail("'mass' needs one value");
        mass = tz.number(toks[1], "mass");
      } else if (key == "com") {
        com = tz.vec3(toks, 1, "com");
      } else if (key == "inertia") {
        if (toks.size() != 7) tz.fail("'inertia' needs 6 values (ixx ixy ixz iyy iyz izz)");
        for (int i = 0; i < 6; ++i) inertia6(i) = tz.number(toks[1 + i], "inertia");
      } else if (key == "ellipsoid_center") {
        link.bounding_ellipsoid.center = tz.vec3(toks, 1, "ellipsoid_center");
        link_has_ellipsoid = true;
      } else if (key == "ellipsoid_semi_axes") {
        link.bounding_ellipsoid.semi_axes = tz.vec3(toks, 1, "ellipsoid_semi_axes");
        link_has_ellipsoid = true;
      } else if (key == "contact_frame") {
        if (toks.size() != 5 && toks.size() != 8)
          tz.fail("'contact_frame' needs a name and 3 (xyz) or 6 (xyz rpy) values");
        ContactFrame f;
        f.name = toks[1];
        if (!valid_identifier(f.name)) tz.fail("invalid contact frame name '" + f.name + "'");
        f.placement.p = tz.vec3(toks, 2, "contact_frame");
        if (toks.size() == 8) {
          const Vec3 rpy = tz.vec3(toks, 5, "contact_frame");
          f.placement.R = rpy_to_rotation(rpy.x(), rpy.y(), rpy.z());
        }
        link.contact_frames.push_back(f);
      } else {
        tz.fail("unknown link field '" + key + "'");
      }
    } else {
      if (key == "type") {
        if (toks.size() != 2) tz.fail("'type' needs one value");
        if (toks[1] == "revolute") joint.type = JointType::revolute;
        else if (toks[1] == "prismatic") joint.type = JointType::prismatic;
        else if (toks[1] == "floating") joint.type = JointType::floating;
        else tz.fail("unknown joint type '" + toks[1] + "'");
      } else if (key == "axis") {
        joint.axis = tz.vec3(toks, 1, "axis");
      } else if (key == "parent") {
        if (toks.size() != 2) tz.fail("'parent' needs one name");
        joint.parent_link = toks[1];
      } else if (key == "child") {
        if (toks.size() != 2) tz.fail("'child' needs one name");
        joint.child_link = toks[1];
      } else if (key == "xyz") {
        joint.placement.p = tz.vec3(toks, 1, "xyz");
      } else if (key == "rpy") {
        joint_rpy = tz.vec3(toks, 1, "rpy");
      } else {
        tz.fail("unknown joint field '" + key + "'");
      }
    }
  }
  if (section != Section::none) tz.fail("unterminated section (missing 'end')");

  model.finalize();
  return model;
}

RobotModel load_model(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open model file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_model(ss.str(), path);
}

std::string serialize_model(const RobotModel& model) {
  std::ostringstream os;
  os << "gravity " << fmt_double(model.gravity.x()) << " " << fmt_double(model.gravity.y()) << " "
     << fmt_double(model.gravity.z()) << "\n\n";
  for (const auto& l : model.links) {
    const InertialParams& p = l.prior_params;
    const Mat3 I = p.inertia();
    os << "link " << l.name << "\n";
    os << "  mass " << fmt_double(p.mass()) << "\n";
    const Vec3 c = p.com();
    os << "  com " << fmt_double(c.x()) << " " << fmt_double(c.y()) << " " << fmt_double(c.z())
       << "\n";
    os << "  inertia " << fmt_double(I(0, 0)) << " " << fmt_double(I(0, 1)) << " "
       << fmt_double(I(0, 2)) << " " << fmt_double(I(1, 1)) << " " << fmt_double(I(1, 2)) << " "
       << fmt_double(I(2, 2)) << "\n";
    os << "  ellipsoid_center " << fmt_double(l.bounding_ellipsoid.center.x()) << " "
       << fmt_double(l.bounding_ellipsoid.center.y()) << " "
       << fmt_double(l.bounding_ellipsoid.center.z()) << "\n";
    os << "  ellipsoid_semi_axes " << fmt_double(l.bounding_ellipsoid.semi_axes.x()) << " "
       << fmt_double(l.bounding_ellipsoid.semi_axes.y()) << " "
       << fmt_double(l.bounding_ellipsoid.semi_axes.z()) << "\n";
    for (const auto& f : l.contact_frames) {
      const Vec3 rpy = f.placement.R.eulerAngles(2, 1, 0).reverse();
      os << "  contact_frame " << f.name << " " << fmt_double(f.placement.p.x()) << " "
         << fmt_double(f.placement.p.y()) << " " << fmt_double(f.placement.p.z());
      if (rpy.norm() > 0.0)
        os << " " << fmt_double(rpy.x()) << " " << fmt_double(rpy.y()) << " "
           << fmt_double(rpy.z());
      os << "\n";
    }
    os << "end\n\n";
  }
  for (const auto& j : model.joints) {
    os << "joint " << j.name << "\n";
    os << "  type "
       << (j.type == JointType::revolute ? "revolute"
           : j.type == JointType::prismatic ? "prismatic" : "floating")
       << "\n";
    if (j.type != JointType::floating)
      os << "  axis " << fmt_double(j.axis.x()) << " " << fmt_double(j.axis.y()) << " "
         << fmt_double(j.axis.z()) << "\n";
    os << "  parent " << j.parent_link << "\n";
    os << "  child " << j.child_link << "\n";
    os << "  xyz " << fmt_double(j.placement.p.x()) << " " << fmt_double(j.placement.p.y()) << " "
       << fmt_double(j.placement.p.z()) << "\n";
    const Vec3 rpy = j.placement.R.eulerAngles(2, 1, 0).reverse();
    os << "  rpy " << fmt_double(rpy.x()) << " " << fmt_double(rpy.y()) << " "
       << fmt_double(rpy.z()) << "\n";
    os << "end\n\n";
  }
  return os.str();
}

void save_model(const RobotModel& model, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write model file '" + path + "'");
  f << serialize_model(model);
}

Eigen::VectorXd stack_priors(const RobotModel& model) {
  Eigen::VectorXd phi(10 * model.n_b);
  for (int i = 0; i < model.n_b; ++i) phi.segment<10>(10 * i) = model.links[i].prior_params.v;
  return phi;
}

RobotModel with_parameters(const RobotModel& model, const Eigen::VectorXd& phi) {
  if (phi.size() != 10 * model.n_b)
    throw std::invalid_argument("with_parameters: expected " + std::to_string(10 * model.n_b) +
                                " parameters, got " + std::to_string(phi.size()));
  RobotModel out = model;
  for (int i = 0; i < model.n_b; ++i)
    out.links[i].prior_params = InertialParams(phi.segment<10>(10 * i));
  return out;
}

std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t seed) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t model_hash(const RobotModel& model) {
  const std::string s = serialize_model(model);
  return fnv1a(s.data(), s.size());
}

}  // namespace inertid
