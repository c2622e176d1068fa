#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "inertid/model.hpp"
#include "inertid/spatialdyn.hpp"

namespace inertid {

/// One timestamped trajectory record.
struct TrajectorySample {
  double t = 0.0;
  Eigen::VectorXd q;
  Eigen::VectorXd v;
  Eigen::VectorXd a;
  Eigen::VectorXd tau;
  ContactSet contacts;
};

struct DatasetMeta {
  std::string source;
  std::string motion_tag;
  std::uint64_t model_hash = 0;
  double rate = 0.0;
  std::string filter_desc;  // empty when unconditioned
};

struct Dataset {
  std::vector<TrajectorySample> samples;
  DatasetMeta meta;
  // Whole-trajectory segments (tag, first sample index); split-by-tag moves
  // whole segments.
  std::vector<std::pair<std::string, std::size_t>> segments;

  std::size_t n_s() const { return samples.size(); }
};

/// Loads a trajectory log and validates it against the model. Timestamp
/// jitter above 1% triggers linear resampling onto a uniform grid.
Dataset load_log(const std::string& path, const RobotModel& model);

/// Canonical text serialization (17 significant digits).
void save_log(const std::string& path, const Dataset& ds, const RobotModel& model);
std::string serialize_log(const Dataset& ds, const RobotModel& model);

Dataset merge(const Dataset& a, const Dataset& b);

struct SplitPolicy {
  enum class Kind { ratio, by_motion_tag } kind = Kind::ratio;
  double ratio = 0.8;
  std::uint64_t seed = 0;
  std::string holdout_tag;

  static SplitPolicy by_ratio(double r, std::uint64_t seed = 0) {
    return SplitPolicy{Kind::ratio, r, seed, ""};
  }
  static SplitPolicy by_tag(const std::string& tag) {
    return SplitPolicy{Kind::by_motion_tag, 0.0, 0, tag};
  }
};

/// Disjoint cover of the dataset; by-motion-tag holds out whole segments.
std::pair<Dataset, Dataset> split(const Dataset& ds, const SplitPolicy& policy);

struct FilterConfig {
  bool enabled = false;
  int order = 5;
  double cutoff_hz = 10.0;
  bool derive_acceleration = true;  // recompute a from the filtered v
};

/// Zero-phase filtering of v and tau (q is left untouched); optionally
/// re-derives a from the filtered velocities.
Dataset condition_dataset(const Dataset& ds, const RobotModel& model, const FilterConfig& cfg);

}  // namespace inertid
