#include "inertid/dataio.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "inertid/signal.hpp"

namespace inertid {

namespace {

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, ',')) out.push_back(trim(cur));
  return out;
}

[[noreturn]] void fail_row(const std::string& origin, int line_no, const std::string& msg) {
  throw ParseError(origin + ":" + std::to_string(line_no) + ": " + msg);
}

}  // namespace

std::string serialize_log(const Dataset& ds, const RobotModel& model) {
  std::ostringstream os;
  const auto frames = model.contact_frame_names();
  os << "# inertid-log v1\n";
  os << "# model_hash: " << std::hex << ds.meta.model_hash << std::dec << "\n";
  os << "# rate: " << fmt_double(ds.meta.rate) << "\n";
  os << "# motion: " << (ds.meta.motion_tag.empty() ? "untagged" : ds.meta.motion_tag) << "\n";
  os << "# quaternion_order: xyzw\n";
  if (!ds.meta.filter_desc.empty()) os << "# filter: " << ds.meta.filter_desc << "\n";
  os << "t";
  for (int i = 0; i < model.nq(); ++i) os << ",q[" << i << "]";
  for (int i = 0; i < model.nv(); ++i) os << ",v[" << i << "]";
  for (int i = 0; i < model.nv(); ++i) os << ",a[" << i << "]";
  for (int i = 0; i < model.n; ++i) os << ",tau[" << i << "]";
  for (const auto& f : frames) os << ",c[" << f << "]";
  os << "\n";
  for (const auto& s : ds.samples) {
    os << fmt_double(s.t);
    for (int i = 0; i < model.nq(); ++i) os << "," << fmt_double(s.q(i));
    for (int i = 0; i < model.nv(); ++i) os << "," << fmt_double(s.v(i));
    for (int i = 0; i < model.nv(); ++i) os << "," << fmt_double(s.a(i));
    for (int i = 0; i < model.n; ++i) os << "," << fmt_double(s.tau(i));
    for (const auto& f : frames) {
      const bool active = std::find(s.contacts.active.begin(), s.contacts.active.end(), f) !=
                          s.contacts.active.end();
      os << "," << (active ? 1 : 0);
    }
    os << "\n";
  }
  return os.str();
}

void save_log(const std::string& path, const Dataset& ds, const RobotModel& model) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write log file '" + path + "'");
  f << serialize_log(ds, model);
}

Dataset load_log(const std::string& path, const RobotModel& model) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open log file '" + path + "'");

  Dataset ds;
  ds.meta.source = path;

  std::string line;
  int line_no = 0;
  std::vector<std::string> header;
  while (std::getline(f, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const auto colon = t.find(':');
      if (colon != std::string::npos) {
        const std::string key = trim(t.substr(1, colon - 1));
        const std::string value = trim(t.substr(colon + 1));
        if (key == "model_hash") ds.meta.model_hash = std::stoull(value, nullptr, 16);
        else if (key == "rate") ds.meta.rate = std::stod(value);
        else if (key == "motion") ds.meta.motion_tag = value;
        else if (key == "filter") ds.meta.filter_desc = value;
      }
      continue;
    }
    header = split_csv(t);
    break;
  }
  if (header.empty()) throw ParseError(path + ": no samples (missing header)");

  // Resolve column roles from the header.
  const auto frames = model.contact_frame_names();
  const int nq = model.nq(), nv = model.nv(), n = model.n;
  std::vector<std::string> expected;
  expected.push_back("t");
  for (int i = 0; i < nq; ++i) expected.push_back("q[" + std::to_string(i) + "]");
  for (int i = 0; i < nv; ++i) expected.push_back("v[" + std::to_string(i) + "]");
  for (int i = 0; i < nv; ++i) expected.push_back("a[" + std::to_string(i) + "]");
  for (int i = 0; i < n; ++i) expected.push_back("tau[" + std::to_string(i) + "]");
  if (header.size() < expected.size())
    fail_row(path, line_no,
             "header has " + std::to_string(header.size()) + " columns, model needs at least " +
                 std::to_string(expected.size()) + " (dimension mismatch vs model)");
  for (std::size_t i = 0; i < expected.size(); ++i)
    if (header[i] != expected[i])
      fail_row(path, line_no, "unexpected column '" + header[i] + "' (expected '" + expected[i] +
                                  "'; dimension mismatch vs model)");
  std::vector<std::string> contact_cols;
  for (std::size_t i = expected.size(); i < header.size(); ++i) {
    const std::string& h = header[i];
    if (h.size() < 4 || h.substr(0, 2) != "c[" || h.back() != ']')
      fail_row(path, line_no, "unexpected trailing column '" + h + "'");
    const std::string frame = h.substr(2, h.size() - 3);
    if (!model.find_contact_frame(frame))
      fail_row(path, line_no, "contact column references unknown frame '" + frame + "'");
    contact_cols.push_back(frame);
  }

  const std::size_t ncols = header.size();
  while (std::getline(f, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto cells = split_csv(t);
    if (cells.size() != ncols)
      fail_row(path, line_no, "expected " + std::to_string(ncols) + " cells, got " +
                                  std::to_string(cells.size()));
    TrajectorySample s;
    std::size_t at = 0;
    auto next = [&]() -> double {
      try {
        return std::stod(cells.at(at++));
      } catch (const std::exception&) {
        fail_row(path, line_no, "cell " + std::to_string(at) + ": not a number ('" +
                                    cells[at - 1] + "')");
      }
    };
    s.t = next();
    s.q.resize(nq);
    for (int i = 0; i < nq; ++i) s.q(i) = next();
    s.v.resize(nv);
    for (int i = 0; i < nv; ++i) s.v(i) = next();
    s.a.resize(nv);
    for (int i = 0; i < nv; ++i) s.a(i) = next();
    s.tau.resize(n);
    for (int i = 0; i < n; ++i) s.tau(i) = next();
    for (const auto& frame : contact_cols)
      if (next() != 0.0) s.contacts.active.push_back(frame);
    ds.samples.push_back(std::move(s));
  }
  if (ds.samples.empty()) throw ParseError(path + ": no samples");
  ds.segments.emplace_back(ds.meta.motion_tag, 0);

  if (ds.meta.rate == 0.0 && ds.samples.size() > 1)
    ds.meta.rate = 1.0 / (ds.samples[1].t - ds.samples[0].t);

  // Jitter check; resample onto a uniform grid if above 1%.
  if (ds.samples.size() > 2) {
    double dt_med;
    {
      std::vector<double> dts;
      for (std::size_t k = 0; k + 1 < ds.samples.size(); ++k) {
        const double dt = ds.samples[k + 1].t - ds.samples[k].t;
        if (dt <= 0.0) fail_row(path, 0, "timestamps must be strictly increasing");
        dts.push_back(dt);
      }
      std::nth_element(dts.begin(), dts.begin() + dts.size() / 2, dts.end());
      dt_med = dts[dts.size() / 2];
    }
    double jitter = 0.0;
    for (std::size_t k = 0; k + 1 < ds.samples.size(); ++k)
      jitter = std::max(jitter,
                        std::abs(ds.samples[k + 1].t - ds.samples[k].t - dt_med) / dt_med);
    if (jitter > 0.01) {
      const std::size_t cols = 1 + nq + 2 * nv + n;
      Eigen::VectorXd tt(ds.samples.size());
      Eigen::MatrixXd ch(ds.samples.size(), cols - 1);
      for (std::size_t k = 0; k < ds.samples.size(); ++k) {
        const auto& s = ds.samples[k];
        tt(k) = s.t;
        ch.row(k) << s.q.transpose(), s.v.transpose(), s.a.transpose(), s.tau.transpose();
      }
      const TimeSeries uniform = make_timeseries(tt, ch);
      std::vector<TrajectorySample> resampled(uniform.samples());
      for (int k = 0; k < uniform.samples(); ++k) {
        TrajectorySample& s = resampled[k];
        s.t = uniform.t(k);
        s.q = uniform.channels.row(k).segment(0, nq).transpose();
        s.q.segment<4>(3).normalize();
        s.v = uniform.channels.row(k).segment(nq, nv).transpose();
        s.a = uniform.channels.row(k).segment(nq + nv, nv).transpose();
        s.tau = uniform.channels.row(k).segment(nq + 2 * nv, n).transpose();
        // Nearest-neighbor contact flags.
        std::size_t nearest = 0;
        double best = std::numeric_limits<double>::max();
        for (std::size_t j = 0; j < ds.samples.size(); ++j) {
          const double d = std::abs(ds.samples[j].t - s.t);
          if (d < best) {
            best = d;
            nearest = j;
          }
        }
        s.contacts = ds.samples[nearest].contacts;
      }
      ds.samples = std::move(resampled);
      ds.meta.rate = uniform.rate;
    }
  }

  for (std::size_t k = 0; k < ds.samples.size(); ++k) {
    const auto& s = ds.samples[k];
    const double qn = s.q.segment<4>(3).norm();
    if (std::abs(qn - 1.0) > 1e-6)
      fail_row(path, static_cast<int>(k), "sample " + std::to_string(k) +
                                              ": base quaternion is not unit norm");
  }
  return ds;
}

Dataset merge(const Dataset& a, const Dataset& b) {
  Dataset out = a;
  out.meta.source = a.meta.source + "+" + b.meta.source;
  for (const auto& seg : b.segments)
    out.segments.emplace_back(seg.first, seg.second + a.samples.size());
  out.samples.insert(out.samples.end(), b.samples.begin(), b.samples.end());
  return out;
}

std::pair<Dataset, Dataset> split(const Dataset& ds, const SplitPolicy& policy) {
  Dataset train, val;
  train.meta = ds.meta;
  val.meta = ds.meta;
  if (policy.kind == SplitPolicy::Kind::by_motion_tag) {
    for (std::size_t seg = 0; seg < ds.segments.size(); ++seg) {
      const std::size_t begin = ds.segments[seg].second;
      const std::size_t end =
          seg + 1 < ds.segments.size() ? ds.segments[seg + 1].second : ds.samples.size();
      Dataset& target = ds.segments[seg].first == policy.holdout_tag ? val : train;
      target.segments.emplace_back(ds.segments[seg].first, target.samples.size());
      target.samples.insert(target.samples.end(), ds.samples.begin() + begin,
                            ds.samples.begin() + end);
    }
    return {train, val};
  }

  if (policy.ratio < 0.0 || policy.ratio > 1.0)
    throw std::invalid_argument("split ratio must lie in [0, 1]");
  std::vector<std::size_t> idx(ds.samples.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 rng(policy.seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  const auto n_train = static_cast<std::size_t>(std::floor(policy.ratio * ds.samples.size()));
  std::vector<bool> in_train(ds.samples.size(), false);
  for (std::size_t k = 0; k < n_train; ++k) in_train[idx[k]] = true;
  train.segments.emplace_back(ds.meta.motion_tag, 0);
  val.segments.emplace_back(ds.meta.motion_tag, 0);
  for (std::size_t k = 0; k < ds.samples.size(); ++k)
    (in_train[k] ? train : val).samples.push_back(ds.samples[k]);
  return {train, val};
}

Dataset condition_dataset(const Dataset& ds, const RobotModel& model, const FilterConfig& cfg) {
  if (!cfg.enabled || ds.samples.empty()) return ds;
  const int nv = model.nv(), n = model.n;
  Eigen::VectorXd t(ds.samples.size());
  Eigen::MatrixXd vch(ds.samples.size(), nv), tch(ds.samples.size(), n);
  for (std::size_t k = 0; k < ds.samples.size(); ++k) {
    t(k) = ds.samples[k].t;
    vch.row(k) = ds.samples[k].v.transpose();
    tch.row(k) = ds.samples[k].tau.transpose();
  }
  const TimeSeries v_raw = make_timeseries(t, vch);
  const TimeSeries v_f = butterworth_zero_phase(v_raw, cfg.order, cfg.cutoff_hz);
  const TimeSeries tau_f =
      butterworth_zero_phase(make_timeseries(t, tch), cfg.order, cfg.cutoff_hz);

  Dataset out = ds;
  for (std::size_t k = 0; k < ds.samples.size(); ++k) {
    out.samples[k].v = v_f.channels.row(k).transpose();
    out.samples[k].tau = tau_f.channels.row(k).transpose();
  }
  if (cfg.derive_acceleration) {
    const TimeSeries acc = estimate_acceleration(v_f, cfg.order, cfg.cutoff_hz, true);
    for (std::size_t k = 0; k < ds.samples.size(); ++k)
      out.samples[k].a = acc.channels.row(k).transpose();
  }
  std::ostringstream desc;
  desc << "butterworth order=" << cfg.order << " cutoff=" << cfg.cutoff_hz
       << " zero-phase; accel=" << (cfg.derive_acceleration ? "derived" : "logged");
  out.meta.filter_desc = desc.str();
  return out;
}

}  // namespace inertid
