#include "inertid/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace inertid {

namespace {

Eigen::VectorXd filter_channel(const std::vector<Biquad>& sos, const Eigen::VectorXd& x) {
  Eigen::VectorXd y = x;
  for (const Biquad& s : sos) {
    // Transposed direct form II with steady-state initial conditions, so a
    // constant input produces a constant output from the first sample.
    double s1 = (s.b1 + s.b2 - s.a1 - s.a2) * y(0);
    double s2 = (s.b2 - s.a2) * y(0);
    for (Eigen::Index k = 0; k < y.size(); ++k) {
      const double xk = y(k);
      const double yk = s.b0 * xk + s1;
      s1 = s.b1 * xk - s.a1 * yk + s2;
      s2 = s.b2 * xk - s.a2 * yk;
      y(k) = yk;
    }
  }
  return y;
}

Eigen::VectorXd filtfilt_channel(const std::vector<Biquad>& sos, const Eigen::VectorXd& x,
                                 int padlen) {
  const Eigen::Index n = x.size();
  Eigen::VectorXd ext(n + 2 * padlen);
  for (int i = 0; i < padlen; ++i) ext(i) = x(padlen - i);
  ext.segment(padlen, n) = x;
  for (int i = 0; i < padlen; ++i) ext(padlen + n + i) = x(n - 2 - i);

  Eigen::VectorXd fwd = filter_channel(sos, ext);
  Eigen::VectorXd bwd = filter_channel(sos, fwd.reverse());
  return bwd.reverse().segment(padlen, n);
}

}  // namespace

TimeSeries make_timeseries(const Eigen::VectorXd& t, const Eigen::MatrixXd& channels) {
  if (t.size() != channels.rows()) throw std::invalid_argument("timestamp/channel row mismatch");
  if (t.size() < 2) throw std::invalid_argument("time series needs at least 2 samples");
  if (!channels.allFinite()) throw std::invalid_argument("time series contains non-finite values");

  Eigen::VectorXd dt(t.size() - 1);
  for (Eigen::Index k = 0; k + 1 < t.size(); ++k) {
    dt(k) = t(k + 1) - t(k);
    if (dt(k) <= 0.0) throw std::invalid_argument("timestamps must be strictly increasing");
  }
  std::vector<double> sorted(dt.data(), dt.data() + dt.size());
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double dt_med = sorted[sorted.size() / 2];

  TimeSeries out;
  out.rate = 1.0 / dt_med;
  const double jitter = ((dt.array() - dt_med).abs() / dt_med).maxCoeff();
  if (jitter <= 0.01) {
    out.t = t;
    out.channels = channels;
    return out;
  }

  // Resample onto a uniform grid at the median step.
  const auto count = static_cast<Eigen::Index>(std::floor((t(t.size() - 1) - t(0)) / dt_med)) + 1;
  out.t.resize(count);
  out.channels.resize(count, channels.cols());
  Eigen::Index src = 0;
  for (Eigen::Index k = 0; k < count; ++k) {
    const double tk = t(0) + static_cast<double>(k) * dt_med;
    out.t(k) = tk;
    while (src + 2 < t.size() && t(src + 1) <= tk) ++src;
    const double w = (tk - t(src)) / (t(src + 1) - t(src));
    out.channels.row(k) = (1.0 - w) * channels.row(src) + w * channels.row(src + 1);
  }
  return out;
}

std::vector<Biquad> butterworth_lowpass(int order, double cutoff_hz, double rate_hz) {
  if (order < 1) throw std::invalid_argument("filter order must be >= 1");
  if (!(cutoff_hz > 0.0) || cutoff_hz >= rate_hz / 2.0)
    throw std::invalid_argument("cutoff must lie in (0, rate/2)");

  const double K = 2.0 * rate_hz;
  const double omega = K * std::tan(std::numbers::pi * cutoff_hz / rate_hz);  // prewarped

  std::vector<Biquad> sos;
  // Conjugate pole pairs of the analog prototype; one real pole for odd order.
  for (int k = 0; 2 * k + 1 < order; ++k) {
    const double theta = std::numbers::pi * (2.0 * k + order + 1.0) / (2.0 * order);
    const double alpha = -2.0 * omega * std::cos(theta);  // = -2 Re(p) > 0
    const double beta = omega * omega;
    const double a0 = K * K + alpha * K + beta;
    sos.push_back(Biquad{beta / a0, 2.0 * beta / a0, beta / a0,
                         (2.0 * beta - 2.0 * K * K) / a0, (K * K - alpha * K + beta) / a0});
  }
  if (order % 2 == 1) {
    const double a0 = K + omega;
    sos.push_back(Biquad{omega / a0, omega / a0, 0.0, (omega - K) / a0, 0.0});
  }
  return sos;
}

Eigen::VectorXd sosfilt(const std::vector<Biquad>& sos, const Eigen::VectorXd& x) {
  return filter_channel(sos, x);
}

TimeSeries butterworth_zero_phase(const TimeSeries& x, int order, double cutoff_hz) {
  const auto sos = butterworth_lowpass(order, cutoff_hz, x.rate);
  const int padlen = 3 * order;
  if (x.samples() <= 3 * padlen)
    throw std::invalid_argument("series too short for zero-phase filtering (need > " +
                                std::to_string(3 * padlen) + " samples)");
  TimeSeries out = x;
  for (int c = 0; c < x.dims(); ++c)
    out.channels.col(c) = filtfilt_channel(sos, x.channels.col(c), padlen);
  return out;
}

TimeSeries estimate_acceleration(const TimeSeries& v, int order, double cutoff_hz,
                                 bool filter_output) {
  if (v.samples() < 3) throw std::invalid_argument("need at least 3 samples to differentiate");
  const double dt = 1.0 / v.rate;
  TimeSeries acc = v;
  const Eigen::Index n = v.samples();
  acc.channels.row(0) = (v.channels.row(1) - v.channels.row(0)) / dt;
  acc.channels.row(n - 1) = (v.channels.row(n - 1) - v.channels.row(n - 2)) / dt;
  for (Eigen::Index k = 1; k + 1 < n; ++k)
    acc.channels.row(k) = (v.channels.row(k + 1) - v.channels.row(k - 1)) / (2.0 * dt);
  if (filter_output) return butterworth_zero_phase(acc, order, cutoff_hz);
  return acc;
}

double zero_phase_noise_gain(int order, double cutoff_hz, double rate_hz) {
  const auto sos = butterworth_lowpass(order, cutoff_hz, rate_hz);
  // Long impulse through forward-backward passes; steady-state initialization
  // is bypassed by prepending zeros.
  const int n = 4096;
  Eigen::VectorXd impulse = Eigen::VectorXd::Zero(2 * n);
  impulse(n) = 1.0;
  Eigen::VectorXd fwd = filter_channel(sos, impulse);
  Eigen::VectorXd bwd = filter_channel(sos, fwd.reverse()).reverse();
  return bwd.squaredNorm();
}

}  // namespace inertid
