#pragma once

#include <Eigen/Dense>
#include <vector>

namespace inertid {

/// Uniformly sampled multi-channel series (rows = samples).
struct TimeSeries {
  Eigen::VectorXd t;
  Eigen::MatrixXd channels;
  double rate = 0.0;  // nominal Hz

  int samples() const { return static_cast<int>(channels.rows()); }
  int dims() const { return static_cast<int>(channels.cols()); }
};

/// Validates timestamps (strictly increasing, finite channels) and computes
/// the nominal rate. Series with more than 1% timestamp jitter are linearly
/// resampled onto a uniform grid.
TimeSeries make_timeseries(const Eigen::VectorXd& t, const Eigen::MatrixXd& channels);

/// One second-order section (a0 normalized to 1).
struct Biquad {
  double b0, b1, b2, a1, a2;
};

/// Butterworth low-pass as second-order sections, bilinear transform with
/// frequency prewarping. DC gain is exactly 1 per section.
std::vector<Biquad> butterworth_lowpass(int order, double cutoff_hz, double rate_hz);

/// Single-pass filtering with steady-state initial conditions for x[0]
/// (a constant input passes through unchanged).
Eigen::VectorXd sosfilt(const std::vector<Biquad>& sos, const Eigen::VectorXd& x);

/// Forward-backward (zero-phase) filtering. Edge transients are handled by
/// mirror padding of length 3*order on both sides. Throws when
/// cutoff >= rate/2 or the series is shorter than 3x the warm-up length.
TimeSeries butterworth_zero_phase(const TimeSeries& x, int order, double cutoff_hz);

/// Central-difference differentiation (one-sided at the endpoints), followed
/// by the same zero-phase filter when `filter_output` is set.
TimeSeries estimate_acceleration(const TimeSeries& v, int order = 5, double cutoff_hz = 10.0,
                                 bool filter_output = true);

/// Squared-magnitude sum of the zero-phase pipeline's impulse response: the
/// white-noise variance gain of the forward-backward filter.
double zero_phase_noise_gain(int order, double cutoff_hz, double rate_hz);

}  // namespace inertid
