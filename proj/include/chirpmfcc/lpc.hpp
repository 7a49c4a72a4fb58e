// Copyright 2026 The chirpmfcc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Linear prediction (autocorrelation method), pole extraction and
// max-pole-radius statistics over a corpus.

#ifndef CHIRPMFCC_LPC_HPP_
#define CHIRPMFCC_LPC_HPP_

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "chirpmfcc/signal.hpp"

namespace chirpmfcc {

inline constexpr std::size_t kDefaultLpcOrder = 20;

// Predictor x[n] ~ sum_{k=1..p} a_k x[n-k]; inverse filter 1 - sum a_k z^-k.
struct LpcModel {
  std::size_t order = 0;
  std::vector<double> coefficients;  // a_1 .. a_p
  double gain = 0.0;                 // sqrt(error_energy)
  double error_energy = 0.0;         // final forward prediction error
  // Prediction error after each Levinson step, index 0 = r[0]. Non-increasing.
  std::vector<double> error_trajectory;
  std::vector<double> reflection;    // k_1 .. k_p
};

struct PoleSet {
  std::vector<std::complex<double>> poles;
  double max_radius = 0.0;
  std::size_t frame_id = 0;

  // True if every pole lies strictly inside the unit circle.
  bool stable() const { return max_radius < 1.0; }
};

std::vector<double> autocorrelation(std::span<const double> x, std::size_t max_lag);

// Levinson-Durbin on autocorrelation lags r[0..order]. Throws
// NumericError("degenerate frame") if r[0] carries no energy.
LpcModel levinson_durbin(std::span<const double> r, std::size_t order);

// Frame must be longer than the order and already windowed.
LpcModel lpc(std::span<const double> frame, std::size_t order = kDefaultLpcOrder);
LpcModel lpc(const Frame& frame, std::size_t order = kDefaultLpcOrder);

// Roots of c[0] z^n + c[1] z^(n-1) + ... + c[n] from the companion matrix,
// each refined by one Newton step. Throws NumericError if a root's residual
// stays above tolerance.
std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs,
                                                   double tolerance = 1e-8);

// Roots of z^p - a_1 z^(p-1) - ... - a_p.
PoleSet poles_of(const LpcModel& model, std::size_t frame_id = 0);

struct PoleAnalysisConfig {
  double frame_ms = 20.0;
  double hop_ms = 10.0;
  std::size_t order = kDefaultLpcOrder;
  WindowKind window = WindowKind::kHamming;
  double preemphasis = 0.0;
  double bin_low = 0.5;
  double bin_high = 1.0;
  double bin_width = 0.001;

  void validate() const;
};

// Counts of per-frame maximum pole radii. Radii below the range land in the
// first bin and radii at or above the top in the last; both cases are also
// tallied separately. sum(counts) == counted().
class RadiusHistogram {
 public:
  RadiusHistogram(double low = 0.5, double high = 1.0, double width = 0.001);

  void add(double max_radius);
  void add_degenerate(std::size_t n = 1) { degenerate_ += n; }
  void add_utterances(std::size_t n = 1) { utterances_ += n; }
  // Bin layouts must match.
  void merge(const RadiusHistogram& other);

  std::size_t bins() const { return counts_.size(); }
  double bin_low(std::size_t i) const;
  double bin_high(std::size_t i) const;
  const std::vector<std::size_t>& counts() const { return counts_; }
  std::size_t counted() const { return counted_; }
  std::size_t degenerate() const { return degenerate_; }
  std::size_t total_frames() const { return counted_ + degenerate_; }
  std::size_t below_range() const { return below_range_; }
  std::size_t unstable() const { return unstable_; }
  std::size_t utterances() const { return utterances_; }
  double low() const { return low_; }
  double high() const { return high_; }
  double width() const { return width_; }
  double max_observed() const { return max_observed_; }

  // Index of the bin with the most counts (lowest index on ties).
  std::size_t mode_bin() const;
  // Lower edge of the bin where the cumulative fraction first reaches q.
  double quantile_edge(double q) const;

 private:
  double low_;
  double high_;
  double width_;
  std::vector<std::size_t> counts_;
  std::size_t counted_ = 0;
  std::size_t degenerate_ = 0;
  std::size_t below_range_ = 0;
  std::size_t unstable_ = 0;
  std::size_t utterances_ = 0;
  double max_observed_ = 0.0;
};

// Per-frame max pole radius of one signal, in frame order; nullopt marks a
// degenerate (zero-energy) frame.
std::vector<std::optional<double>> frame_max_radii(const SampledSignal& signal,
                                    const PoleAnalysisConfig& config);

RadiusHistogram radius_histogram(std::span<const SampledSignal> corpus,
                                 const PoleAnalysisConfig& config = {},
                                 unsigned threads = 1);

struct RadiusRecommendation {
  double quantile = 0.995;
  double clamp_low = 0.990;
  double clamp_high = 0.999;
};

// Quantile of the frame max-radii, clamped into [clamp_low, clamp_high].
double recommend_radius(const RadiusHistogram& hist, const RadiusRecommendation& options = {});

}  // namespace chirpmfcc

#endif  // CHIRPMFCC_LPC_HPP_
