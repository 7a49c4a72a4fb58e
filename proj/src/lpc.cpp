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

#include "chirpmfcc/lpc.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "chirpmfcc/error.hpp"
#include "chirpmfcc/parallel.hpp"

namespace chirpmfcc {
namespace {

using Cx = std::complex<double>;

// Horner evaluation of the polynomial and its derivative.
std::pair<Cx, Cx> eval_poly(std::span<const double> c, Cx z) {
  Cx p = c[0];
  Cx dp = 0.0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    dp = dp * z + p;
    p = p * z + c[i];
  }
  return {p, dp};
}

// Sum of |c_i| |z|^(n-i): the natural scale for a residual at z.
double residual_scale(std::span<const double> c, Cx z) {
  const double r = std::abs(z);
  double acc = 0.0;
  for (double ci : c) acc = acc * r + std::abs(ci);
  return std::max(acc, 1.0);
}

bool has_energy(double r0) { return r0 > 1e-300 && std::isfinite(r0); }

}  // namespace

std::vector<double> autocorrelation(std::span<const double> x, std::size_t max_lag) {
  std::vector<double> r(max_lag + 1, 0.0);
  for (std::size_t lag = 0; lag <= max_lag && lag < x.size(); ++lag) {
    double acc = 0.0;
    for (std::size_t n = lag; n < x.size(); ++n) acc += x[n] * x[n - lag];
    r[lag] = acc;
  }
  return r;
}

LpcModel levinson_durbin(std::span<const double> r, std::size_t order) {
  if (r.size() < order + 1) throw InputError("levinson_durbin needs order+1 autocorrelation lags");
  if (!has_energy(r[0])) throw NumericError("degenerate frame");

  LpcModel model;
  model.order = order;
  model.coefficients.assign(order, 0.0);
  model.reflection.assign(order, 0.0);
  model.error_trajectory.push_back(r[0]);

  std::vector<double>& a = model.coefficients;
  std::vector<double> prev(order, 0.0);
  double err = r[0];
  for (std::size_t i = 1; i <= order; ++i) {
    double acc = r[i];
    for (std::size_t j = 1; j < i; ++j) acc -= a[j - 1] * r[i - j];
    const double k = acc / err;
    const double next_err = err * (1.0 - k * k);
    // A perfectly predictable frame drives the error to rounding noise; stop
    // there and leave the higher coefficients at zero.
    if (!(next_err > r[0] * 1e-14) || std::abs(k) >= 1.0) {
      for (std::size_t rest = i; rest <= order; ++rest) model.error_trajectory.push_back(err);
      break;
    }
    prev = a;
    a[i - 1] = k;
    for (std::size_t j = 1; j < i; ++j) a[j - 1] = prev[j - 1] - k * prev[i - j - 1];
    model.reflection[i - 1] = k;
    err = next_err;
    model.error_trajectory.push_back(err);
  }
  model.error_energy = err;
  model.gain = std::sqrt(err);
  return model;
}

LpcModel lpc(std::span<const double> frame, std::size_t order) {
  if (order == 0) throw InputError("LPC order must be positive");
  if (frame.size() <= order) {
    std::ostringstream os;
    os << "frame length " << frame.size() << " must exceed LPC order " << order;
    throw InputError(os.str());
  }
  return levinson_durbin(autocorrelation(frame, order), order);
}

LpcModel lpc(const Frame& frame, std::size_t order) { return lpc(frame.samples, order); }

std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs,
                                                   double tolerance) {
  if (coeffs.empty() || coeffs[0] == 0.0) throw InputError("leading coefficient must be nonzero");
  const std::size_t degree = coeffs.size() - 1;
  std::vector<Cx> roots;
  if (degree == 0) return roots;

  std::vector<double> monic(coeffs.begin(), coeffs.end());
  for (double& c : monic) c /= coeffs[0];

  // Companion matrix: first row -c[1..n], ones on the subdiagonal.
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(degree),
                                                    static_cast<Eigen::Index>(degree));
  for (std::size_t j = 0; j < degree; ++j) companion(0, static_cast<Eigen::Index>(j)) = -monic[j + 1];
  for (std::size_t i = 1; i < degree; ++i) {
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NumericError("companion eigenvalue solver did not converge");
  const auto& ev = solver.eigenvalues();

  roots.reserve(degree);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    Cx z = ev[i];
    const auto [p, dp] = eval_poly(monic, z);
    if (std::abs(dp) > 0.0) {
      const Cx polished = z - p / dp;
      if (std::abs(eval_poly(monic, polished).first) < std::abs(p)) z = polished;
    }
    const double residual = std::abs(eval_poly(monic, z).first);
    if (residual > tolerance * residual_scale(monic, z)) {
      std::ostringstream os;
      os << "root finder did not converge: residual " << residual << " at " << z;
      throw NumericError(os.str());
    }
    roots.push_back(z);
  }
  return roots;
}

PoleSet poles_of(const LpcModel& model, std::size_t frame_id) {
  std::vector<double> poly(model.order + 1);
  poly[0] = 1.0;
  for (std::size_t k = 0; k < model.order; ++k) poly[k + 1] = -model.coefficients[k];

  PoleSet set;
  set.frame_id = frame_id;
  try {
    set.poles = polynomial_roots(poly);
  } catch (const NumericError& e) {
    std::ostringstream os;
    os << "frame " << frame_id << ": " << e.what();
    throw NumericError(os.str());
  }
  for (const auto& z : set.poles) set.max_radius = std::max(set.max_radius, std::abs(z));
  return set;
}

void PoleAnalysisConfig::validate() const {
  if (order == 0) throw InputError("LPC order must be positive");
  if (!(hop_ms > 0.0) || frame_ms < hop_ms) throw InputError("framing requires frame_ms >= hop_ms > 0");
  if (!(bin_width > 0.0) || !(bin_low < bin_high)) throw InputError("histogram needs bin_low < bin_high and bin_width > 0");
  if (!(preemphasis >= 0.0 && preemphasis < 1.0)) throw InputError("preemphasis must be in [0, 1)");
}

RadiusHistogram::RadiusHistogram(double low, double high, double width)
    : low_(low), high_(high), width_(width) {
  if (!(width > 0.0) || !(low < high)) throw InputError("histogram needs low < high and width > 0");
  const auto n = static_cast<std::size_t>(std::llround((high - low) / width));
  counts_.assign(std::max<std::size_t>(n, 1), 0);
}

double RadiusHistogram::bin_low(std::size_t i) const {
  return low_ + width_ * static_cast<double>(i);
}

double RadiusHistogram::bin_high(std::size_t i) const {
  return i + 1 == counts_.size() ? high_ : low_ + width_ * static_cast<double>(i + 1);
}

void RadiusHistogram::add(double max_radius) {
  // The small offset keeps values that sit on an edge (0.998 = 0.5 + 498 *
  // 0.001 up to rounding) in the bin they name.
  const double pos = (max_radius - low_) / width_ + 1e-9;
  std::size_t idx = 0;
  if (max_radius < low_) {
    ++below_range_;
  } else if (pos >= static_cast<double>(counts_.size())) {
    idx = counts_.size() - 1;
  } else {
    idx = static_cast<std::size_t>(pos);
  }
  if (max_radius >= 1.0) ++unstable_;
  ++counts_[idx];
  ++counted_;
  max_observed_ = std::max(max_observed_, max_radius);
}

void RadiusHistogram::merge(const RadiusHistogram& other) {
  if (other.counts_.size() != counts_.size() || other.low_ != low_ || other.width_ != width_) {
    throw InputError("cannot merge histograms with different bin layouts");
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  counted_ += other.counted_;
  degenerate_ += other.degenerate_;
  below_range_ += other.below_range_;
  unstable_ += other.unstable_;
  utterances_ += other.utterances_;
  max_observed_ = std::max(max_observed_, other.max_observed_);
}

std::size_t RadiusHistogram::mode_bin() const {
  return static_cast<std::size_t>(std::max_element(counts_.begin(), counts_.end()) - counts_.begin());
}

double RadiusHistogram::quantile_edge(double q) const {
  if (counted_ == 0) throw NumericError("histogram has no counted frames");
  const double target = q * static_cast<double>(counted_);
  std::size_t cumulative = 0;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    cumulative += counts_[i];
    if (static_cast<double>(cumulative) >= target - 1e-9) return bin_low(i);
  }
  return bin_low(counts_.size() - 1);
}

std::vector<std::optional<double>> frame_max_radii(const SampledSignal& signal,
                                                   const PoleAnalysisConfig& config) {
  signal.validate();
  config.validate();
  const auto emphasized = preemphasize(signal.samples, config.preemphasis);
  const auto frames =
      frame_samples(emphasized, ms_to_samples(config.frame_ms, signal.sample_rate),
                    ms_to_samples(config.hop_ms, signal.sample_rate), true);
  const auto window = make_window(config.window, frames.front().samples.size());
  if (window.size() <= config.order) {
    std::ostringstream os;
    os << "frame length " << window.size() << " must exceed LPC order " << config.order;
    throw InputError(os.str());
  }

  std::vector<std::optional<double>> out;
  out.reserve(frames.size());
  std::vector<double> windowed(window.size());
  for (const auto& f : frames) {
    for (std::size_t n = 0; n < window.size(); ++n) windowed[n] = f.samples[n] * window[n];
    const auto r = autocorrelation(windowed, config.order);
    if (!has_energy(r[0])) {
      out.emplace_back(std::nullopt);
      continue;
    }
    out.emplace_back(poles_of(levinson_durbin(r, config.order), f.index).max_radius);
  }
  return out;
}

RadiusHistogram radius_histogram(std::span<const SampledSignal> corpus,
                                 const PoleAnalysisConfig& config, unsigned threads) {
  if (corpus.empty()) throw InputError("corpus is empty");
  config.validate();

  std::vector<RadiusHistogram> partial(corpus.size(),
                                       RadiusHistogram(config.bin_low, config.bin_high, config.bin_width));
  parallel_for(corpus.size(), threads, [&](std::size_t i) {
    auto& h = partial[i];
    h.add_utterances();
    for (const auto& r : frame_max_radii(corpus[i], config)) {
      if (r) {
        h.add(*r);
      } else {
        h.add_degenerate();
      }
    }
  });

  RadiusHistogram total(config.bin_low, config.bin_high, config.bin_width);
  for (const auto& h : partial) total.merge(h);
  return total;
}

double recommend_radius(const RadiusHistogram& hist, const RadiusRecommendation& options) {
  if (hist.counted() == 0) {
    throw NumericError("no usable frames: every frame in the histogram was degenerate");
  }
  if (!(options.quantile > 0.0 && options.quantile <= 1.0)) throw InputError("quantile must be in (0, 1]");
  return std::clamp(hist.quantile_edge(options.quantile), options.clamp_low, options.clamp_high);
}

}  // namespace chirpmfcc
