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

#include "chirpmfcc/mel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "chirpmfcc/error.hpp"
#include "chirpmfcc/lpc.hpp"
#include "chirpmfcc/parallel.hpp"
#include "chirpmfcc/spectrum.hpp"

namespace chirpmfcc {
namespace {

constexpr double kAdaptiveMin = 0.990;
constexpr double kAdaptiveMax = 0.999;

std::vector<double> cepstrum_of_weighted(std::span<const double> weighted, double radius,
                                         const MelFilterbank& bank,
                                         const CepstralConfig& config) {
  const auto spectrum = dft(weighted, config.n_fft, radius);
  const auto values = config.scale == SpectrumScale::kPower ? power_spectrum(spectrum)
                                                            : magnitude_spectrum(spectrum);
  auto energies = bank.apply(values);
  for (auto& e : energies) e = std::log(std::max(e, config.log_floor));
  auto ceps = dct_ortho(energies);
  ceps.resize(config.n_ceps);
  return ceps;
}

double adaptive_radius_for(std::span<const double> windowed, const CepstralConfig& config) {
  try {
    const double r = poles_of(lpc(windowed, config.adaptive_lpc_order)).max_radius;
    return std::clamp(r, kAdaptiveMin, kAdaptiveMax);
  } catch (const NumericError&) {
    return config.radius;
  }
}

}  // namespace

std::string_view to_string(SpectrumScale scale) {
  return scale == SpectrumScale::kPower ? "power" : "magnitude";
}

double CepstralConfig::resolved_f_max(int sample_rate) const {
  return f_max > 0.0 ? f_max : sample_rate / 2.0;
}

void CepstralConfig::validate(int sample_rate) const {
  if (sample_rate <= 0) throw InputError("sample rate must be positive");
  if (n_filters == 0) throw InputError("n_filters must be positive");
  if (n_ceps == 0 || n_ceps > n_filters) throw InputError("n_ceps must be in [1, n_filters]");
  if (!(hop_ms > 0.0) || frame_ms < hop_ms) throw InputError("framing requires frame_ms >= hop_ms > 0");
  check_radius(radius);
  if (!(log_floor > 0.0)) throw InputError("log_floor must be positive");
  if (!(preemphasis >= 0.0 && preemphasis < 1.0)) throw InputError("preemphasis must be in [0, 1)");
  const std::size_t frame_len = ms_to_samples(frame_ms, sample_rate);
  if (n_fft < frame_len) {
    std::ostringstream os;
    os << "n_fft " << n_fft << " is shorter than the frame (" << frame_len << " samples)";
    throw InputError(os.str());
  }
  const double top = resolved_f_max(sample_rate);
  if (!(f_min >= 0.0 && f_min < top && top <= sample_rate / 2.0)) {
    throw InputError("filterbank needs 0 <= f_min < f_max <= sample_rate/2");
  }
  if (adaptive_radius && adaptive_lpc_order == 0) throw InputError("adaptive LPC order must be positive");
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

MelFilterbank::MelFilterbank(std::size_t n_filters, std::size_t n_fft, int sample_rate,
                             double f_min, double f_max)
    : n_filters_(n_filters),
      n_bins_(n_fft / 2 + 1),
      sample_rate_(sample_rate),
      f_min_(f_min),
      f_max_(f_max),
      weights_(n_filters * (n_fft / 2 + 1), 0.0) {
  if (n_filters == 0 || n_fft < 2) throw InputError("filterbank needs n_filters > 0 and n_fft >= 2");
  if (!(f_min >= 0.0 && f_min < f_max && f_max <= sample_rate / 2.0)) {
    throw InputError("filterbank needs 0 <= f_min < f_max <= sample_rate/2");
  }

  const double mel_lo = hz_to_mel(f_min);
  const double mel_hi = hz_to_mel(f_max);
  edges_hz_.resize(n_filters + 2);
  for (std::size_t i = 0; i < edges_hz_.size(); ++i) {
    const double mel = mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) /
                                    static_cast<double>(n_filters + 1);
    edges_hz_[i] = mel_to_hz(mel);
  }
  edges_hz_.front() = f_min;
  edges_hz_.back() = f_max;

  const double bin_hz = static_cast<double>(sample_rate) / static_cast<double>(n_fft);
  for (std::size_t m = 0; m < n_filters; ++m) {
    const double lo = edges_hz_[m];
    const double mid = edges_hz_[m + 1];
    const double hi = edges_hz_[m + 2];
    centers_hz_.push_back(mid);
    double* row = weights_.data() + m * n_bins_;
    bool any = false;
    for (std::size_t k = 0; k < n_bins_; ++k) {
      const double f = bin_hz * static_cast<double>(k);
      double w = 0.0;
      if (f > lo && f <= mid) {
        w = (f - lo) / (mid - lo);
      } else if (f > mid && f < hi) {
        w = (hi - f) / (hi - mid);
      }
      row[k] = w;
      any = any || w > 0.0;
    }
    if (!any) {
      std::ostringstream os;
      os << "mel filter " << m << " covers no FFT bin; use fewer filters or a larger n_fft";
      throw InputError(os.str());
    }
  }
}

std::span<const double> MelFilterbank::weights(std::size_t filter) const {
  return {weights_.data() + filter * n_bins_, n_bins_};
}

std::vector<double> MelFilterbank::apply(std::span<const double> spectrum) const {
  if (spectrum.size() != n_bins_) throw std::logic_error("MelFilterbank::apply: bin count mismatch");
  std::vector<double> out(n_filters_, 0.0);
  for (std::size_t m = 0; m < n_filters_; ++m) {
    const double* row = weights_.data() + m * n_bins_;
    double acc = 0.0;
    for (std::size_t k = 0; k < n_bins_; ++k) acc += row[k] * spectrum[k];
    out[m] = acc;
  }
  return out;
}

MelFilterbank build_mel_filterbank(const CepstralConfig& config, int sample_rate) {
  config.validate(sample_rate);
  return MelFilterbank(config.n_filters, config.n_fft, sample_rate, config.f_min,
                       config.resolved_f_max(sample_rate));
}

std::vector<double> dct_ortho(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<double> out(n, 0.0);
  if (n == 0) return out;
  const double scale0 = std::sqrt(1.0 / static_cast<double>(n));
  const double scale = std::sqrt(2.0 / static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += x[i] * std::cos(std::numbers::pi * static_cast<double>(k) *
                             (2.0 * static_cast<double>(i) + 1.0) / (2.0 * static_cast<double>(n)));
    }
    out[k] = acc * (k == 0 ? scale0 : scale);
  }
  return out;
}

std::vector<double> idct_ortho(std::span<const double> coeffs) {
  const std::size_t n = coeffs.size();
  std::vector<double> out(n, 0.0);
  if (n == 0) return out;
  const double scale0 = std::sqrt(1.0 / static_cast<double>(n));
  const double scale = std::sqrt(2.0 / static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    double acc = coeffs[0] * scale0;
    for (std::size_t k = 1; k < n; ++k) {
      acc += coeffs[k] * scale *
             std::cos(std::numbers::pi * static_cast<double>(k) *
                      (2.0 * static_cast<double>(i) + 1.0) / (2.0 * static_cast<double>(n)));
    }
    out[i] = acc;
  }
  return out;
}

std::vector<double> mfcc_frame(const Frame& frame, const MelFilterbank& bank,
                               const CepstralConfig& config) {
  return cepstrum_of_weighted(exp_weight(frame.samples, config.radius), config.radius, bank,
                              config);
}

std::vector<double> chirp_mfcc_frame(const Frame& frame, const MelFilterbank& bank,
                                     const CepstralConfig& config) {
  check_radius(config.radius);
  return mfcc_frame(frame, bank, config);
}

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

std::vector<std::string> FeatureMatrix::column_names() const {
  std::vector<std::string> names;
  const std::size_t block = has_deltas_ ? cols_ / 3 : cols_;
  const char prefixes[] = {'c', 'd', 'a'};
  for (std::size_t b = 0; b < (has_deltas_ ? 3U : 1U); ++b) {
    for (std::size_t i = 0; i < block; ++i) names.push_back(prefixes[b] + std::to_string(i));
  }
  return names;
}

FeatureMatrix add_deltas(const FeatureMatrix& features) {
  if (features.has_deltas()) throw InputError("feature matrix already has delta columns");
  const std::size_t t_count = features.rows();
  if (t_count < 5) {
    std::ostringstream os;
    os << "delta computation needs at least 5 frames, got " << t_count;
    throw InputError(os.str());
  }
  const std::size_t dim = features.cols();

  // d[t] = sum_{k=1..2} k (x[t+k] - x[t-k]) / 10, indices clamped to [0, T-1].
  auto regress = [t_count, dim](auto&& get, auto&& put) {
    const auto clamp_t = [t_count](std::ptrdiff_t t) {
      return static_cast<std::size_t>(
          std::clamp<std::ptrdiff_t>(t, 0, static_cast<std::ptrdiff_t>(t_count) - 1));
    };
    for (std::size_t t = 0; t < t_count; ++t) {
      const auto ti = static_cast<std::ptrdiff_t>(t);
      for (std::size_t c = 0; c < dim; ++c) {
        double acc = 0.0;
        for (std::ptrdiff_t k = 1; k <= 2; ++k) {
          acc += static_cast<double>(k) * (get(clamp_t(ti + k), c) - get(clamp_t(ti - k), c));
        }
        put(t, c, acc / 10.0);
      }
    }
  };

  FeatureMatrix out(t_count, 3 * dim);
  out.metadata = features.metadata;
  out.metadata.config.deltas = true;
  out.has_deltas_ = true;
  for (std::size_t t = 0; t < t_count; ++t) {
    for (std::size_t c = 0; c < dim; ++c) out.at(t, c) = features.at(t, c);
  }
  regress([&](std::size_t t, std::size_t c) { return out.at(t, c); },
          [&](std::size_t t, std::size_t c, double v) { out.at(t, dim + c) = v; });
  regress([&](std::size_t t, std::size_t c) { return out.at(t, dim + c); },
          [&](std::size_t t, std::size_t c, double v) { out.at(t, 2 * dim + c) = v; });
  return out;
}

FeatureMatrix extract(const SampledSignal& signal, const CepstralConfig& config,
                      std::string source, unsigned threads) {
  signal.validate();
  config.validate(signal.sample_rate);

  const auto emphasized = preemphasize(signal.samples, config.preemphasis);
  const auto frames =
      frame_samples(emphasized, ms_to_samples(config.frame_ms, signal.sample_rate),
                    ms_to_samples(config.hop_ms, signal.sample_rate), true);
  if (config.deltas && frames.size() < 5) {
    std::ostringstream os;
    os << "signal yields " << frames.size() << " frames; deltas need at least 5";
    throw InputError(os.str());
  }

  const MelFilterbank bank = build_mel_filterbank(config, signal.sample_rate);
  const std::size_t frame_len = frames.front().samples.size();
  const auto window = make_window(config.window, frame_len);
  const RadialWeights global_weights(config.radius, frame_len);

  FeatureMatrix statics(frames.size(), config.n_ceps);
  parallel_for(frames.size(), threads, [&](std::size_t i) {
    std::vector<double> windowed(frame_len);
    for (std::size_t n = 0; n < frame_len; ++n) windowed[n] = frames[i].samples[n] * window[n];
    std::vector<double> ceps;
    if (config.adaptive_radius) {
      const double r = adaptive_radius_for(windowed, config);
      ceps = cepstrum_of_weighted(RadialWeights(r, frame_len).apply(windowed), r, bank, config);
    } else {
      ceps = cepstrum_of_weighted(global_weights.apply(windowed), config.radius, bank, config);
    }
    std::copy(ceps.begin(), ceps.end(), statics.row(i).begin());
  });

  statics.metadata.config = config;
  statics.metadata.config.deltas = false;
  statics.metadata.sample_rate = signal.sample_rate;
  statics.metadata.source = std::move(source);
  statics.metadata.padded_frames = frames.back().padded ? 1 : 0;
  return config.deltas ? add_deltas(statics) : statics;
}

}  // namespace chirpmfcc
