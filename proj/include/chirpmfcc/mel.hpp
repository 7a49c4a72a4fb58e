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

// MFCC and chirp MFCC: mel filterbank, log compression, orthonormal DCT-II
// and regression deltas.

#ifndef CHIRPMFCC_MEL_HPP_
#define CHIRPMFCC_MEL_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "chirpmfcc/signal.hpp"

namespace chirpmfcc {

enum class SpectrumScale { kMagnitude, kPower };

std::string_view to_string(SpectrumScale scale);

struct CepstralConfig {
  std::size_t n_filters = 26;
  std::size_t n_ceps = 13;  // c0 .. c(n_ceps-1)
  double frame_ms = 20.0;
  double hop_ms = 10.0;
  std::size_t n_fft = 512;
  double radius = 1.0;  // 1.0 selects vanilla MFCC
  double log_floor = 1e-10;
  WindowKind window = WindowKind::kHamming;
  double f_min = 0.0;
  double f_max = 0.0;  // <= 0 means Nyquist
  SpectrumScale scale = SpectrumScale::kMagnitude;
  double preemphasis = 0.0;
  bool deltas = true;
  // Experimental: per-frame radius from the largest LPC pole, clamped into
  // [0.990, 0.999]. Off by default.
  bool adaptive_radius = false;
  std::size_t adaptive_lpc_order = 20;

  double resolved_f_max(int sample_rate) const;
  // Throws InputError naming the offending field.
  void validate(int sample_rate) const;
};

double hz_to_mel(double hz);
double mel_to_hz(double mel);

// Triangular, height-normalized filters over the half spectrum.
class MelFilterbank {
 public:
  MelFilterbank(std::size_t n_filters, std::size_t n_fft, int sample_rate, double f_min,
                double f_max);

  std::size_t n_filters() const { return n_filters_; }
  std::size_t n_bins() const { return n_bins_; }
  int sample_rate() const { return sample_rate_; }
  double f_min() const { return f_min_; }
  double f_max() const { return f_max_; }

  std::span<const double> weights(std::size_t filter) const;
  // Center frequencies in Hz, strictly increasing.
  const std::vector<double>& centers_hz() const { return centers_hz_; }
  // Filter edges: n_filters + 2 points, equally spaced in mel.
  const std::vector<double>& edges_hz() const { return edges_hz_; }

  // energies[m] = sum_k weights(m)[k] * spectrum[k].
  std::vector<double> apply(std::span<const double> spectrum) const;

 private:
  std::size_t n_filters_;
  std::size_t n_bins_;
  int sample_rate_;
  double f_min_;
  double f_max_;
  std::vector<double> weights_;  // n_filters x n_bins, row-major
  std::vector<double> centers_hz_;
  std::vector<double> edges_hz_;
};

MelFilterbank build_mel_filterbank(const CepstralConfig& config, int sample_rate);

std::vector<double> dct_ortho(std::span<const double> x);
std::vector<double> idct_ortho(std::span<const double> coeffs);

// Cepstrum of an already-windowed frame at radius config.radius. The frame is
// weighted by r^-n, transformed, mapped through the filterbank, floored,
// logged and DCT'd; c0..c(n_ceps-1) are returned.
std::vector<double> mfcc_frame(const Frame& frame, const MelFilterbank& bank,
                               const CepstralConfig& config);

// Same pipeline; requires config.radius in [0.9, 1.0]. At r = 1 it returns
// exactly what mfcc_frame returns.
std::vector<double> chirp_mfcc_frame(const Frame& frame, const MelFilterbank& bank,
                                     const CepstralConfig& config);

struct FeatureMetadata {
  CepstralConfig config;
  int sample_rate = kNominalSampleRate;
  std::string source;
  std::size_t padded_frames = 0;
};

// Row-major frames x coefficients. Columns are c*, then d* and a* when
// deltas were added.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  const std::vector<double>& data() const { return data_; }

  // "c0".."c12", then "d0".., "a0".. for delta/acceleration blocks.
  std::vector<std::string> column_names() const;
  bool has_deltas() const { return has_deltas_; }

  FeatureMetadata metadata;

 private:
  friend FeatureMatrix add_deltas(const FeatureMatrix& features);
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  bool has_deltas_ = false;
  std::vector<double> data_;
};

// Regression deltas over +-2 frames (denominator 10) with replicated edges;
// acceleration is the delta of the delta. Needs at least 5 frames.
FeatureMatrix add_deltas(const FeatureMatrix& features);

// frame -> window -> r^-n weight -> spectrum -> mel -> log -> DCT [-> deltas].
// Frames are processed on up to `threads` workers; output order is frame order.
FeatureMatrix extract(const SampledSignal& signal, const CepstralConfig& config,
                      std::string source = {}, unsigned threads = 1);

}  // namespace chirpmfcc

#endif  // CHIRPMFCC_MEL_HPP_
