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

// Signal ingestion, multi-pole synthesis, framing, windowing and the r^-n
// exponential weighting that turns a DFT into a fixed-radius chirp spectrum.

#ifndef CHIRPMFCC_SIGNAL_HPP_
#define CHIRPMFCC_SIGNAL_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chirpmfcc {

inline constexpr int kNominalSampleRate = 16000;

// Smallest and largest analysis radius accepted anywhere in the library.
inline constexpr double kMinRadius = 0.9;
inline constexpr double kMaxRadius = 1.0;

// Mono sample sequence. Samples are non-empty and finite; sample_rate > 0.
struct SampledSignal {
  std::vector<double> samples;
  int sample_rate = kNominalSampleRate;

  // Throws InputError if the invariants do not hold.
  void validate() const;
};

// One damped cosine component a^k cos(omega k + phi).
struct PoleSpec {
  double radius = 1.0;  // (0, 1]
  double omega = 0.0;   // radians/sample, (0, pi)
  double phi = 0.0;     // radians, (-pi, pi]

  void validate() const;
};

struct Frame {
  std::vector<double> samples;
  std::size_t index = 0;
  std::size_t origin_offset = 0;  // in samples, relative to the signal start
  bool padded = false;            // true if the tail was zero-filled
};

enum class WindowKind { kRectangular, kHamming, kHann };

std::string_view to_string(WindowKind kind);
// Accepts "rectangular" (or "rect"), "hamming", "hann". Throws InputError.
WindowKind parse_window_kind(std::string_view name);

// --- WAV (RIFF, PCM 16-bit, mono) ---

SampledSignal load_wav(const std::filesystem::path& path);
SampledSignal decode_wav(std::span<const std::uint8_t> bytes);
// Samples are clamped to [-1, 1) and quantized to 16 bits.
std::vector<std::uint8_t> encode_wav(const SampledSignal& signal);
void save_wav(const std::filesystem::path& path, const SampledSignal& signal);

// --- synthesis ---

// samples[k] = sum_i a_i^k cos(omega_i k + phi_i), k = 0..n-1.
SampledSignal synth_multipole(std::span<const PoleSpec> poles, std::size_t n,
                              int sample_rate = kNominalSampleRate);

// Output of the all-pole filter whose poles are the conjugate pairs
// radius * e^{+-j omega} of each PoleSpec (phi is ignored), driven by
// `excitation`. Every component of the output is a damped cosine of the
// same radius and angle, re-excited at each nonzero input sample.
SampledSignal synth_all_pole(std::span<const PoleSpec> poles,
                             std::span<const double> excitation,
                             int sample_rate = kNominalSampleRate);

// Unit impulses at 0, period, 2*period, ...
std::vector<double> pulse_train(std::size_t n, std::size_t period);

// --- framing ---

std::size_t ms_to_samples(double ms, int sample_rate);

// Frames at offsets 0, hop, 2*hop, ... while a full frame fits. If
// pad_last is set and the next hop offset still starts inside the signal,
// one more zero-padded frame is emitted and flagged.
std::vector<Frame> frame_signal(const SampledSignal& signal, double frame_ms,
                                double hop_ms, bool pad_last = true);
std::vector<Frame> frame_samples(std::span<const double> samples,
                                 std::size_t frame_len, std::size_t hop,
                                 bool pad_last = true);

// --- windowing ---

// Symmetric windows (the endpoints of hann are exactly 0).
std::vector<double> make_window(WindowKind kind, std::size_t length);
Frame apply_window(const Frame& frame, WindowKind kind);

// First-order pre-emphasis y[n] = x[n] - alpha * x[n-1]. alpha = 0 is a no-op.
std::vector<double> preemphasize(std::span<const double> samples, double alpha);

// --- exponential weighting ---

// Throws InputError("radius out of supported range") outside [0.9, 1.0].
void check_radius(double r);

// Precomputed r^-k, k = 0..length-1, by repeated multiplication. Built once
// per configuration and shared read-only across frames and threads.
class RadialWeights {
 public:
  RadialWeights(double radius, std::size_t length);

  double radius() const { return radius_; }
  std::size_t size() const { return weights_.size(); }
  std::span<const double> values() const { return weights_; }

  // out[k] = in[k] * r^-k. Requires in.size() <= size().
  std::vector<double> apply(std::span<const double> in) const;

 private:
  // Range-unchecked constructor for the phase lab's wider radius grid.
  struct Unchecked {};
  RadialWeights(Unchecked, double radius, std::size_t length);
  friend RadialWeights make_lab_weights(double radius, std::size_t length);

  double radius_;
  std::vector<double> weights_;
};

// Same weights without the [0.9, 1.0] operating-range check; the phase-error
// lab sweeps radii down to 0.6 on short synthetic frames. Requires r > 0.
RadialWeights make_lab_weights(double radius, std::size_t length);

std::vector<double> exp_weight(std::span<const double> samples, double r);
Frame exp_weight(const Frame& frame, double r);

}  // namespace chirpmfcc

#endif  // CHIRPMFCC_SIGNAL_HPP_
