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

#include "chirpmfcc/signal.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "chirpmfcc/error.hpp"

namespace chirpmfcc {

void SampledSignal::validate() const {
  if (sample_rate <= 0) throw InputError("sample rate must be positive");
  if (samples.empty()) throw InputError("signal has no samples");
  for (double s : samples) {
    if (!std::isfinite(s)) throw InputError("signal contains non-finite samples");
  }
}

void PoleSpec::validate() const {
  if (!(radius > 0.0 && radius <= 1.0)) {
    std::ostringstream os;
    os << "pole radius " << radius << " outside (0, 1]";
    throw InputError(os.str());
  }
  if (!(omega > 0.0 && omega < std::numbers::pi)) {
    std::ostringstream os;
    os << "pole angle " << omega << " outside (0, pi)";
    throw InputError(os.str());
  }
  if (!std::isfinite(phi)) throw InputError("pole phase must be finite");
}

std::string_view to_string(WindowKind kind) {
  switch (kind) {
    case WindowKind::kRectangular: return "rectangular";
    case WindowKind::kHamming: return "hamming";
    case WindowKind::kHann: return "hann";
  }
  return "unknown";
}

WindowKind parse_window_kind(std::string_view name) {
  if (name == "rectangular" || name == "rect") return WindowKind::kRectangular;
  if (name == "hamming") return WindowKind::kHamming;
  if (name == "hann") return WindowKind::kHann;
  throw InputError("unknown window kind '" + std::string(name) + "'");
}

SampledSignal synth_multipole(std::span<const PoleSpec> poles, std::size_t n,
                              int sample_rate) {
  if (poles.empty()) throw InputError("pole list is empty");
  if (n == 0) throw InputError("sample count must be at least 1");
  if (sample_rate <= 0) throw InputError("sample rate must be positive");
  for (const auto& p : poles) p.validate();

  SampledSignal out;
  out.sample_rate = sample_rate;
  out.samples.assign(n, 0.0);
  for (const auto& p : poles) {
    double envelope = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      out.samples[k] += envelope * std::cos(p.omega * static_cast<double>(k) + p.phi);
      envelope *= p.radius;
    }
  }
  return out;
}

SampledSignal synth_all_pole(std::span<const PoleSpec> poles,
                             std::span<const double> excitation, int sample_rate) {
  if (poles.empty()) throw InputError("pole list is empty");
  if (excitation.empty()) throw InputError("excitation is empty");
  if (sample_rate <= 0) throw InputError("sample rate must be positive");

  // Denominator 1 + sum_k den[k] z^-k as the product of the second-order
  // sections 1 - 2 a cos(w) z^-1 + a^2 z^-2.
  std::vector<double> den{1.0};
  for (const auto& p : poles) {
    p.validate();
    const double section[3] = {1.0, -2.0 * p.radius * std::cos(p.omega), p.radius * p.radius};
    std::vector<double> next(den.size() + 2, 0.0);
    for (std::size_t i = 0; i < den.size(); ++i) {
      for (std::size_t j = 0; j < 3; ++j) next[i + j] += den[i] * section[j];
    }
    den = std::move(next);
  }

  SampledSignal out;
  out.sample_rate = sample_rate;
  out.samples.assign(excitation.size(), 0.0);
  for (std::size_t n = 0; n < excitation.size(); ++n) {
    double y = excitation[n];
    for (std::size_t k = 1; k < den.size() && k <= n; ++k) y -= den[k] * out.samples[n - k];
    out.samples[n] = y;
  }
  return out;
}

std::vector<double> pulse_train(std::size_t n, std::size_t period) {
  if (period == 0) throw InputError("pulse period must be positive");
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < n; k += period) out[k] = 1.0;
  return out;
}

std::size_t ms_to_samples(double ms, int sample_rate) {
  if (!(ms > 0.0)) throw InputError("duration in ms must be positive");
  const double exact = ms * sample_rate / 1000.0;
  const auto rounded = static_cast<std::size_t>(std::llround(exact));
  if (rounded == 0) throw InputError("duration shorter than one sample");
  return rounded;
}

std::vector<Frame> frame_samples(std::span<const double> samples,
                                 std::size_t frame_len, std::size_t hop,
                                 bool pad_last) {
  if (frame_len == 0 || hop == 0) throw InputError("frame and hop must be positive");
  if (hop > frame_len) throw InputError("hop must not exceed frame length");
  if (samples.empty()) throw InputError("signal has no samples");
  if (samples.size() < frame_len && !pad_last) {
    throw InputError("frame longer than signal and padding disabled");
  }

  std::vector<Frame> frames;
  std::size_t offset = 0;
  for (; offset + frame_len <= samples.size(); offset += hop) {
    Frame f;
    f.index = frames.size();
    f.origin_offset = offset;
    f.samples.assign(samples.begin() + offset, samples.begin() + offset + frame_len);
    frames.push_back(std::move(f));
  }
  if (pad_last && offset < samples.size()) {
    Frame f;
    f.index = frames.size();
    f.origin_offset = offset;
    f.padded = true;
    f.samples.assign(frame_len, 0.0);
    std::copy(samples.begin() + offset, samples.end(), f.samples.begin());
    frames.push_back(std::move(f));
  }
  return frames;
}

std::vector<Frame> frame_signal(const SampledSignal& signal, double frame_ms,
                                double hop_ms, bool pad_last) {
  if (!(hop_ms > 0.0) || frame_ms < hop_ms) {
    throw InputError("framing requires frame_ms >= hop_ms > 0");
  }
  return frame_samples(signal.samples, ms_to_samples(frame_ms, signal.sample_rate),
                       ms_to_samples(hop_ms, signal.sample_rate), pad_last);
}

std::vector<double> make_window(WindowKind kind, std::size_t length) {
  std::vector<double> w(length, 1.0);
  if (kind == WindowKind::kRectangular || length < 2) return w;
  const double denom = static_cast<double>(length - 1);
  const double a0 = kind == WindowKind::kHamming ? 0.54 : 0.5;
  const double a1 = 1.0 - a0;
  for (std::size_t n = 0; n < length; ++n) {
    w[n] = a0 - a1 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) / denom);
  }
  if (kind == WindowKind::kHann) {
    w.front() = 0.0;
    w.back() = 0.0;
  }
  return w;
}

Frame apply_window(const Frame& frame, WindowKind kind) {
  Frame out = frame;
  if (kind == WindowKind::kRectangular) return out;
  const auto w = make_window(kind, frame.samples.size());
  for (std::size_t n = 0; n < w.size(); ++n) out.samples[n] *= w[n];
  return out;
}

std::vector<double> preemphasize(std::span<const double> samples, double alpha) {
  std::vector<double> out(samples.begin(), samples.end());
  if (alpha == 0.0) return out;
  for (std::size_t n = out.size(); n-- > 1;) out[n] -= alpha * samples[n - 1];
  return out;
}

void check_radius(double r) {
  if (!(r >= kMinRadius && r <= kMaxRadius)) {
    std::ostringstream os;
    os << "radius out of supported range: " << r << " not in [" << kMinRadius
       << ", " << kMaxRadius << "]";
    throw InputError(os.str());
  }
}

RadialWeights::RadialWeights(double radius, std::size_t length)
    : RadialWeights(Unchecked{}, (check_radius(radius), radius), length) {}

RadialWeights::RadialWeights(Unchecked, double radius, std::size_t length)
    : radius_(radius), weights_(length) {
  const double growth = 1.0 / radius;
  double w = 1.0;
  for (auto& v : weights_) {
    v = w;
    w *= growth;
  }
}

RadialWeights make_lab_weights(double radius, std::size_t length) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InputError("analysis radius must be positive");
  }
  return RadialWeights(RadialWeights::Unchecked{}, radius, length);
}

std::vector<double> RadialWeights::apply(std::span<const double> in) const {
  if (in.size() > weights_.size()) {
    throw std::logic_error("RadialWeights::apply: input longer than weight table");
  }
  std::vector<double> out(in.size());
  for (std::size_t k = 0; k < in.size(); ++k) out[k] = in[k] * weights_[k];
  return out;
}

std::vector<double> exp_weight(std::span<const double> samples, double r) {
  return RadialWeights(r, samples.size()).apply(samples);
}

Frame exp_weight(const Frame& frame, double r) {
  Frame out = frame;
  out.samples = exp_weight(frame.samples, r);
  return out;
}

}  // namespace chirpmfcc
