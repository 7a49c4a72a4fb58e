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

#include "chirpmfcc/spectrum.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "chirpmfcc/error.hpp"

namespace chirpmfcc {
namespace {

void radix2(std::vector<Complex>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    // Twiddles from std::polar per index rather than a running product, so
    // error does not accumulate along a stage.
    for (std::size_t k = 0; k < half; ++k) {
      const Complex w = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) /
                                            static_cast<double>(len));
      for (std::size_t i = 0; i < n; i += len) {
        const Complex u = a[i + k];
        const Complex v = a[i + k + half] * w;
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
}

void direct_dft(std::vector<Complex>& a) {
  const std::size_t n = a.size();
  // One table of e^{-j 2 pi m / n}; k*t is reduced mod n so every angle is exact.
  std::vector<Complex> twiddle(n);
  for (std::size_t m = 0; m < n; ++m) {
    twiddle[m] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));
  }
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc{};
    std::size_t idx = 0;
    for (std::size_t t = 0; t < n; ++t) {
      acc += a[t] * twiddle[idx];
      idx += k;
      if (idx >= n) idx -= n;
    }
    out[k] = acc;
  }
  a = std::move(out);
}

}  // namespace

double ComplexSpectrum::bin_spacing() const {
  return 2.0 * std::numbers::pi / static_cast<double>(n_fft);
}

void fft_inplace(std::vector<Complex>& data) {
  if (data.size() <= 1) return;
  if (std::has_single_bit(data.size())) {
    radix2(data);
  } else {
    direct_dft(data);
  }
}

ComplexSpectrum dft(std::span<const double> x, std::size_t n_fft, double radius_tag) {
  if (n_fft == 0) throw InputError("n_fft must be positive");
  if (n_fft < x.size()) {
    std::ostringstream os;
    os << "n_fft " << n_fft << " is shorter than the frame (" << x.size() << " samples)";
    throw InputError(os.str());
  }
  std::vector<Complex> buf(n_fft);
  for (std::size_t n = 0; n < x.size(); ++n) buf[n] = x[n];
  fft_inplace(buf);
  buf.resize(n_fft / 2 + 1);
  return ComplexSpectrum{std::move(buf), radius_tag, n_fft};
}

ComplexSpectrum chirp_spectrum(std::span<const double> frame, double r, std::size_t n_fft) {
  check_radius(r);
  if (n_fft < frame.size()) {
    std::ostringstream os;
    os << "n_fft " << n_fft << " is shorter than the frame (" << frame.size() << " samples)";
    throw InputError(os.str());
  }
  return dft(exp_weight(frame, r), n_fft, r);
}

ComplexSpectrum chirp_spectrum(const Frame& frame, double r, std::size_t n_fft) {
  return chirp_spectrum(frame.samples, r, n_fft);
}

std::vector<Complex> full_spectrum(const ComplexSpectrum& spectrum) {
  const std::size_t n = spectrum.n_fft;
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < spectrum.bins.size() && k < n; ++k) out[k] = spectrum.bins[k];
  for (std::size_t k = spectrum.bins.size(); k < n; ++k) out[k] = std::conj(out[n - k]);
  return out;
}

std::vector<double> magnitude_spectrum(const ComplexSpectrum& spectrum) {
  std::vector<double> out(spectrum.bins.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::abs(spectrum.bins[k]);
  return out;
}

std::vector<double> power_spectrum(const ComplexSpectrum& spectrum) {
  std::vector<double> out(spectrum.bins.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::norm(spectrum.bins[k]);
  return out;
}

double wrap_angle(double radians) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double r = std::remainder(radians, kTwoPi);  // [-pi, pi]
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

DtftProbe::DtftProbe(double omega, std::size_t length)
    : omega_(omega), cos_(length), sin_(length) {
  for (std::size_t n = 0; n < length; ++n) {
    const double arg = omega * static_cast<double>(n);
    cos_[n] = std::cos(arg);
    sin_[n] = std::sin(arg);
  }
}

Complex DtftProbe::evaluate(std::span<const double> x, std::span<const double> w) const {
  if (x.size() != cos_.size() || w.size() != cos_.size()) {
    throw std::logic_error("DtftProbe::evaluate: length mismatch");
  }
  double c = 0.0;
  double s = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    const double v = x[n] * w[n];
    c += v * cos_[n];
    s += v * sin_[n];
  }
  return {c, -s};
}

Complex DtftProbe::evaluate(std::span<const double> x) const {
  if (x.size() != cos_.size()) throw std::logic_error("DtftProbe::evaluate: length mismatch");
  double c = 0.0;
  double s = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    c += x[n] * cos_[n];
    s += x[n] * sin_[n];
  }
  return {c, -s};
}

double phase_of(Complex value, PhaseConvention convention) {
  // value = C - jS.
  if (convention == PhaseConvention::kLiteralArctan) {
    return wrap_angle(std::atan2(-value.imag(), value.real()));
  }
  return wrap_angle(std::atan2(value.imag(), value.real()));
}

double phase_at(std::span<const double> frame, double r, double omega,
                PhaseConvention convention) {
  if (!(omega > 0.0 && omega < std::numbers::pi)) {
    std::ostringstream os;
    os << "frequency " << omega << " outside (0, pi)";
    throw InputError(os.str());
  }
  const RadialWeights weights(r, frame.size());
  return phase_of(DtftProbe(omega, frame.size()).evaluate(frame, weights.values()),
                  convention);
}

}  // namespace chirpmfcc
