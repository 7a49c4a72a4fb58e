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

#ifndef CHIRPMFCC_SPECTRUM_HPP_
#define CHIRPMFCC_SPECTRUM_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "chirpmfcc/signal.hpp"

namespace chirpmfcc {

using Complex = std::complex<double>;

// Half spectrum (n_fft/2 + 1 bins) of a real sequence evaluated on the circle
// |z| = radius. Bin k sits at omega = 2*pi*k / n_fft.
struct ComplexSpectrum {
  std::vector<Complex> bins;
  double radius = 1.0;
  std::size_t n_fft = 0;

  double bin_spacing() const;
  double omega(std::size_t k) const { return bin_spacing() * static_cast<double>(k); }
};

// In-place forward transform X[k] = sum_n x[n] e^{-j 2 pi k n / N}. Radix-2 for
// power-of-two sizes, direct summation otherwise.
void fft_inplace(std::vector<Complex>& data);

// Plain DFT of a real sequence zero-padded to n_fft. The spectrum is tagged
// with `radius_tag`; no weighting is applied here.
ComplexSpectrum dft(std::span<const double> x, std::size_t n_fft, double radius_tag = 1.0);

// DFT of the r^-n weighted, zero-padded frame. Shares the dft() code path so
// chirp_spectrum(f, r, n) == dft(exp_weight(f, r), n) exactly.
ComplexSpectrum chirp_spectrum(std::span<const double> frame, double r, std::size_t n_fft);
ComplexSpectrum chirp_spectrum(const Frame& frame, double r, std::size_t n_fft);

// All n_fft bins, reconstructed from conjugate symmetry.
std::vector<Complex> full_spectrum(const ComplexSpectrum& spectrum);

std::vector<double> magnitude_spectrum(const ComplexSpectrum& spectrum);
std::vector<double> power_spectrum(const ComplexSpectrum& spectrum);

// kInitialPhase reports +phi for cos(omega n + phi) (the argument of the DTFT,
// atan2(-S, C) with S = sum x sin, C = sum x cos). kLiteralArctan is the bare
// atan2(S, C) arrangement, which reports -phi for the same input.
enum class PhaseConvention { kInitialPhase, kLiteralArctan };

// Reduces an angle into (-pi, pi].
double wrap_angle(double radians);

// Single-frequency evaluation of sum_n x[n] e^{-j omega n} against a
// precomputed cos/sin table. Reusable across radii and signals of the same
// length.
class DtftProbe {
 public:
  DtftProbe(double omega, std::size_t length);

  double omega() const { return omega_; }
  std::size_t size() const { return cos_.size(); }

  // sum_n x[n] w[n] e^{-j omega n}; x and w must match size().
  Complex evaluate(std::span<const double> x, std::span<const double> w) const;
  Complex evaluate(std::span<const double> x) const;

 private:
  double omega_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

double phase_of(Complex value, PhaseConvention convention = PhaseConvention::kInitialPhase);

// Phase of the chirp spectrum of `frame` at radius r and frequency omega in
// (0, pi). Evaluated exactly (no bin interpolation).
double phase_at(std::span<const double> frame, double r, double omega,
                PhaseConvention convention = PhaseConvention::kInitialPhase);

}  // namespace chirpmfcc

#endif  // CHIRPMFCC_SPECTRUM_HPP_
