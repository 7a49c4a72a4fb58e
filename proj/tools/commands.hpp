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

// Subcommand implementations behind the chirpmfcc executable. Each returns
// the process exit code; InputError and NumericError escape to main().

#ifndef CHIRPMFCC_TOOLS_COMMANDS_HPP_
#define CHIRPMFCC_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "chirpmfcc/lpc.hpp"
#include "chirpmfcc/mel.hpp"

namespace chirpmfcc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumeric = 1;
inline constexpr int kExitInput = 2;

inline constexpr double kDefaultRadius = 0.997;

struct FeaturesArgs {
  std::vector<std::string> inputs;
  std::string out_dir = ".";
  std::string format = "csv";
  std::string window = "hamming";
  std::string spectrum = "magnitude";
  CepstralConfig config;
  bool no_deltas = false;
  unsigned threads = 0;
};

struct SpectrumArgs {
  std::string input;
  std::string out;
  double radius = kDefaultRadius;
  std::size_t n_fft = 512;
  double frame_ms = 20.0;
  double hop_ms = 10.0;
  std::size_t frame_index = 0;
  std::string window = "hamming";
};

struct PhaseSweepArgs {
  std::vector<std::string> cases;
  bool full = false;
  std::string radius_grid = "0.75:0.95:0.05";
  std::string analysis_grid = "0.605:0.995:0.005";
  std::size_t length = 320;
  bool random_phase = false;
  std::uint64_t seed = 0;
  bool signed_error = false;
  std::string out;
  std::string stats;
  std::string curves;
  unsigned threads = 0;
};

struct PoleHistArgs {
  std::vector<std::string> inputs;
  PoleAnalysisConfig config;
  std::string window = "hamming";
  RadiusRecommendation recommendation;
  std::string out;
  std::string json;
  unsigned threads = 0;
};

struct PogArgs {
  std::string manifest;
  std::string out_dir = ".";
  bool literal = false;
};

struct SynthArgs {
  std::vector<std::string> poles;
  std::size_t length = 16000;
  int rate = kNominalSampleRate;
  std::size_t pulse_period = 0;
  double peak = 0.99;
  std::string out;
  std::string meta;
};

int run_features(const FeaturesArgs& args);
int run_spectrum(const SpectrumArgs& args);
int run_phase_sweep(const PhaseSweepArgs& args);
int run_pole_hist(const PoleHistArgs& args);
int run_pog(const PogArgs& args);
int run_synth(const SynthArgs& args);

// "lo:hi:step" -> inclusive grid. Throws InputError.
std::vector<double> parse_grid(const std::string& text);
// "a:omega[:phi]" -> PoleSpec. Throws InputError.
PoleSpec parse_pole(const std::string& text);

}  // namespace chirpmfcc::cli

#endif  // CHIRPMFCC_TOOLS_COMMANDS_HPP_
