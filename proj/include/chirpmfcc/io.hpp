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

// File formats. CSV files have a header row, '.' decimals, LF line endings
// and numbers in shortest round-trip form. JSON carries metadata and
// summary statistics. Layouts are documented in docs/formats.md.

#ifndef CHIRPMFCC_IO_HPP_
#define CHIRPMFCC_IO_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chirpmfcc/lpc.hpp"
#include "chirpmfcc/mel.hpp"
#include "chirpmfcc/phase_lab.hpp"
#include "chirpmfcc/pog.hpp"
#include "chirpmfcc/spectrum.hpp"

namespace chirpmfcc {

// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// --- features ---
std::string feature_csv(const FeatureMatrix& features);
std::string feature_json(const FeatureMatrix& features);

// --- spectrum ---
std::string spectrum_csv(const ComplexSpectrum& spectrum);

// --- pole analysis ---
std::string histogram_csv(const RadiusHistogram& hist);
std::string histogram_json(const RadiusHistogram& hist, const PoleAnalysisConfig& config,
                           const RadiusRecommendation& options, double recommended);

// --- phase lab ---
std::string sweep_csv(std::span<const CaseSweep> sweeps);
std::string error_curves_csv(std::span<const CaseSweep> sweeps);

struct SweepRunInfo {
  std::size_t length = kDefaultLabLength;
  std::vector<double> scenario_radii;
  std::vector<double> analysis_grid;
  bool random_phase = false;
  std::uint64_t seed = 0;
  ErrorAggregation aggregation = ErrorAggregation::kAbsolute;
};
std::string sweep_stats_json(std::span<const CaseSweep> sweeps, const SweepRunInfo& info);

// --- synthesis ---
struct SynthMetadata {
  std::vector<PoleSpec> poles;
  std::size_t length = 0;
  int sample_rate = kNominalSampleRate;
  double peak_scale = 1.0;   // factor applied to reach the target peak
  std::size_t pulse_period = 0;  // 0 = free decay (sum of damped cosines)
};
std::string synth_json(const SynthMetadata& meta);
SynthMetadata parse_synth_json(std::string_view text);

// --- POG ---
std::string overlap_csv(const OverlapMatrix& matrix);
std::string overlap_json(std::span<const OverlapMatrix> matrices);

// One real per line. Blank lines and lines starting with '#' are skipped;
// a trailing comma-separated remainder is ignored so single-column CSV works.
std::vector<double> parse_likelihoods(std::string_view text, std::string_view source_name);
std::vector<double> read_likelihoods(const std::filesystem::path& path);

// Manifest lines: tag,model,data,source. tag is "vanilla" or "chirp"; source
// is a path (relative to the manifest's directory) or gaussian:<mean>:<variance>.
// '#' comments, blank lines and an optional "tag,model,data,source" header are
// allowed. Errors quote the offending line number and text.
struct ManifestEntry {
  std::string tag;
  std::string model;
  std::string data;
  std::variant<std::filesystem::path, Gaussian1D> source;
  std::size_t line = 0;
};
std::vector<ManifestEntry> parse_manifest(std::string_view text,
                                          const std::filesystem::path& base_dir);

}  // namespace chirpmfcc

#endif  // CHIRPMFCC_IO_HPP_
