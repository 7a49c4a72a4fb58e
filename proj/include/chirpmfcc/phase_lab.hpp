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

// Multi-pole phase-error study: synthesize four-pole scenarios, sweep the
// analysis radius, locate the radius of minimum total phase error and
// summarize its offset from the largest pole radius.

#ifndef CHIRPMFCC_PHASE_LAB_HPP_
#define CHIRPMFCC_PHASE_LAB_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "chirpmfcc/signal.hpp"

namespace chirpmfcc {

inline constexpr std::size_t kDefaultLabLength = 320;
inline constexpr double kAnalysisStep = 0.005;
inline constexpr double kScenarioStep = 0.05;

enum class CaseId { k1a, k1b, k2a, k2b, k3a, k3b };
enum class Proximity { kFarApart, kClose };

std::string_view to_string(CaseId id);
std::string_view to_string(Proximity p);
// "1a".."3b"; throws InputError("invalid case id ...").
CaseId parse_case_id(std::string_view text);
const std::array<CaseId, 6>& all_cases();

// Pole angles for one placement case. Case 1x: two angles below pi/2 and two
// above; 2x: all four below pi/2; 3x: all four above.
struct CaseSpec {
  CaseId id = CaseId::k2a;
  Proximity proximity = Proximity::kFarApart;
  std::vector<double> angles;

  // Default layouts. Far-apart cases spread the poles evenly across their
  // band; close cases pack them 8 bins apart. Every angle is a bin center of
  // a 320-point DFT (multiples of pi/160).
  static CaseSpec standard(CaseId id);
  void validate() const;
};

struct Scenario {
  std::size_t index = 0;
  std::vector<PoleSpec> poles;
  std::size_t length = kDefaultLabLength;

  double max_radius() const;
  SampledSignal signal() const;
};

// lo, lo+step, ..., hi (inclusive within 1e-9), each rounded to 1e-9.
std::vector<double> make_grid(double lo, double hi, double step);
// {0.75, 0.80, 0.85, 0.90, 0.95}
std::vector<double> default_scenario_radii();
// 0.605 .. 0.995 in steps of 0.005 (the open interval (0.6, 1)).
std::vector<double> default_analysis_grid();

struct ScenarioOptions {
  std::size_t length = kDefaultLabLength;
  bool random_phase = false;  // phi_i ~ U(-pi, pi] instead of 0
  std::uint64_t seed = 0;
};

// Cartesian product of `radii` over the case's poles, in lexicographic order
// (first pole varies slowest). Count = radii.size() ^ poles.
std::vector<Scenario> enumerate_scenarios(const CaseSpec& spec, std::span<const double> radii,
                                          const ScenarioOptions& options = {});

// kAbsolute sums |wrap(phi_p - phi_c)|; kSigned is the literal signed sum and
// only exists for comparison.
enum class ErrorAggregation { kAbsolute, kSigned };

// Phase error at every pole angle of the scenario, analysed at radius r_c in
// (0.6, 1].
double total_phase_error(const Scenario& scenario, double r_c,
                         ErrorAggregation aggregation = ErrorAggregation::kAbsolute);

struct SweepResult {
  std::size_t scenario_index = 0;
  double a_max = 0.0;
  double r_cmin = 0.0;
  double min_error = 0.0;
  double delta = 0.0;  // r_cmin - a_max, rounded to 1e-9
  std::vector<double> grid;
  std::vector<double> errors;  // one per grid point
};

// Argmin over `grid` (ascending). Ties within 1e-12 go to the smaller radius.
SweepResult find_rcmin(const Scenario& scenario, std::span<const double> grid,
                       ErrorAggregation aggregation = ErrorAggregation::kAbsolute);

struct DeltaStats {
  double step = kAnalysisStep;
  std::size_t scenarios = 0;
  std::size_t zero = 0;        // delta == 0
  std::size_t one_step = 0;    // delta == step
  std::size_t above_step = 0;  // delta > step
  std::size_t negative = 0;    // delta < 0
  double max_delta = 0.0;
  double min_delta = 0.0;

  double fraction_zero() const;
  double fraction_one_step() const;
  double fraction_above_step() const;
  double fraction_negative() const;
};

DeltaStats delta_stats(std::span<const SweepResult> results, double step = kAnalysisStep);
DeltaStats pool(std::span<const DeltaStats> parts);

struct SweepOptions {
  ScenarioOptions scenario;
  ErrorAggregation aggregation = ErrorAggregation::kAbsolute;
  unsigned threads = 1;
};

struct CaseSweep {
  CaseSpec spec;
  std::vector<Scenario> scenarios;
  std::vector<SweepResult> results;  // indexed like scenarios
  DeltaStats stats;
};

CaseSweep sweep_report(const CaseSpec& spec, std::span<const double> scenario_radii,
                       std::span<const double> analysis_grid, const SweepOptions& options = {});

}  // namespace chirpmfcc

#endif  // CHIRPMFCC_PHASE_LAB_HPP_
