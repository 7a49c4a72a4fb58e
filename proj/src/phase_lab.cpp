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

#include "chirpmfcc/phase_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "chirpmfcc/error.hpp"
#include "chirpmfcc/parallel.hpp"
#include "chirpmfcc/spectrum.hpp"

namespace chirpmfcc {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBin = kPi / 160.0;  // bin spacing of a 320-point DFT
constexpr double kTieTolerance = 1e-12;
constexpr double kDeltaTolerance = 1e-9;

double round9(double v) { return std::round(v * 1e9) / 1e9; }

void check_analysis_radius(double r_c) {
  if (!(r_c > 0.6 && r_c <= 1.0)) {
    std::ostringstream os;
    os << "analysis radius " << r_c << " outside (0.6, 1]";
    throw InputError(os.str());
  }
}

// Probes at each pole angle and weights at each analysis radius, built once
// and shared by every scenario of a case.
class PhaseErrorEvaluator {
 public:
  PhaseErrorEvaluator(std::span<const double> angles, std::span<const double> grid,
                      std::size_t length) {
    for (double w : angles) probes_.emplace_back(w, length);
    for (double r : grid) {
      check_analysis_radius(r);
      weights_.push_back(make_lab_weights(r, length));
    }
  }

  std::size_t grid_size() const { return weights_.size(); }

  double error(std::span<const double> signal, std::span<const PoleSpec> poles,
               std::size_t grid_index, ErrorAggregation aggregation) const {
    const auto w = weights_[grid_index].values();
    double total = 0.0;
    for (std::size_t i = 0; i < probes_.size(); ++i) {
      const double estimated = phase_of(probes_[i].evaluate(signal, w));
      const double diff = wrap_angle(poles[i].phi - estimated);
      total += aggregation == ErrorAggregation::kAbsolute ? std::abs(diff) : diff;
    }
    return total;
  }

 private:
  std::vector<DtftProbe> probes_;
  std::vector<RadialWeights> weights_;
};

std::vector<double> angles_of(const Scenario& s) {
  std::vector<double> out;
  for (const auto& p : s.poles) out.push_back(p.omega);
  return out;
}

SweepResult sweep_one(const Scenario& scenario, std::span<const double> grid,
                      const PhaseErrorEvaluator& eval, ErrorAggregation aggregation) {
  const auto signal = scenario.signal();
  SweepResult res;
  res.scenario_index = scenario.index;
  res.a_max = scenario.max_radius();
  res.grid.assign(grid.begin(), grid.end());
  res.errors.resize(grid.size());
  std::size_t best = 0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    res.errors[g] = eval.error(signal.samples, scenario.poles, g, aggregation);
    if (!std::isfinite(res.errors[g])) throw NumericError("phase error is not finite");
    if (res.errors[g] < res.errors[best] - kTieTolerance) best = g;
  }
  res.r_cmin = grid[best];
  res.min_error = res.errors[best];
  res.delta = round9(res.r_cmin - res.a_max);
  return res;
}

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw InputError("analysis grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw InputError("analysis grid must be strictly ascending");
  }
}

}  // namespace

std::string_view to_string(CaseId id) {
  switch (id) {
    case CaseId::k1a: return "1a";
    case CaseId::k1b: return "1b";
    case CaseId::k2a: return "2a";
    case CaseId::k2b: return "2b";
    case CaseId::k3a: return "3a";
    case CaseId::k3b: return "3b";
  }
  return "?";
}

std::string_view to_string(Proximity p) {
  return p == Proximity::kClose ? "close" : "far-apart";
}

CaseId parse_case_id(std::string_view text) {
  for (CaseId id : all_cases()) {
    if (to_string(id) == text) return id;
  }
  throw InputError("invalid case id '" + std::string(text) + "' (expected 1a, 1b, 2a, 2b, 3a or 3b)");
}

const std::array<CaseId, 6>& all_cases() {
  static constexpr std::array<CaseId, 6> kAll = {CaseId::k1a, CaseId::k1b, CaseId::k2a,
                                                 CaseId::k2b, CaseId::k3a, CaseId::k3b};
  return kAll;
}

CaseSpec CaseSpec::standard(CaseId id) {
  CaseSpec spec;
  spec.id = id;
  switch (id) {
    case CaseId::k1a:
      spec.angles = {kPi / 5, 2 * kPi / 5, 3 * kPi / 5, 4 * kPi / 5};
      break;
    case CaseId::k1b:
      spec.angles = {36 * kBin, 44 * kBin, 116 * kBin, 124 * kBin};
      break;
    case CaseId::k2a:
      spec.angles = {kPi / 10, 2 * kPi / 10, 3 * kPi / 10, 4 * kPi / 10};
      break;
    case CaseId::k2b:
      spec.angles = {28 * kBin, 36 * kBin, 44 * kBin, 52 * kBin};
      break;
    case CaseId::k3a:
      spec.angles = {kPi / 2 + kPi / 10, kPi / 2 + 2 * kPi / 10, kPi / 2 + 3 * kPi / 10,
                     kPi / 2 + 4 * kPi / 10};
      break;
    case CaseId::k3b:
      spec.angles = {108 * kBin, 116 * kBin, 124 * kBin, 132 * kBin};
      break;
  }
  spec.proximity = (id == CaseId::k1b || id == CaseId::k2b || id == CaseId::k3b)
                       ? Proximity::kClose
                       : Proximity::kFarApart;
  return spec;
}

void CaseSpec::validate() const {
  if (angles.empty()) throw InputError("case has no pole angles");
  std::size_t low = 0;
  for (double w : angles) {
    if (!(w > 0.0 && w < kPi)) {
      std::ostringstream os;
      os << "pole angle " << w << " outside (0, pi)";
      throw InputError(os.str());
    }
    if (w < kPi / 2) ++low;
  }
  const std::size_t high = angles.size() - low;
  const bool ok = (id == CaseId::k1a || id == CaseId::k1b) ? (low == high)
                  : (id == CaseId::k2a || id == CaseId::k2b) ? (high == 0)
                                                               : (low == 0);
  if (!ok) {
    throw InputError("angles do not match the band layout of case " + std::string(to_string(id)));
  }
}

double Scenario::max_radius() const {
  double m = 0.0;
  for (const auto& p : poles) m = std::max(m, p.radius);
  return m;
}

SampledSignal Scenario::signal() const { return synth_multipole(poles, length); }

std::vector<double> make_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(lo <= hi)) throw InputError("grid needs lo <= hi and step > 0");
  std::vector<double> out;
  for (std::size_t i = 0;; ++i) {
    const double v = lo + step * static_cast<double>(i);
    if (v > hi + 1e-9) break;
    out.push_back(round9(v));
  }
  return out;
}

std::vector<double> default_scenario_radii() { return make_grid(0.75, 0.95, kScenarioStep); }

std::vector<double> default_analysis_grid() { return make_grid(0.605, 0.995, kAnalysisStep); }

std::vector<Scenario> enumerate_scenarios(const CaseSpec& spec, std::span<const double> radii,
                                          const ScenarioOptions& options) {
  spec.validate();
  if (radii.empty()) throw InputError("scenario radius grid is empty");
  for (double a : radii) {
    if (!(a > 0.0 && a <= 1.0)) throw InputError("scenario radii must lie in (0, 1]");
  }
  if (options.length == 0) throw InputError("scenario length must be positive");

  const std::size_t poles = spec.angles.size();
  std::size_t count = 1;
  for (std::size_t i = 0; i < poles; ++i) count *= radii.size();

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> phase(-kPi, kPi);

  std::vector<Scenario> out;
  out.reserve(count);
  std::vector<std::size_t> digits(poles, 0);
  for (std::size_t s = 0; s < count; ++s) {
    Scenario sc;
    sc.index = s;
    sc.length = options.length;
    for (std::size_t i = 0; i < poles; ++i) {
      PoleSpec p{radii[digits[i]], spec.angles[i], 0.0};
      if (options.random_phase) p.phi = wrap_angle(phase(rng));
      sc.poles.push_back(p);
    }
    out.push_back(std::move(sc));
    for (std::size_t i = poles; i-- > 0;) {
      if (++digits[i] < radii.size()) break;
      digits[i] = 0;
    }
  }
  return out;
}

double total_phase_error(const Scenario& scenario, double r_c, ErrorAggregation aggregation) {
  check_analysis_radius(r_c);
  const double grid[1] = {r_c};
  const PhaseErrorEvaluator eval(angles_of(scenario), grid, scenario.length);
  return eval.error(scenario.signal().samples, scenario.poles, 0, aggregation);
}

SweepResult find_rcmin(const Scenario& scenario, std::span<const double> grid,
                       ErrorAggregation aggregation) {
  check_grid(grid);
  const PhaseErrorEvaluator eval(angles_of(scenario), grid, scenario.length);
  return sweep_one(scenario, grid, eval, aggregation);
}

double DeltaStats::fraction_zero() const {
  return scenarios ? static_cast<double>(zero) / static_cast<double>(scenarios) : 0.0;
}
double DeltaStats::fraction_one_step() const {
  return scenarios ? static_cast<double>(one_step) / static_cast<double>(scenarios) : 0.0;
}
double DeltaStats::fraction_above_step() const {
  return scenarios ? static_cast<double>(above_step) / static_cast<double>(scenarios) : 0.0;
}
double DeltaStats::fraction_negative() const {
  return scenarios ? static_cast<double>(negative) / static_cast<double>(scenarios) : 0.0;
}

DeltaStats delta_stats(std::span<const SweepResult> results, double step) {
  DeltaStats st;
  st.step = step;
  st.scenarios = results.size();
  bool first = true;
  for (const auto& r : results) {
    const double d = r.delta;
    if (std::abs(d) <= kDeltaTolerance) {
      ++st.zero;
    } else if (d < 0.0) {
      ++st.negative;
    } else if (std::abs(d - step) <= kDeltaTolerance) {
      ++st.one_step;
    } else {
      ++st.above_step;
    }
    st.max_delta = first ? d : std::max(st.max_delta, d);
    st.min_delta = first ? d : std::min(st.min_delta, d);
    first = false;
  }
  return st;
}

DeltaStats pool(std::span<const DeltaStats> parts) {
  DeltaStats st;
  bool first = true;
  for (const auto& p : parts) {
    if (p.scenarios == 0) continue;
    st.step = p.step;
    st.scenarios += p.scenarios;
    st.zero += p.zero;
    st.one_step += p.one_step;
    st.above_step += p.above_step;
    st.negative += p.negative;
    st.max_delta = first ? p.max_delta : std::max(st.max_delta, p.max_delta);
    st.min_delta = first ? p.min_delta : std::min(st.min_delta, p.min_delta);
    first = false;
  }
  return st;
}

CaseSweep sweep_report(const CaseSpec& spec, std::span<const double> scenario_radii,
                       std::span<const double> analysis_grid, const SweepOptions& options) {
  check_grid(analysis_grid);
  CaseSweep out;
  out.spec = spec;
  out.scenarios = enumerate_scenarios(spec, scenario_radii, options.scenario);
  const PhaseErrorEvaluator eval(spec.angles, analysis_grid, options.scenario.length);
  out.results.resize(out.scenarios.size());
  parallel_for(out.scenarios.size(), options.threads, [&](std::size_t i) {
    out.results[i] = sweep_one(out.scenarios[i], analysis_grid, eval, options.aggregation);
  });
  const double step = analysis_grid.size() > 1 ? round9(analysis_grid[1] - analysis_grid[0])
                                               : kAnalysisStep;
  out.stats = delta_stats(out.results, step);
  return out;
}

}  // namespace chirpmfcc
