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

#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "chirpmfcc/error.hpp"
#include "chirpmfcc/io.hpp"
#include "chirpmfcc/phase_lab.hpp"
#include "chirpmfcc/pog.hpp"
#include "chirpmfcc/spectrum.hpp"

namespace fs = std::filesystem;

namespace chirpmfcc::cli {
namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double parse_number(const std::string& text, const std::string& what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw InputError("invalid " + what + ": '" + text + "'");
  }
  return v;
}

// Writes to `path`, or stdout when path is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

// Records the worst outcome of a batch: input errors outrank numeric ones.
struct BatchStatus {
  int code = kExitOk;
  std::size_t failed = 0;

  void fail(const std::string& item, const std::exception& e, int c) {
    std::cerr << "error: " << item << ": " << e.what() << "\n";
    ++failed;
    code = std::max(code, c);
  }
};

std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    const fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(p)) {
        auto ext = e.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
        if (e.is_regular_file() && ext == ".wav") found.push_back(e.path());
      }
      if (found.empty()) throw InputError("no .wav files in directory '" + p.string() + "'");
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(p);
    }
  }
  if (files.empty()) throw InputError("no input files");
  return files;
}

SpectrumScale parse_scale(const std::string& s) {
  if (s == "magnitude") return SpectrumScale::kMagnitude;
  if (s == "power") return SpectrumScale::kPower;
  throw InputError("invalid spectrum scale: '" + s + "' (magnitude|power)");
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw InputError("grid must be lo:hi:step, got '" + text + "'");
  return make_grid(parse_number(parts[0], "grid start"), parse_number(parts[1], "grid end"),
                   parse_number(parts[2], "grid step"));
}

PoleSpec parse_pole(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2 && parts.size() != 3) {
    throw InputError("pole must be radius:omega[:phi], got '" + text + "'");
  }
  PoleSpec p;
  p.radius = parse_number(parts[0], "pole radius");
  p.omega = parse_number(parts[1], "pole angle");
  if (parts.size() == 3) p.phi = parse_number(parts[2], "pole phase");
  p.validate();
  return p;
}

int run_features(const FeaturesArgs& args) {
  if (args.format != "csv" && args.format != "json") {
    throw InputError("invalid format: '" + args.format + "' (csv|json)");
  }
  CepstralConfig cfg = args.config;
  cfg.window = parse_window_kind(args.window);
  cfg.scale = parse_scale(args.spectrum);
  cfg.deltas = !args.no_deltas;
  cfg.validate(kNominalSampleRate);

  const auto files = expand_inputs(args.inputs);
  // Output names derive from the stem; refuse to let two inputs collide.
  std::set<std::string> stems;
  for (const auto& f : files) {
    if (!stems.insert(f.stem().string()).second) {
      throw InputError("two inputs share the output name '" + f.stem().string() + "'");
    }
  }
  if (!fs::is_directory(args.out_dir)) throw InputError("output directory does not exist: '" + args.out_dir + "'");

  BatchStatus status;
  for (const auto& f : files) {
    try {
      const auto signal = load_wav(f);
      const auto feats = extract(signal, cfg, f.string(), args.threads);
      const auto out = fs::path(args.out_dir) / (f.stem().string() + "." + args.format);
      write_text_file(out, args.format == "csv" ? feature_csv(feats) : feature_json(feats));
      std::cout << f.string() << " -> " << out.string() << " (" << feats.rows() << "x" << feats.cols() << ")\n";
    } catch (const InputError& e) {
      status.fail(f.string(), e, kExitInput);
    } catch (const NumericError& e) {
      status.fail(f.string(), e, kExitNumeric);
    }
  }
  if (status.failed > 0) {
    std::cerr << status.failed << " of " << files.size() << " file(s) failed\n";
  }
  return status.code;
}

int run_spectrum(const SpectrumArgs& args) {
  check_radius(args.radius);
  const auto window = parse_window_kind(args.window);
  const auto signal = load_wav(args.input);
  const auto frames = frame_signal(signal, args.frame_ms, args.hop_ms);
  if (args.frame_index >= frames.size()) {
    throw InputError("frame index " + std::to_string(args.frame_index) + " out of range (" +
                     std::to_string(frames.size()) + " frames)");
  }
  const auto frame = apply_window(frames[args.frame_index], window);
  emit(args.out, spectrum_csv(chirp_spectrum(frame, args.radius, args.n_fft)));
  return kExitOk;
}

int run_phase_sweep(const PhaseSweepArgs& args) {
  std::vector<CaseId> ids;
  if (args.full) {
    ids.assign(all_cases().begin(), all_cases().end());
  } else {
    if (args.cases.empty()) throw InputError("phase-sweep needs --case or --full");
    for (const auto& c : args.cases) {
      for (const auto& part : split(c, ',')) ids.push_back(parse_case_id(part));
    }
  }
  const auto radii = parse_grid(args.radius_grid);
  const auto grid = parse_grid(args.analysis_grid);
  if (grid.front() <= 0.6 || grid.back() > 1.0) {
    throw InputError("analysis grid must lie in (0.6, 1]");
  }
  for (double r : radii) {
    if (r <= 0.0 || r > 1.0) throw InputError("scenario radii must lie in (0, 1]");
  }
  if (args.length < 2) throw InputError("--length must be at least 2");

  SweepOptions opt;
  opt.scenario.length = args.length;
  opt.scenario.random_phase = args.random_phase;
  opt.scenario.seed = args.seed;
  opt.aggregation = args.signed_error ? ErrorAggregation::kSigned : ErrorAggregation::kAbsolute;
  opt.threads = args.threads;

  std::vector<CaseSweep> sweeps;
  for (CaseId id : ids) sweeps.push_back(sweep_report(CaseSpec::standard(id), radii, grid, opt));

  emit(args.out, sweep_csv(sweeps));
  SweepRunInfo info;
  info.length = args.length;
  info.scenario_radii = radii;
  info.analysis_grid = grid;
  info.random_phase = args.random_phase;
  info.seed = args.seed;
  info.aggregation = opt.aggregation;
  if (!args.stats.empty()) write_text_file(args.stats, sweep_stats_json(sweeps, info));
  if (!args.curves.empty()) write_text_file(args.curves, error_curves_csv(sweeps));

  // Keep stdout clean for the CSV when it goes there.
  std::ostream& log = (args.out.empty() || args.out == "-") ? std::cerr : std::cout;
  std::vector<DeltaStats> parts;
  for (const auto& s : sweeps) {
    const auto& st = s.stats;
    log << "case " << to_string(s.spec.id) << ": scenarios=" << st.scenarios
        << " zero=" << format_double(st.fraction_zero())
        << " one_step=" << format_double(st.fraction_one_step())
        << " above=" << format_double(st.fraction_above_step())
        << " negative=" << format_double(st.fraction_negative())
        << " max_delta=" << format_double(st.max_delta) << "\n";
    parts.push_back(st);
  }
  if (sweeps.size() > 1) {
    const auto p = pool(parts);
    log << "pooled: scenarios=" << p.scenarios << " zero=" << format_double(p.fraction_zero())
        << " negative=" << format_double(p.fraction_negative())
        << " max_delta=" << format_double(p.max_delta) << "\n";
  }
  return kExitOk;
}

int run_pole_hist(const PoleHistArgs& args) {
  PoleAnalysisConfig cfg = args.config;
  cfg.window = parse_window_kind(args.window);
  cfg.validate();
  const auto& rec = args.recommendation;
  if (!(rec.quantile > 0.0 && rec.quantile <= 1.0)) throw InputError("--quantile must lie in (0, 1]");
  if (!(rec.clamp_low <= rec.clamp_high)) throw InputError("--clamp-low exceeds --clamp-high");

  const auto files = expand_inputs(args.inputs);
  BatchStatus status;
  std::vector<SampledSignal> corpus;
  for (const auto& f : files) {
    try {
      corpus.push_back(load_wav(f));
    } catch (const InputError& e) {
      status.fail(f.string(), e, kExitInput);
    }
  }
  if (corpus.empty()) throw InputError("no readable signals in the corpus");

  const auto hist = radius_histogram(corpus, cfg, args.threads);
  double recommended = std::nan("");
  try {
    recommended = recommend_radius(hist, rec);
  } catch (const NumericError& e) {
    status.fail("corpus", e, kExitNumeric);
  }
  if (!args.out.empty()) write_text_file(args.out, histogram_csv(hist));
  if (!args.json.empty()) write_text_file(args.json, histogram_json(hist, cfg, rec, recommended));

  std::cout << "utterances=" << hist.utterances() << "\n"
            << "frames=" << hist.total_frames() << "\n"
            << "degenerate_frames=" << hist.degenerate() << "\n"
            << "order=" << cfg.order << "\n";
  if (hist.counted() > 0) {
    const auto mode = hist.mode_bin();
    std::cout << "mode_bin=" << format_double(std::round(hist.bin_low(mode) * 1e9) / 1e9) << ":"
              << format_double(std::round(hist.bin_high(mode) * 1e9) / 1e9) << "\n";
  }
  if (std::isfinite(recommended)) std::cout << "recommended_radius=" << format_double(recommended) << "\n";
  return status.code;
}

int run_pog(const PogArgs& args) {
  const fs::path manifest(args.manifest);
  const auto entries = parse_manifest(read_text_file(manifest), manifest.parent_path());
  const auto form = args.literal ? OverlapForm::kLiteral : OverlapForm::kSquared;
  if (!fs::is_directory(args.out_dir)) throw InputError("output directory does not exist: '" + args.out_dir + "'");

  std::map<std::string, std::vector<GaussianEntry>> by_tag;
  for (const auto& e : entries) {
    Gaussian1D g = std::holds_alternative<Gaussian1D>(e.source)
                       ? std::get<Gaussian1D>(e.source)
                       : [&] {
                           try {
                             return fit_gaussian(read_likelihoods(std::get<fs::path>(e.source)));
                           } catch (const InputError& err) {
                             throw InputError("manifest line " + std::to_string(e.line) + ": " + err.what());
                           }
                         }();
    by_tag[e.tag].push_back({e.model, e.data, g});
  }

  std::vector<OverlapMatrix> matrices;
  for (const char* tag : {"vanilla", "chirp"}) {
    const auto it = by_tag.find(tag);
    if (it == by_tag.end()) continue;
    matrices.push_back(overlap_matrix(it->second, tag, form));
  }
  if (matrices.size() == 2) matrices.push_back(difference_matrix(matrices[0], matrices[1]));

  for (const auto& m : matrices) {
    const auto path = fs::path(args.out_dir) / ("overlap_" + m.tag + ".csv");
    write_text_file(path, overlap_csv(m));
    const auto mean = m.pooled_mean();
    std::cout << m.tag << " pooled_mean=" << (mean ? format_double(*mean) : std::string("n/a"))
              << " -> " << path.string() << "\n";
  }
  write_text_file(fs::path(args.out_dir) / "pog.json", overlap_json(matrices));
  return kExitOk;
}

int run_synth(const SynthArgs& args) {
  if (args.poles.empty()) throw InputError("synth needs at least one --pole");
  if (args.out.empty()) throw InputError("synth needs --out");
  if (!(args.peak > 0.0 && args.peak < 1.0)) throw InputError("--peak must lie in (0, 1)");
  if (args.rate <= 0) throw InputError("--rate must be positive");
  SynthMetadata meta;
  for (const auto& p : args.poles) meta.poles.push_back(parse_pole(p));
  meta.length = args.length;
  meta.sample_rate = args.rate;
  meta.pulse_period = args.pulse_period;

  SampledSignal sig;
  if (args.pulse_period > 0) {
    sig = synth_all_pole(meta.poles, pulse_train(args.length, args.pulse_period), args.rate);
  } else {
    sig = synth_multipole(meta.poles, args.length, args.rate);
  }
  double peak = 0.0;
  for (double v : sig.samples) peak = std::max(peak, std::abs(v));
  if (!(peak > 0.0) || !std::isfinite(peak)) throw NumericError("synthesized signal has no finite peak");
  meta.peak_scale = args.peak / peak;
  for (double& v : sig.samples) v *= meta.peak_scale;

  save_wav(args.out, sig);
  const fs::path meta_path = args.meta.empty() ? fs::path(args.out).replace_extension(".poles.json") : fs::path(args.meta);
  write_text_file(meta_path, synth_json(meta));
  std::cout << args.out << " (" << args.length << " samples @ " << args.rate << " Hz, scale "
            << format_double(meta.peak_scale) << ")\n";
  return kExitOk;
}

}  // namespace chirpmfcc::cli
