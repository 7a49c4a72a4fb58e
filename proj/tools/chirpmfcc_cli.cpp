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

#include <CLI11.hpp>

#include <exception>
#include <iostream>

#include "chirpmfcc/error.hpp"
#include "commands.hpp"

namespace cli = chirpmfcc::cli;

namespace {

void add_threads(CLI::App* app, unsigned& threads) {
  app->add_option("--threads", threads,
                  "Worker threads (0 = $CHIRPMFCC_THREADS or hardware concurrency)")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chirpmfcc: chirp-spectrum MFCC features and pole-radius analysis"};
  app.require_subcommand(1);

  cli::FeaturesArgs fa;
  auto* features = app.add_subcommand("features", "Extract (chirp) MFCC features from WAV files");
  features->add_option("inputs", fa.inputs, "WAV files or directories of .wav files")->required();
  features->add_option("-o,--out-dir", fa.out_dir, "Output directory")->capture_default_str();
  features->add_option("--format", fa.format, "csv or json")->capture_default_str();
  fa.config.radius = cli::kDefaultRadius;
  features->add_option("-r,--r,--radius", fa.config.radius, "Analysis radius; 1.0 gives plain MFCC")
      ->capture_default_str();
  features->add_option("--frame-ms", fa.config.frame_ms, "Frame length in ms")->capture_default_str();
  features->add_option("--hop-ms", fa.config.hop_ms, "Hop in ms")->capture_default_str();
  features->add_option("--n-fft", fa.config.n_fft, "FFT size")->capture_default_str();
  features->add_option("--n-filters", fa.config.n_filters, "Mel filters")->capture_default_str();
  features->add_option("--n-ceps", fa.config.n_ceps, "Cepstral coefficients kept")->capture_default_str();
  features->add_option("--f-min", fa.config.f_min, "Lowest filter edge in Hz")->capture_default_str();
  features->add_option("--f-max", fa.config.f_max, "Highest filter edge in Hz (0 = Nyquist)")->capture_default_str();
  features->add_option("--window", fa.window, "hamming, hann or rectangular")->capture_default_str();
  features->add_option("--spectrum", fa.spectrum, "magnitude or power")->capture_default_str();
  features->add_option("--log-floor", fa.config.log_floor, "Floor applied before the log")->capture_default_str();
  features->add_option("--preemphasis", fa.config.preemphasis, "Pre-emphasis coefficient")->capture_default_str();
  features->add_flag("--no-deltas", fa.no_deltas, "Emit static coefficients only");
  features->add_flag("--adaptive-radius", fa.config.adaptive_radius,
                     "Experimental: per-frame radius from the largest LPC pole");
  add_threads(features, fa.threads);

  cli::SpectrumArgs sa;
  auto* spectrum = app.add_subcommand("spectrum", "Chirp spectrum of one frame as CSV");
  spectrum->add_option("input", sa.input, "WAV file")->required();
  spectrum->add_option("-o,--out", sa.out, "Output CSV (default stdout)");
  spectrum->add_option("-r,--r,--radius", sa.radius, "Analysis radius")->capture_default_str();
  spectrum->add_option("--n-fft", sa.n_fft, "FFT size")->capture_default_str();
  spectrum->add_option("--frame-ms", sa.frame_ms, "Frame length in ms")->capture_default_str();
  spectrum->add_option("--hop-ms", sa.hop_ms, "Hop in ms")->capture_default_str();
  spectrum->add_option("--frame", sa.frame_index, "Frame index")->capture_default_str();
  spectrum->add_option("--window", sa.window, "hamming, hann or rectangular")->capture_default_str();

  cli::PhaseSweepArgs pa;
  auto* sweep = app.add_subcommand("phase-sweep", "Multi-pole phase-error sweep over the analysis radius");
  sweep->add_option("--case", pa.cases, "Case id(s): 1a 1b 2a 2b 3a 3b (repeatable or comma-separated)");
  sweep->add_flag("--full", pa.full, "Run all six cases");
  sweep->add_option("--radius-grid", pa.radius_grid, "Pole radii lo:hi:step")->capture_default_str();
  sweep->add_option("--analysis-grid", pa.analysis_grid, "Analysis radii lo:hi:step")->capture_default_str();
  sweep->add_option("--length", pa.length, "Signal length in samples")->capture_default_str();
  sweep->add_flag("--random-phase", pa.random_phase, "Draw initial phases uniformly from (-pi, pi]");
  sweep->add_option("--seed", pa.seed, "Seed for --random-phase")->capture_default_str();
  sweep->add_flag("--signed", pa.signed_error, "Use the signed error sum instead of absolute errors");
  sweep->add_option("-o,--out", pa.out, "Scenario CSV (default stdout)");
  sweep->add_option("--stats", pa.stats, "Summary statistics JSON");
  sweep->add_option("--curves", pa.curves, "Per-scenario error curves CSV");
  add_threads(sweep, pa.threads);

  cli::PoleHistArgs ha;
  auto* hist = app.add_subcommand("pole-hist", "Histogram of per-frame maximum LPC pole radius");
  hist->add_option("inputs", ha.inputs, "WAV files or corpus directories")->required();
  hist->add_option("--order", ha.config.order, "LPC order")->capture_default_str();
  hist->add_option("--frame-ms", ha.config.frame_ms, "Frame length in ms")->capture_default_str();
  hist->add_option("--hop-ms", ha.config.hop_ms, "Hop in ms")->capture_default_str();
  hist->add_option("--window", ha.window, "hamming, hann or rectangular")->capture_default_str();
  hist->add_option("--preemphasis", ha.config.preemphasis, "Pre-emphasis coefficient")->capture_default_str();
  hist->add_option("--bin-low", ha.config.bin_low, "Lowest bin edge")->capture_default_str();
  hist->add_option("--bin-high", ha.config.bin_high, "Highest bin edge")->capture_default_str();
  hist->add_option("--bin-width", ha.config.bin_width, "Bin width")->capture_default_str();
  hist->add_option("--quantile", ha.recommendation.quantile, "Quantile used for the recommendation")
      ->capture_default_str();
  hist->add_option("--clamp-low", ha.recommendation.clamp_low, "Lower clamp on the recommendation")
      ->capture_default_str();
  hist->add_option("--clamp-high", ha.recommendation.clamp_high, "Upper clamp on the recommendation")
      ->capture_default_str();
  hist->add_option("-o,--out", ha.out, "Histogram CSV");
  hist->add_option("--json", ha.json, "Histogram and recommendation JSON");
  add_threads(hist, ha.threads);

  cli::PogArgs ga;
  auto* pog = app.add_subcommand("pog", "Product-of-Gaussians overlap matrices from a likelihood manifest");
  pog->add_option("manifest", ga.manifest, "Manifest CSV: tag,model,data,source")->required();
  pog->add_option("-o,--out-dir", ga.out_dir, "Output directory")->capture_default_str();
  pog->add_flag("--literal-overlap", ga.literal, "Use the unsquared overlap exponent (always 100%)");

  cli::SynthArgs ya;
  auto* synth = app.add_subcommand("synth", "Synthesize a multi-pole test signal");
  synth->add_option("--pole", ya.poles, "radius:omega[:phi] (repeatable)")->required();
  synth->add_option("--length", ya.length, "Samples")->capture_default_str();
  synth->add_option("--rate", ya.rate, "Sample rate in Hz")->capture_default_str();
  synth->add_option("--pulse-period", ya.pulse_period,
                    "Drive the all-pole filter with a pulse train of this period (0 = free decay)")
      ->capture_default_str();
  synth->add_option("--peak", ya.peak, "Peak amplitude after normalization")->capture_default_str();
  synth->add_option("-o,--out", ya.out, "Output WAV")->required();
  synth->add_option("--meta", ya.meta, "Metadata JSON (default: WAV path with .poles.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitInput;
  }

  try {
    if (*features) return cli::run_features(fa);
    if (*spectrum) return cli::run_spectrum(sa);
    if (*sweep) return cli::run_phase_sweep(pa);
    if (*hist) return cli::run_pole_hist(ha);
    if (*pog) return cli::run_pog(ga);
    if (*synth) return cli::run_synth(ya);
  } catch (const chirpmfcc::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitInput;
  } catch (const chirpmfcc::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return cli::kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return cli::kExitNumeric;
  }
  return cli::kExitInput;
}
