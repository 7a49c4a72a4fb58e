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

#include "chirpmfcc/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <json.hpp>
#include <sstream>

#include "chirpmfcc/error.hpp"

namespace chirpmfcc {
namespace {

using Json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto pos = s.find(sep);
    out.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) return out;
    s.remove_prefix(pos + 1);
  }
}

bool parse_real(std::string_view text, double& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(out);
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto pos = text.find('\n');
    fn(line_no, text.substr(0, pos));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
}

Json stats_json(const DeltaStats& st) {
  Json j;
  j["scenarios"] = st.scenarios;
  j["count_delta_zero"] = st.zero;
  j["count_delta_one_step"] = st.one_step;
  j["count_delta_above_step"] = st.above_step;
  j["count_delta_negative"] = st.negative;
  j["fraction_delta_zero"] = st.fraction_zero();
  j["fraction_delta_one_step"] = st.fraction_one_step();
  j["fraction_delta_above_step"] = st.fraction_above_step();
  j["fraction_delta_negative"] = st.fraction_negative();
  j["delta_step"] = st.step;
  j["max_delta"] = st.max_delta;
  j["min_delta"] = st.min_delta;
  return j;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::logic_error("format_double: buffer too small");
  return std::string(buf, ptr);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

std::string feature_csv(const FeatureMatrix& features) {
  std::string out;
  const auto names = features.column_names();
  for (std::size_t c = 0; c < names.size(); ++c) {
    if (c) out += ',';
    out += names[c];
  }
  out += '\n';
  for (std::size_t r = 0; r < features.rows(); ++r) {
    for (std::size_t c = 0; c < features.cols(); ++c) {
      if (c) out += ',';
      out += format_double(features.at(r, c));
    }
    out += '\n';
  }
  return out;
}

std::string feature_json(const FeatureMatrix& features) {
  const auto& meta = features.metadata;
  const auto& cfg = meta.config;
  Json j;
  j["format"] = "chirpmfcc.features/1";
  j["source"] = meta.source;
  j["rows"] = features.rows();
  j["cols"] = features.cols();
  j["columns"] = features.column_names();
  Json m;
  m["radius"] = cfg.radius;
  m["sample_rate"] = meta.sample_rate;
  m["frame_ms"] = cfg.frame_ms;
  m["hop_ms"] = cfg.hop_ms;
  m["n_fft"] = cfg.n_fft;
  m["n_filters"] = cfg.n_filters;
  m["n_ceps"] = cfg.n_ceps;
  m["f_min"] = cfg.f_min;
  m["f_max"] = cfg.resolved_f_max(meta.sample_rate);
  m["window"] = std::string(to_string(cfg.window));
  m["spectrum"] = std::string(to_string(cfg.scale));
  m["log_floor"] = cfg.log_floor;
  m["preemphasis"] = cfg.preemphasis;
  m["deltas"] = features.has_deltas();
  m["adaptive_radius"] = cfg.adaptive_radius;
  m["dct"] = "orthonormal-dct-ii";
  m["padded_frames"] = meta.padded_frames;
  j["metadata"] = m;
  Json frames = Json::array();
  for (std::size_t r = 0; r < features.rows(); ++r) {
    const auto row = features.row(r);
    frames.push_back(std::vector<double>(row.begin(), row.end()));
  }
  j["frames"] = std::move(frames);
  return j.dump(1) + "\n";
}

std::string spectrum_csv(const ComplexSpectrum& spectrum) {
  std::string out = "bin,omega,real,imag,magnitude,phase\n";
  for (std::size_t k = 0; k < spectrum.bins.size(); ++k) {
    const auto& b = spectrum.bins[k];
    out += std::to_string(k) + ',' + format_double(spectrum.omega(k)) + ',' +
           format_double(b.real()) + ',' + format_double(b.imag()) + ',' +
           format_double(std::abs(b)) + ',' + format_double(std::arg(b)) + '\n';
  }
  return out;
}

std::string histogram_csv(const RadiusHistogram& hist) {
  std::string out = "bin_low,bin_high,count\n";
  for (std::size_t i = 0; i < hist.bins(); ++i) {
    out += format_double(std::round(hist.bin_low(i) * 1e9) / 1e9) + ',' +
           format_double(std::round(hist.bin_high(i) * 1e9) / 1e9) + ',' +
           std::to_string(hist.counts()[i]) + '\n';
  }
  return out;
}

std::string histogram_json(const RadiusHistogram& hist, const PoleAnalysisConfig& config,
                           const RadiusRecommendation& options, double recommended) {
  Json j;
  j["format"] = "chirpmfcc.pole-hist/1";
  j["order"] = config.order;
  j["frame_ms"] = config.frame_ms;
  j["hop_ms"] = config.hop_ms;
  j["window"] = std::string(to_string(config.window));
  j["preemphasis"] = config.preemphasis;
  j["bin_low"] = hist.low();
  j["bin_high"] = hist.high();
  j["bin_width"] = hist.width();
  j["utterances"] = hist.utterances();
  j["total_frames"] = hist.total_frames();
  j["counted_frames"] = hist.counted();
  j["degenerate_frames"] = hist.degenerate();
  j["below_range_frames"] = hist.below_range();
  j["unstable_frames"] = hist.unstable();
  j["max_observed_radius"] = hist.max_observed();
  if (hist.counted() > 0) {
    const auto mode = hist.mode_bin();
    j["mode_bin"] = {{"low", std::round(hist.bin_low(mode) * 1e9) / 1e9},
                     {"high", std::round(hist.bin_high(mode) * 1e9) / 1e9},
                     {"count", hist.counts()[mode]}};
  } else {
    j["mode_bin"] = nullptr;
  }
  j["quantile"] = options.quantile;
  j["clamp"] = {options.clamp_low, options.clamp_high};
  j["recommended_radius"] = std::isfinite(recommended) ? Json(recommended) : Json(nullptr);
  return j.dump(1) + "\n";
}

std::string sweep_csv(std::span<const CaseSweep> sweeps) {
  std::size_t poles = 0;
  for (const auto& s : sweeps) poles = std::max(poles, s.spec.angles.size());
  std::string out = "case,scenario";
  for (std::size_t i = 1; i <= poles; ++i) out += ",a" + std::to_string(i);
  for (std::size_t i = 1; i <= poles; ++i) out += ",omega" + std::to_string(i);
  for (std::size_t i = 1; i <= poles; ++i) out += ",phi" + std::to_string(i);
  out += ",a_max,r_cmin,delta,min_error\n";
  for (const auto& s : sweeps) {
    for (std::size_t k = 0; k < s.results.size(); ++k) {
      const auto& sc = s.scenarios[k];
      const auto& r = s.results[k];
      out += std::string(to_string(s.spec.id)) + ',' + std::to_string(sc.index);
      for (std::size_t i = 0; i < poles; ++i) {
        out += ',';
        if (i < sc.poles.size()) out += format_double(sc.poles[i].radius);
      }
      for (std::size_t i = 0; i < poles; ++i) {
        out += ',';
        if (i < sc.poles.size()) out += format_double(sc.poles[i].omega);
      }
      for (std::size_t i = 0; i < poles; ++i) {
        out += ',';
        if (i < sc.poles.size()) out += format_double(sc.poles[i].phi);
      }
      out += ',' + format_double(r.a_max) + ',' + format_double(r.r_cmin) + ',' +
             format_double(r.delta) + ',' + format_double(r.min_error) + '\n';
    }
  }
  return out;
}

std::string error_curves_csv(std::span<const CaseSweep> sweeps) {
  std::string out = "case,scenario,r_c,total_error\n";
  for (const auto& s : sweeps) {
    for (const auto& r : s.results) {
      for (std::size_t g = 0; g < r.grid.size(); ++g) {
        out += std::string(to_string(s.spec.id)) + ',' + std::to_string(r.scenario_index) + ',' +
               format_double(r.grid[g]) + ',' + format_double(r.errors[g]) + '\n';
      }
    }
  }
  return out;
}

std::string sweep_stats_json(std::span<const CaseSweep> sweeps, const SweepRunInfo& info) {
  Json j;
  j["format"] = "chirpmfcc.phase-sweep/1";
  j["length"] = info.length;
  j["scenario_radii"] = info.scenario_radii;
  j["analysis_grid"] = {{"first", info.analysis_grid.empty() ? 0.0 : info.analysis_grid.front()},
                        {"last", info.analysis_grid.empty() ? 0.0 : info.analysis_grid.back()},
                        {"points", info.analysis_grid.size()}};
  j["phase"] = info.random_phase ? "random" : "zero";
  j["seed"] = info.seed;
  j["aggregation"] = info.aggregation == ErrorAggregation::kAbsolute ? "absolute" : "signed";
  Json cases = Json::array();
  std::vector<DeltaStats> parts;
  for (const auto& s : sweeps) {
    Json c;
    c["case"] = std::string(to_string(s.spec.id));
    c["proximity"] = std::string(to_string(s.spec.proximity));
    c["angles"] = s.spec.angles;
    c["stats"] = stats_json(s.stats);
    cases.push_back(std::move(c));
    parts.push_back(s.stats);
  }
  j["cases"] = std::move(cases);
  j["pooled"] = stats_json(pool(parts));
  return j.dump(1) + "\n";
}

std::string synth_json(const SynthMetadata& meta) {
  Json j;
  j["format"] = "chirpmfcc.synth/1";
  j["sample_rate"] = meta.sample_rate;
  j["length"] = meta.length;
  j["peak_scale"] = meta.peak_scale;
  j["pulse_period"] = meta.pulse_period;
  Json poles = Json::array();
  for (const auto& p : meta.poles) {
    poles.push_back({{"radius", p.radius}, {"omega", p.omega}, {"phi", p.phi}});
  }
  j["poles"] = std::move(poles);
  return j.dump(1) + "\n";
}

SynthMetadata parse_synth_json(std::string_view text) {
  try {
    const auto j = Json::parse(text);
    SynthMetadata meta;
    meta.sample_rate = j.at("sample_rate").get<int>();
    meta.length = j.at("length").get<std::size_t>();
    meta.peak_scale = j.at("peak_scale").get<double>();
    meta.pulse_period = j.at("pulse_period").get<std::size_t>();
    for (const auto& p : j.at("poles")) {
      meta.poles.push_back({p.at("radius").get<double>(), p.at("omega").get<double>(),
                            p.at("phi").get<double>()});
    }
    return meta;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed pole metadata: ") + e.what());
  }
}

std::string overlap_csv(const OverlapMatrix& matrix) {
  std::string out = "model";
  for (const auto& c : matrix.classes) out += ',' + c;
  out += ",Average\n";
  for (std::size_t r = 0; r < matrix.models.size(); ++r) {
    out += matrix.models[r];
    for (const auto& cell : matrix.cells[r]) {
      out += ',';
      if (cell) out += format_double(*cell);
    }
    out += ',';
    if (const auto avg = matrix.row_average(r)) out += format_double(*avg);
    out += '\n';
  }
  return out;
}

std::string overlap_json(std::span<const OverlapMatrix> matrices) {
  Json j;
  j["format"] = "chirpmfcc.pog/1";
  Json list = Json::array();
  for (const auto& m : matrices) {
    Json e;
    e["tag"] = m.tag;
    e["kind"] = m.kind == MatrixKind::kOverlap ? "overlap" : "difference";
    e["models"] = m.models;
    e["classes"] = m.classes;
    Json cells = Json::array();
    Json averages = Json::array();
    for (std::size_t r = 0; r < m.models.size(); ++r) {
      Json row = Json::array();
      for (const auto& c : m.cells[r]) row.push_back(optional_json(c));
      cells.push_back(std::move(row));
      averages.push_back(optional_json(m.row_average(r)));
    }
    e["cells"] = std::move(cells);
    e["row_average"] = std::move(averages);
    e["pooled_mean"] = optional_json(m.pooled_mean());
    list.push_back(std::move(e));
  }
  j["matrices"] = std::move(list);
  return j.dump(1) + "\n";
}

std::vector<double> parse_likelihoods(std::string_view text, std::string_view source_name) {
  std::vector<double> out;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    line = trim(line);
    if (line.empty() || line.front() == '#') return;
    const auto field = trim(line.substr(0, line.find(',')));
    double v = 0.0;
    if (!parse_real(field, v)) {
      std::ostringstream os;
      os << source_name << ":" << line_no << ": not a finite number: '" << line << "'";
      throw InputError(os.str());
    }
    out.push_back(v);
  });
  return out;
}

std::vector<double> read_likelihoods(const std::filesystem::path& path) {
  return parse_likelihoods(read_text_file(path), path.string());
}

std::vector<ManifestEntry> parse_manifest(std::string_view text,
                                          const std::filesystem::path& base_dir) {
  std::vector<ManifestEntry> out;
  for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') return;
    auto fail = [&](const std::string& why) {
      std::ostringstream os;
      os << "manifest line " << line_no << ": " << why << ": '" << line << "'";
      throw InputError(os.str());
    };
    const auto fields = split(line, ',');
    if (fields.size() != 4) fail("expected 4 fields tag,model,data,source");
    const auto tag = trim(fields[0]);
    if (tag == "tag" && out.empty()) return;  // header
    if (tag != "vanilla" && tag != "chirp") fail("tag must be 'vanilla' or 'chirp'");
    ManifestEntry e;
    e.tag = std::string(tag);
    e.model = std::string(trim(fields[1]));
    e.data = std::string(trim(fields[2]));
    e.line = line_no;
    if (e.model.empty() || e.data.empty()) fail("empty model or data label");
    const auto source = trim(fields[3]);
    if (source.empty()) fail("empty source");
    constexpr std::string_view kGaussian = "gaussian:";
    if (source.substr(0, kGaussian.size()) == kGaussian) {
      const auto params = split(source.substr(kGaussian.size()), ':');
      double mean = 0.0;
      double var = 0.0;
      if (params.size() != 2 || !parse_real(params[0], mean) || !parse_real(params[1], var) ||
          !(var > 0.0)) {
        fail("gaussian source must be gaussian:<mean>:<variance> with variance > 0");
      }
      e.source = Gaussian1D(mean, var);
    } else {
      std::filesystem::path p{std::string(source)};
      e.source = p.is_absolute() ? p : base_dir / p;
    }
    out.push_back(std::move(e));
  });
  if (out.empty()) throw InputError("manifest has no entries");
  return out;
}

}  // namespace chirpmfcc
