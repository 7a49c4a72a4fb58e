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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "chirpmfcc/error.hpp"
#include "chirpmfcc/mel.hpp"
#include "chirpmfcc/spectrum.hpp"
#include "oracles.hpp"

using namespace chirpmfcc;
using std::numbers::pi;

namespace {

Frame windowed_noise(std::mt19937_64& rng, std::size_t n = 320) {
  Frame f;
  f.samples = oracle::white_noise(rng, n);
  return apply_window(f, WindowKind::kHamming);
}

// Straight-line regression delta with replicated edges, written out longhand.
std::vector<double> naive_delta(const std::vector<double>& c) {
  const auto n = static_cast<long>(c.size());
  auto at = [&](long i) { return c[static_cast<std::size_t>(std::clamp(i, 0L, n - 1))]; };
  std::vector<double> d(c.size());
  for (long t = 0; t < n; ++t) {
    d[static_cast<std::size_t>(t)] =
        (1.0 * (at(t + 1) - at(t - 1)) + 2.0 * (at(t + 2) - at(t - 2))) / 10.0;
  }
  return d;
}

}  // namespace

TEST_CASE("mel scale") {
  CHECK(hz_to_mel(0.0) == 0.0);
  CHECK(hz_to_mel(700.0) == doctest::Approx(781.1728387).epsilon(1e-9));
  CHECK(hz_to_mel(1000.0) == doctest::Approx(999.9855).epsilon(1e-6));
  for (double f : {10.0, 440.0, 3999.0, 8000.0}) CHECK(mel_to_hz(hz_to_mel(f)) == doctest::Approx(f).epsilon(1e-12));
}

TEST_CASE("mel filterbank layout") {
  const MelFilterbank bank(26, 512, 16000, 0.0, 8000.0);
  CHECK(bank.n_filters() == 26);
  CHECK(bank.n_bins() == 257);
  REQUIRE(bank.edges_hz().size() == 28);
  CHECK(bank.edges_hz().front() == 0.0);
  CHECK(bank.edges_hz().back() == 8000.0);
  const double step = hz_to_mel(8000.0) / 27.0;
  for (std::size_t i = 0; i < 28; ++i) CHECK(hz_to_mel(bank.edges_hz()[i]) == doctest::Approx(step * i).epsilon(1e-9));
  for (std::size_t m = 1; m < 26; ++m) CHECK(bank.centers_hz()[m] > bank.centers_hz()[m - 1]);
  for (std::size_t m = 0; m < 26; ++m) {
    const auto w = bank.weights(m);
    double peak = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      CHECK(w[k] >= 0.0);
      CHECK(w[k] <= 1.0);
      peak = std::max(peak, w[k]);
      const double f = 16000.0 * k / 512.0;
      if (f <= bank.edges_hz()[m] || f >= bank.edges_hz()[m + 2]) CHECK(w[k] == 0.0);
    }
    CHECK(peak > 0.0);
  }
}

TEST_CASE("mel filterbank errors") {
  CHECK_THROWS_AS(MelFilterbank(0, 512, 16000, 0, 8000), InputError);
  CHECK_THROWS_AS(MelFilterbank(26, 512, 16000, 0, 9000), InputError);
  CHECK_THROWS_AS(MelFilterbank(26, 512, 16000, 4000, 3000), InputError);
  // Far too many filters for a 64-point FFT: some triangle sees no bin.
  CHECK_THROWS_WITH_AS(MelFilterbank(60, 64, 16000, 0, 8000), doctest::Contains("covers no FFT bin"), InputError);
}

TEST_CASE("orthonormal DCT") {
  const std::vector<double> ones(8, 1.0);
  const auto c = dct_ortho(ones);
  CHECK(c[0] == doctest::Approx(std::sqrt(8.0)));
  for (std::size_t k = 1; k < 8; ++k) CHECK(std::abs(c[k]) < 1e-12);

  std::mt19937_64 rng(4);
  for (std::size_t n : {1u, 2u, 13u, 26u, 40u}) {
    const auto x = oracle::white_noise(rng, n);
    const auto back = idct_ortho(dct_ortho(x));
    CHECK(oracle::max_abs_diff(x, back) < 1e-12);
    double ex = 0.0, ec = 0.0;
    const auto cx = dct_ortho(x);
    for (std::size_t i = 0; i < n; ++i) {
      ex += x[i] * x[i];
      ec += cx[i] * cx[i];
    }
    CHECK(ec == doctest::Approx(ex).epsilon(1e-12));
  }
}

TEST_CASE("chirp_mfcc_frame at r = 1 is identical to mfcc_frame") {
  std::mt19937_64 rng(5);
  CepstralConfig cfg;
  const auto bank = build_mel_filterbank(cfg, 16000);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = windowed_noise(rng);
    const auto a = mfcc_frame(f, bank, cfg);
    const auto b = chirp_mfcc_frame(f, bank, cfg);
    REQUIRE(a.size() == 13);
    CHECK(a == b);
  }
}

TEST_CASE("chirp_mfcc_frame flattens a matched damped cosine") {
  CepstralConfig cfg;
  cfg.radius = 0.99;
  const auto bank = build_mel_filterbank(cfg, 16000);
  const double w0 = 2 * pi * 40 / 320;
  Frame damped, plain;
  damped.samples = oracle::damped_cosine(0.99, w0, 0.2, 320);
  plain.samples = oracle::damped_cosine(1.0, w0, 0.2, 320);
  CepstralConfig vanilla = cfg;
  vanilla.radius = 1.0;
  const auto a = chirp_mfcc_frame(damped, bank, cfg);
  const auto b = mfcc_frame(plain, bank, vanilla);
  CHECK(oracle::max_abs_diff(a, b) < 1e-6);
  cfg.radius = 0.85;
  CHECK_THROWS_AS(chirp_mfcc_frame(damped, bank, cfg), InputError);
}

TEST_CASE("property: scaling the frame shifts only c0") {
  std::mt19937_64 rng(6);
  CepstralConfig cfg;
  cfg.radius = 0.995;
  const auto bank = build_mel_filterbank(cfg, 16000);
  for (double g : {0.01, 0.5, 3.0, 100.0}) {
    const auto f = windowed_noise(rng);
    Frame scaled = f;
    for (auto& v : scaled.samples) v *= g;
    const auto a = chirp_mfcc_frame(f, bank, cfg);
    const auto b = chirp_mfcc_frame(scaled, bank, cfg);
    CHECK(b[0] - a[0] == doctest::Approx(std::sqrt(26.0) * std::log(g)).epsilon(1e-9));
    for (std::size_t i = 1; i < a.size(); ++i) CHECK(std::abs(b[i] - a[i]) < 1e-9);
  }
}

TEST_CASE("silent frame hits the log floor, not -inf") {
  CepstralConfig cfg;
  const auto bank = build_mel_filterbank(cfg, 16000);
  Frame f;
  f.samples.assign(320, 0.0);
  const auto c = mfcc_frame(f, bank, cfg);
  CHECK(c[0] == doctest::Approx(std::sqrt(26.0) * std::log(1e-10)));
  for (std::size_t i = 1; i < c.size(); ++i) CHECK(std::abs(c[i]) < 1e-9);
}

TEST_CASE("extract: 1 s at 16 kHz") {
  std::mt19937_64 rng(7);
  SampledSignal s{oracle::white_noise(rng, 16000), 16000};
  CepstralConfig cfg;
  cfg.radius = 0.997;
  const auto feats = extract(s, cfg, "noise");
  CHECK(feats.rows() == 100);
  CHECK(feats.cols() == 39);
  CHECK(feats.has_deltas());
  CHECK(feats.metadata.padded_frames == 1);
  CHECK(feats.metadata.source == "noise");
  const auto names = feats.column_names();
  CHECK(names[0] == "c0");
  CHECK(names[12] == "c12");
  CHECK(names[13] == "d0");
  CHECK(names[26] == "a0");
  CHECK(names[38] == "a12");

  // Static block equals the per-frame pipeline.
  const auto bank = build_mel_filterbank(cfg, 16000);
  const auto frames = frame_signal(s, 20, 10);
  for (std::size_t t : {0u, 50u, 99u}) {
    const auto c = chirp_mfcc_frame(apply_window(frames[t], WindowKind::kHamming), bank, cfg);
    for (std::size_t i = 0; i < 13; ++i) CHECK(feats.at(t, i) == c[i]);
  }

  // Deltas and accelerations follow the regression formula.
  for (std::size_t i = 0; i < 13; ++i) {
    std::vector<double> col(feats.rows());
    for (std::size_t t = 0; t < feats.rows(); ++t) col[t] = feats.at(t, i);
    const auto d = naive_delta(col);
    const auto a = naive_delta(d);
    for (std::size_t t = 0; t < feats.rows(); ++t) {
      CHECK(feats.at(t, 13 + i) == doctest::Approx(d[t]).epsilon(1e-12));
      CHECK(feats.at(t, 26 + i) == doctest::Approx(a[t]).epsilon(1e-12));
    }
  }
}

TEST_CASE("extract: thread count does not change output") {
  std::mt19937_64 rng(8);
  SampledSignal s{oracle::white_noise(rng, 8000), 16000};
  CepstralConfig cfg;
  cfg.radius = 0.99;
  const auto one = extract(s, cfg, "", 1);
  const auto four = extract(s, cfg, "", 4);
  CHECK(one.data() == four.data());
}

TEST_CASE("add_deltas") {
  SUBCASE("linear ramp has unit slope in the interior, zero acceleration there") {
    FeatureMatrix m(10, 1);
    for (std::size_t t = 0; t < 10; ++t) m.at(t, 0) = static_cast<double>(t);
    const auto d = add_deltas(m);
    CHECK(d.cols() == 3);
    for (std::size_t t = 2; t < 8; ++t) CHECK(d.at(t, 1) == doctest::Approx(1.0));
    for (std::size_t t = 4; t < 6; ++t) CHECK(std::abs(d.at(t, 2)) < 1e-12);
  }
  SUBCASE("constant input") {
    FeatureMatrix m(5, 2);
    for (std::size_t t = 0; t < 5; ++t) m.at(t, 0) = m.at(t, 1) = 4.0;
    const auto d = add_deltas(m);
    for (std::size_t t = 0; t < 5; ++t) {
      for (std::size_t c = 2; c < 6; ++c) CHECK(d.at(t, c) == 0.0);
    }
  }
  SUBCASE("too few frames") {
    FeatureMatrix m(4, 13);
    CHECK_THROWS_AS(add_deltas(m), InputError);
  }
}

TEST_CASE("extract errors") {
  CepstralConfig cfg;
  SampledSignal tiny{std::vector<double>(400, 0.1), 16000};
  CHECK_THROWS_AS(extract(tiny, cfg), InputError);  // 2 frames, deltas need 5
  cfg.deltas = false;
  CHECK(extract(tiny, cfg).rows() == 2);
  cfg.radius = 0.5;
  CHECK_THROWS_AS(extract(tiny, cfg), InputError);
  cfg.radius = 1.0;
  cfg.n_ceps = 30;
  CHECK_THROWS_AS(extract(tiny, cfg), InputError);
}

TEST_CASE("adaptive radius stays inside its clamp and changes the output") {
  std::mt19937_64 rng(9);
  SampledSignal s{oracle::white_noise(rng, 4000), 16000};
  CepstralConfig cfg;
  cfg.radius = 1.0;
  const auto fixed = extract(s, cfg);
  cfg.adaptive_radius = true;
  const auto adaptive = extract(s, cfg);
  CHECK(adaptive.rows() == fixed.rows());
  CHECK(adaptive.data() != fixed.data());
}
