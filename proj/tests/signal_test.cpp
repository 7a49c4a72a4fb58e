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
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "chirpmfcc/error.hpp"
#include "chirpmfcc/signal.hpp"
#include "oracles.hpp"

using namespace chirpmfcc;

namespace {

std::vector<std::uint8_t> wav_header(std::uint16_t format, std::uint16_t channels,
                                     std::uint32_t rate, std::uint16_t bits,
                                     std::uint32_t data_bytes) {
  std::vector<std::uint8_t> b;
  auto u32 = [&](std::uint32_t v) { for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i))); };
  auto u16 = [&](std::uint16_t v) { b.push_back(static_cast<std::uint8_t>(v)); b.push_back(static_cast<std::uint8_t>(v >> 8)); };
  auto tag = [&](const char* t) { b.insert(b.end(), t, t + 4); };
  tag("RIFF");
  u32(36 + data_bytes);
  tag("WAVE");
  tag("fmt ");
  u32(16);
  u16(format);
  u16(channels);
  u32(rate);
  u32(rate * channels * bits / 8);
  u16(static_cast<std::uint16_t>(channels * bits / 8));
  u16(bits);
  tag("data");
  u32(data_bytes);
  return b;
}

}  // namespace

TEST_CASE("load_wav: one second of 16 kHz silence") {
  auto bytes = wav_header(1, 1, 16000, 16, 32000);
  bytes.resize(bytes.size() + 32000, 0);
  const auto dir = std::filesystem::temp_directory_path() / "chirpmfcc_signal_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "silence.wav";
  {
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  }
  const auto sig = load_wav(path);
  CHECK(sig.sample_rate == 16000);
  REQUIRE(sig.samples.size() == 16000);
  for (double s : sig.samples) CHECK(s == 0.0);
}

TEST_CASE("decode_wav scales full-scale samples by 1/32768") {
  auto bytes = wav_header(1, 1, 8000, 16, 4);
  for (std::uint8_t v : {0xFF, 0x7F, 0x00, 0x80}) bytes.push_back(v);  // 32767, -32768
  const auto sig = decode_wav(bytes);
  CHECK(sig.samples[0] == 32767.0 / 32768.0);
  CHECK(sig.samples[1] == -1.0);
}

TEST_CASE("decode_wav rejects unsupported inputs") {
  SUBCASE("stereo") {
    auto bytes = wav_header(1, 2, 8000, 16, 8);
    bytes.resize(bytes.size() + 8, 0);
    CHECK_THROWS_WITH_AS(decode_wav(bytes), doctest::Contains("unsupported channel count"), InputError);
  }
  SUBCASE("8-bit") {
    auto bytes = wav_header(1, 1, 8000, 8, 4);
    bytes.resize(bytes.size() + 4, 0);
    CHECK_THROWS_WITH_AS(decode_wav(bytes), doctest::Contains("unsupported encoding"), InputError);
  }
  SUBCASE("float") {
    auto bytes = wav_header(3, 1, 8000, 16, 4);
    bytes.resize(bytes.size() + 4, 0);
    CHECK_THROWS_WITH_AS(decode_wav(bytes), doctest::Contains("unsupported encoding"), InputError);
  }
  SUBCASE("truncated data") {
    auto bytes = wav_header(1, 1, 8000, 16, 100);
    bytes.resize(bytes.size() + 10, 0);
    CHECK_THROWS_WITH_AS(decode_wav(bytes), doctest::Contains("truncated"), InputError);
  }
  SUBCASE("not RIFF") {
    std::vector<std::uint8_t> junk(64, 'x');
    CHECK_THROWS_AS(decode_wav(junk), InputError);
  }
}

TEST_CASE("encode_wav round-trips PCM16 exactly") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(-32768, 32767);
  SampledSignal sig;
  sig.sample_rate = 22050;
  for (int i = 0; i < 1000; ++i) sig.samples.push_back(d(rng) / 32768.0);
  const auto back = decode_wav(encode_wav(sig));
  CHECK(back.sample_rate == 22050);
  CHECK(back.samples == sig.samples);
}

TEST_CASE("synth_multipole") {
  SUBCASE("sustained cosine") {
    const PoleSpec p{1.0, std::numbers::pi / 2, 0.0};
    const auto s = synth_multipole(std::span(&p, 1), 4);
    CHECK(s.sample_rate == kNominalSampleRate);
    CHECK(s.samples[0] == doctest::Approx(1.0));
    CHECK(std::abs(s.samples[1]) < 1e-15);
    CHECK(s.samples[2] == doctest::Approx(-1.0));
    CHECK(std::abs(s.samples[3]) < 1e-15);
  }
  SUBCASE("damped by 0.5") {
    const PoleSpec p{0.5, std::numbers::pi / 2, 0.0};
    const auto s = synth_multipole(std::span(&p, 1), 4);
    CHECK(s.samples[0] == doctest::Approx(1.0));
    CHECK(std::abs(s.samples[1]) < 1e-15);
    CHECK(s.samples[2] == doctest::Approx(-0.25));
    CHECK(std::abs(s.samples[3]) < 1e-15);
  }
  SUBCASE("identical poles double the output") {
    const PoleSpec p{0.93, 0.7, 0.4};
    const std::vector<PoleSpec> two{p, p};
    const auto one = synth_multipole(std::span(&p, 1), 64);
    const auto both = synth_multipole(two, 64);
    for (std::size_t k = 0; k < 64; ++k) CHECK(both.samples[k] == 2.0 * one.samples[k]);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(synth_multipole({}, 4), InputError);
    const PoleSpec bad{1.2, 1.0, 0.0};
    CHECK_THROWS_AS(synth_multipole(std::span(&bad, 1), 4), InputError);
    const PoleSpec zero{0.0, 1.0, 0.0};
    CHECK_THROWS_AS(synth_multipole(std::span(&zero, 1), 4), InputError);
    const PoleSpec ok{0.9, 1.0, 0.0};
    CHECK_THROWS_AS(synth_multipole(std::span(&ok, 1), 0), InputError);
  }
}

TEST_CASE("property: synth_multipole superposition") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> rad(0.5, 1.0), ang(0.05, 3.1), ph(-3.1, 3.1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<PoleSpec> poles(1 + trial % 5);
    for (auto& p : poles) p = {rad(rng), ang(rng), ph(rng)};
    const auto all = synth_multipole(poles, 200);
    std::vector<double> sum(200, 0.0);
    for (const auto& p : poles) {
      const auto part = synth_multipole(std::span(&p, 1), 200);
      for (std::size_t k = 0; k < 200; ++k) sum[k] += part.samples[k];
    }
    CHECK(oracle::max_abs_diff(all.samples, sum) < 1e-12);
  }
}

TEST_CASE("synth_all_pole output is an AR process with the planted poles") {
  const std::vector<PoleSpec> poles{{0.95, 0.6, 0.0}, {0.8, 2.0, 0.0}};
  const auto impulse = pulse_train(64, 1000);
  const auto y = synth_all_pole(poles, impulse);
  // Impulse response of one second-order section equals a^n sin((n+1)w)/sin(w).
  const std::vector<PoleSpec> single{{0.9, 1.1, 0.0}};
  const auto h = synth_all_pole(single, impulse);
  for (std::size_t n = 0; n < 64; ++n) {
    CHECK(h.samples[n] == doctest::Approx(std::pow(0.9, n) * std::sin((n + 1) * 1.1) / std::sin(1.1)).epsilon(1e-10));
  }
  CHECK(y.samples[0] == 1.0);
  CHECK(pulse_train(10, 4) == std::vector<double>{1, 0, 0, 0, 1, 0, 0, 0, 1, 0});
}

TEST_CASE("frame_signal") {
  SampledSignal s{std::vector<double>(16000, 0.5), 16000};
  SUBCASE("1 s at 20/10 ms: 99 full frames plus one padded") {
    const auto frames = frame_signal(s, 20, 10);
    REQUIRE(frames.size() == 100);
    for (std::size_t i = 0; i < 99; ++i) {
      CHECK(frames[i].samples.size() == 320);
      CHECK_FALSE(frames[i].padded);
      CHECK(frames[i].origin_offset == i * 160);
      CHECK(frames[i].index == i);
    }
    CHECK(frames.back().padded);
    CHECK(frames.back().samples.size() == 320);
    CHECK(frames.back().samples[159] == 0.5);
    CHECK(frames.back().samples[160] == 0.0);
  }
  SUBCASE("hop equal to frame tiles the signal") {
    const auto frames = frame_signal(s, 20, 20);
    CHECK(frames.size() == 50);
    for (const auto& f : frames) CHECK_FALSE(f.padded);
  }
  SUBCASE("exactly one full frame") {
    SampledSignal one{std::vector<double>(320, 1.0), 16000};
    const auto frames = frame_signal(one, 20, 10);
    REQUIRE(frames.size() == 2);
    CHECK_FALSE(frames[0].padded);
    CHECK(frames[1].padded);
    const auto unpadded = frame_signal(one, 20, 10, false);
    CHECK(unpadded.size() == 1);
  }
  SUBCASE("short signal") {
    SampledSignal tiny{std::vector<double>(100, 1.0), 16000};
    CHECK(frame_signal(tiny, 20, 10).size() == 1);
    CHECK_THROWS_AS(frame_signal(tiny, 20, 10, false), InputError);
  }
  SUBCASE("bad hop") {
    CHECK_THROWS_AS(frame_signal(s, 10, 20), InputError);
    CHECK_THROWS_AS(frame_signal(s, 20, 0), InputError);
  }
}

TEST_CASE("property: frame count formula over random lengths") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> len(1, 5000), flen(8, 400);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = len(rng);
    const std::size_t f = flen(rng);
    const std::size_t hop = 1 + rng() % f;
    std::vector<double> x(n, 1.0);
    const auto frames = frame_samples(x, f, hop, true);
    const std::size_t full = n >= f ? (n - f) / hop + 1 : 0;
    const std::size_t next = full * hop;
    const std::size_t expected = full + (next < n ? 1 : 0);
    CHECK(frames.size() == expected);
    std::size_t full_seen = 0;
    for (const auto& fr : frames) full_seen += fr.padded ? 0 : 1;
    CHECK(full_seen == full);
  }
}

TEST_CASE("apply_window") {
  Frame f;
  f.samples = {0.3, -1.0, 2.0, 4.0, 0.5};
  CHECK(apply_window(f, WindowKind::kRectangular).samples == f.samples);

  Frame ones;
  ones.samples.assign(64, 1.0);
  const auto w = make_window(WindowKind::kHamming, 64);
  CHECK(apply_window(ones, WindowKind::kHamming).samples == w);
  CHECK(w.front() == doctest::Approx(0.08));
  CHECK(w[0] == doctest::Approx(w[63]));

  const auto hann = apply_window(ones, WindowKind::kHann);
  CHECK(hann.samples.front() == 0.0);
  CHECK(hann.samples.back() == 0.0);
  CHECK(parse_window_kind("hann") == WindowKind::kHann);
  CHECK_THROWS_AS(parse_window_kind("kaiser"), InputError);
}

TEST_CASE("exp_weight") {
  Frame f;
  f.samples = {1.0, -2.0, 3.5, 0.25};
  SUBCASE("unit radius is the identity") {
    CHECK(exp_weight(f, 1.0).samples == f.samples);
  }
  SUBCASE("weight at k = 319 for r = 0.99") {
    const RadialWeights w(0.99, 320);
    CHECK(w.values()[319] == doctest::Approx(std::pow(0.99, -319.0)).epsilon(1e-12));
    CHECK(w.values()[319] == doctest::Approx(24.6816).epsilon(1e-5));
  }
  SUBCASE("a^k input with r = a becomes constant") {
    const double a = 0.95;
    std::vector<double> x(200);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = std::pow(a, static_cast<double>(k));
    const auto y = exp_weight(x, a);
    for (double v : y) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("range") {
    CHECK_THROWS_WITH_AS(exp_weight(f, 0.89), doctest::Contains("radius out of supported range"), InputError);
    CHECK_THROWS_AS(exp_weight(f, 1.01), InputError);
    CHECK_NOTHROW(exp_weight(f, 0.9));
  }
  SUBCASE("extreme end of range stays finite") {
    const RadialWeights w(0.9, 512);
    CHECK(std::isfinite(w.values()[511]));
    CHECK(w.values()[511] == doctest::Approx(std::pow(0.9, -511.0)).epsilon(1e-12));
  }
}

TEST_CASE("property: exp_weight is invertible") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> rad(0.9, 1.0);
  std::uniform_int_distribution<std::size_t> len(1, 512);
  for (int trial = 0; trial < 300; ++trial) {
    const double r = rad(rng);
    const auto x = oracle::white_noise(rng, len(rng));
    const RadialWeights w(r, x.size());
    const auto y = w.apply(x);
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double back = y[k] / w.values()[k];
      CHECK(std::abs(back - x[k]) <= 1e-12 * std::max(1.0, std::abs(x[k])));
    }
  }
}

TEST_CASE("preemphasize") {
  const std::vector<double> x{1.0, 2.0, 3.0};
  CHECK(preemphasize(x, 0.0) == x);
  const auto y = preemphasize(x, 0.5);
  CHECK(y == std::vector<double>{1.0, 1.5, 2.0});
}
