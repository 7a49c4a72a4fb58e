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

// RIFF/WAVE reader and writer, PCM 16-bit mono only.

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "chirpmfcc/error.hpp"
#include "chirpmfcc/signal.hpp"

namespace chirpmfcc {
namespace {

std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | static_cast<std::uint32_t>(b[at + 1]) << 8 |
         static_cast<std::uint32_t>(b[at + 2]) << 16 |
         static_cast<std::uint32_t>(b[at + 3]) << 24;
}

std::uint16_t read_u16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | b[at + 1] << 8);
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t at, const char* tag) {
  return std::memcmp(b.data() + at, tag, 4) == 0;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

SampledSignal decode_wav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12) throw InputError("truncated WAV file: missing RIFF header");
  if (!tag_is(bytes, 0, "RIFF") || !tag_is(bytes, 8, "WAVE")) {
    throw InputError("not a RIFF/WAVE file");
  }

  bool have_fmt = false;
  std::uint16_t channels = 0;
  std::uint32_t rate = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint32_t size = read_u32(bytes, pos + 4);
    const std::size_t body = pos + 8;
    if (tag_is(bytes, pos, "fmt ")) {
      if (size < 16 || body + 16 > bytes.size()) throw InputError("truncated WAV fmt chunk");
      const std::uint16_t format = read_u16(bytes, body);
      channels = read_u16(bytes, body + 2);
      rate = read_u32(bytes, body + 4);
      const std::uint16_t bits = read_u16(bytes, body + 14);
      if (format != 1 || bits != 16) {
        std::ostringstream os;
        os << "unsupported encoding: format tag " << format << ", " << bits
           << " bits per sample (PCM 16-bit required)";
        throw InputError(os.str());
      }
      if (channels != 1) {
        std::ostringstream os;
        os << "unsupported channel count: " << channels << " (mono required)";
        throw InputError(os.str());
      }
      if (rate == 0) throw InputError("WAV header declares a zero sample rate");
      have_fmt = true;
    } else if (tag_is(bytes, pos, "data")) {
      if (!have_fmt) throw InputError("WAV data chunk precedes fmt chunk");
      if (body + size > bytes.size()) throw InputError("truncated WAV file: data chunk incomplete");
      if (size % 2 != 0) throw InputError("truncated WAV file: odd PCM16 byte count");
      if (size == 0) throw InputError("WAV file contains no samples");
      SampledSignal out;
      out.sample_rate = static_cast<int>(rate);
      out.samples.resize(size / 2);
      for (std::size_t i = 0; i < out.samples.size(); ++i) {
        const auto raw = static_cast<std::int16_t>(read_u16(bytes, body + 2 * i));
        out.samples[i] = static_cast<double>(raw) / 32768.0;
      }
      return out;
    }
    pos = body + size + (size & 1U);
  }
  throw InputError(have_fmt ? "truncated WAV file: no data chunk" : "truncated WAV file: no fmt chunk");
}

SampledSignal load_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return decode_wav(bytes);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> encode_wav(const SampledSignal& signal) {
  signal.validate();
  const auto data_bytes = static_cast<std::uint32_t>(signal.samples.size() * 2);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, 1);
  put_u16(out, 1);
  put_u32(out, static_cast<std::uint32_t>(signal.sample_rate));
  put_u32(out, static_cast<std::uint32_t>(signal.sample_rate) * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  put_tag(out, "data");
  put_u32(out, data_bytes);
  for (double s : signal.samples) {
    const double scaled = std::round(s * 32768.0);
    const auto q = static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
    put_u16(out, static_cast<std::uint16_t>(q));
  }
  return out;
}

void save_wav(const std::filesystem::path& path, const SampledSignal& signal) {
  const auto bytes = encode_wav(signal);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

}  // namespace chirpmfcc
