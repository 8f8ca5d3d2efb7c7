// Copyright 2026 The Glottal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "glottal/tools/wav.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "glottal/tools/csv.hpp"

namespace glottal::tools {

namespace {

static_assert(std::endian::native == std::endian::little, "WAV I/O assumes a little-endian host");

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

template <typename T>
T load(const std::vector<char>& buf, std::size_t pos) {
  T v;
  std::memcpy(&v, buf.data() + pos, sizeof(T));
  return v;
}

template <typename T>
void store(std::string& out, T v) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, &v, sizeof(T));
  out.append(bytes, sizeof(T));
}

}  // namespace

std::string describe_wav_format(std::uint16_t format_tag, std::uint16_t bits) {
  std::string kind;
  switch (format_tag) {
    case kFormatPcm: kind = "integer PCM"; break;
    case kFormatFloat: kind = "IEEE float"; break;
    case kFormatExtensible: kind = "extensible"; break;
    default: kind = "format tag " + std::to_string(format_tag); break;
  }
  return kind + " " + std::to_string(bits) + "-bit";
}

WavData read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::vector<char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::string where = path.string() + ": ";
  if (buf.size() < 12 || std::memcmp(buf.data(), "RIFF", 4) != 0 || std::memcmp(buf.data() + 8, "WAVE", 4) != 0) {
    throw IoError(where + "not a RIFF/WAVE file");
  }

  std::uint16_t format = 0, channels = 0, bits = 0, block_align = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  std::size_t data_pos = 0, data_len = 0;
  bool have_data = false;

  std::size_t pos = 12;
  while (pos + 8 <= buf.size()) {
    const std::string id(buf.data() + pos, 4);
    const auto len = static_cast<std::size_t>(load<std::uint32_t>(buf, pos + 4));
    const std::size_t body = pos + 8;
    if (id == "fmt ") {
      if (len < 16 || body + 16 > buf.size()) throw IoError(where + "truncated fmt chunk");
      format = load<std::uint16_t>(buf, body);
      channels = load<std::uint16_t>(buf, body + 2);
      rate = load<std::uint32_t>(buf, body + 4);
      block_align = load<std::uint16_t>(buf, body + 12);
      bits = load<std::uint16_t>(buf, body + 14);
      if (format == kFormatExtensible) {
        if (len < 40 || body + 26 > buf.size()) throw IoError(where + "truncated extensible fmt chunk");
        // First two bytes of the sub-format GUID carry the real tag.
        format = load<std::uint16_t>(buf, body + 24);
      }
      have_fmt = true;
    } else if (id == "data") {
      data_pos = body;
      data_len = std::min(len, buf.size() - body);
      have_data = true;
    }
    pos = body + len + (len & 1u);
  }
  if (!have_fmt) throw IoError(where + "missing fmt chunk");
  if (!have_data) throw IoError(where + "missing data chunk");

  WavData wav;
  if (format == kFormatPcm && bits == 16) {
    wav.encoding = WavEncoding::Pcm16;
  } else if (format == kFormatFloat && bits == 32) {
    wav.encoding = WavEncoding::Float32;
  } else {
    throw IoError(where + "unsupported encoding " + describe_wav_format(format, bits) +
                  "; expected integer PCM 16-bit or IEEE float 32-bit");
  }
  if (channels < 1 || channels > 2) {
    throw IoError(where + "unsupported channel count " + std::to_string(channels) + "; expected 1 or 2");
  }
  if (rate < kMinWavRate || rate > kMaxWavRate) {
    throw IoError(where + "unsupported sample rate " + std::to_string(rate) + " Hz; expected 8000-48000");
  }
  const std::size_t bytes = bits / 8;
  if (block_align != channels * bytes) throw IoError(where + "inconsistent block alignment");

  const std::size_t frames = data_len / block_align;
  wav.rate = rate;
  wav.channels.assign(channels, std::vector<double>(frames));
  for (std::size_t n = 0; n < frames; ++n) {
    for (std::size_t c = 0; c < channels; ++c) {
      const std::size_t at = data_pos + n * block_align + c * bytes;
      double v;
      if (wav.encoding == WavEncoding::Pcm16) {
        v = static_cast<double>(load<std::int16_t>(buf, at)) / 32768.0;
      } else {
        v = static_cast<double>(load<float>(buf, at));
        if (!std::isfinite(v)) throw IoError(where + "non-finite float sample");
      }
      wav.channels[c][n] = v;
    }
  }
  return wav;
}

void write_wav(const std::filesystem::path& path, const WavData& wav) {
  if (wav.channels.empty() || wav.channels.size() > 2) throw IoError("WAV output needs 1 or 2 channels");
  const std::size_t frames = wav.frames();
  for (const auto& ch : wav.channels) {
    if (ch.size() != frames) throw IoError("WAV channels differ in length");
  }
  const auto channels = static_cast<std::uint16_t>(wav.channels.size());
  const bool pcm = wav.encoding == WavEncoding::Pcm16;
  const std::uint16_t bits = pcm ? 16 : 32;
  const std::uint16_t block = static_cast<std::uint16_t>(channels * bits / 8);
  const auto data_len = static_cast<std::uint32_t>(frames * block);
  const auto rate = static_cast<std::uint32_t>(std::lround(wav.rate));

  std::string out;
  out.reserve(44 + data_len);
  out += "RIFF";
  store<std::uint32_t>(out, 36 + data_len);
  out += "WAVEfmt ";
  store<std::uint32_t>(out, 16);
  store<std::uint16_t>(out, pcm ? kFormatPcm : kFormatFloat);
  store<std::uint16_t>(out, channels);
  store<std::uint32_t>(out, rate);
  store<std::uint32_t>(out, rate * block);
  store<std::uint16_t>(out, block);
  store<std::uint16_t>(out, bits);
  out += "data";
  store<std::uint32_t>(out, data_len);
  for (std::size_t n = 0; n < frames; ++n) {
    for (const auto& ch : wav.channels) {
      if (pcm) {
        const double scaled = std::round(std::clamp(ch[n], -1.0, 1.0) * 32768.0);
        store<std::int16_t>(out, static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0)));
      } else {
        store<float>(out, static_cast<float>(ch[n]));
      }
    }
  }
  write_file_atomic(path, out);
}

}  // namespace glottal::tools
