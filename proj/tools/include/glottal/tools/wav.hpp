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

// Minimal RIFF/WAVE reader and writer: PCM 16-bit and IEEE float 32-bit,
// one or two channels.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "glottal/errors.hpp"

namespace glottal::tools {

/// File could not be read or written, or has an unsupported format.
class IoError : public Error {
 public:
  using Error::Error;
};

enum class WavEncoding { Pcm16, Float32 };

struct WavData {
  double rate = 0.0;
  WavEncoding encoding = WavEncoding::Float32;
  /// channels[c][n], values nominally in [-1, 1].
  std::vector<std::vector<double>> channels;

  std::size_t frames() const { return channels.empty() ? 0 : channels.front().size(); }
};

/// Sample rates accepted on input.
inline constexpr double kMinWavRate = 8000.0;
inline constexpr double kMaxWavRate = 48000.0;

WavData read_wav(const std::filesystem::path& path);

/// Writes atomically (temporary file, then rename). PCM16 samples are
/// clipped to [-1, 1) and rounded.
void write_wav(const std::filesystem::path& path, const WavData& wav);

/// Human-readable description of a format tag, for error messages.
std::string describe_wav_format(std::uint16_t format_tag, std::uint16_t bits);

}  // namespace glottal::tools
