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

// Plain-text key=value configuration mirroring PipelineConfig.
//
//   # comment
//   lp_order = 19
//   analysis_window = blackman

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "glottal/pipeline.hpp"

namespace glottal::tools {

/// Sets one field from its textual value. Throws ArgumentError for unknown
/// keys or unparsable values.
void apply_config_entry(PipelineConfig& config, std::string_view key, std::string_view value);

/// Applies every entry of `text`; errors name the line number.
void apply_config_text(PipelineConfig& config, std::string_view text);

/// Reads and applies a file. Missing files raise IoError.
void apply_config_file(PipelineConfig& config, const std::filesystem::path& path);

/// Every field as key=value lines, in a fixed order.
std::string render_config(const PipelineConfig& config);

/// Keys accepted by apply_config_entry.
const std::vector<std::string>& config_keys();

WindowKind parse_window(std::string_view name);
std::string window_name(WindowKind kind);
AnalysisRegion parse_region(std::string_view name);
std::string region_name(AnalysisRegion region);

}  // namespace glottal::tools
