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

#include "glottal/tools/config_file.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "glottal/tools/csv.hpp"
#include "glottal/tools/wav.hpp"

namespace glottal::tools {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
  throw ArgumentError("config key '" + std::string(key) + "': cannot parse '" + std::string(value) +
                      "' as " + std::string(expected));
}

double parse_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) bad_value(key, v, "a number");
  return out;
}

long parse_long(std::string_view key, std::string_view v) {
  long out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) bad_value(key, v, "an integer");
  return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
  const auto s = lower(v);
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  bad_value(key, v, "a boolean");
}

using Setter = std::function<void(PipelineConfig&, std::string_view, std::string_view)>;
using Getter = std::function<std::string(const PipelineConfig&)>;

struct Field {
  std::string key;
  Setter set;
  Getter get;
};

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> t;
    auto real = [&t](std::string key, double PipelineConfig::*m) {
      t.push_back({key, [m](PipelineConfig& c, std::string_view k, std::string_view v) { c.*m = parse_double(k, v); },
                   [m](const PipelineConfig& c) { return cell(c.*m); }});
    };
    auto integer = [&t](std::string key, int PipelineConfig::*m) {
      t.push_back({key,
                   [m](PipelineConfig& c, std::string_view k, std::string_view v) {
                     c.*m = static_cast<int>(parse_long(k, v));
                   },
                   [m](const PipelineConfig& c) { return cell(c.*m); }});
    };
    auto flag = [&t](std::string key, bool PipelineConfig::*m) {
      t.push_back({key, [m](PipelineConfig& c, std::string_view k, std::string_view v) { c.*m = parse_bool(k, v); },
                   [m](const PipelineConfig& c) { return std::string(c.*m ? "true" : "false"); }});
    };
    auto window = [&t](std::string key, WindowKind PipelineConfig::*m) {
      t.push_back({key, [m](PipelineConfig& c, std::string_view, std::string_view v) { c.*m = parse_window(v); },
                   [m](const PipelineConfig& c) { return window_name(c.*m); }});
    };
    integer("lp_order", &PipelineConfig::lp_order);
    real("frame_ms", &PipelineConfig::frame_ms);
    real("hop_ms", &PipelineConfig::hop_ms);
    real("lip_alpha", &PipelineConfig::lip_alpha);
    real("epsilon_frac", &PipelineConfig::epsilon_frac);
    integer("nfft_factor", &PipelineConfig::nfft_factor);
    t.push_back({"taper_len",
                 [](PipelineConfig& c, std::string_view k, std::string_view v) { c.taper_len = parse_long(k, v); },
                 [](const PipelineConfig& c) { return cell(c.taper_len); }});
    flag("cepstral_taper", &PipelineConfig::cepstral_taper);
    window("lp_window", &PipelineConfig::lp_window);
    window("iaif_window", &PipelineConfig::iaif_window);
    window("analysis_window", &PipelineConfig::analysis_window);
    t.push_back({"region", [](PipelineConfig& c, std::string_view, std::string_view v) { c.region = parse_region(v); },
                 [](const PipelineConfig& c) { return region_name(c.region); }});
    flag("window_compensation", &PipelineConfig::window_compensation);
    integer("iaif_vt_order", &PipelineConfig::iaif_vt_order);
    integer("iaif_source_order", &PipelineConfig::iaif_source_order);
    real("min_f0", &PipelineConfig::min_f0);
    real("max_f0", &PipelineConfig::max_f0);
    return t;
  }();
  return table;
}

}  // namespace

WindowKind parse_window(std::string_view name) {
  const auto s = lower(trim(name));
  if (s == "hamming") return WindowKind::Hamming;
  if (s == "blackman") return WindowKind::Blackman;
  if (s == "half_blackman_left") return WindowKind::HalfBlackmanLeft;
  if (s == "rectangular") return WindowKind::Rectangular;
  throw ArgumentError("unknown window '" + std::string(name) +
                      "' (expected hamming, blackman, half_blackman_left or rectangular)");
}

std::string window_name(WindowKind kind) {
  switch (kind) {
    case WindowKind::Hamming: return "hamming";
    case WindowKind::Blackman: return "blackman";
    case WindowKind::HalfBlackmanLeft: return "half_blackman_left";
    case WindowKind::Rectangular: return "rectangular";
  }
  return "unknown";
}

AnalysisRegion parse_region(std::string_view name) {
  const auto s = lower(trim(name));
  if (s == "gci_span") return AnalysisRegion::GciSpan;
  if (s == "gci_centred") return AnalysisRegion::GciCentred;
  throw ArgumentError("unknown region '" + std::string(name) + "' (expected gci_span or gci_centred)");
}

std::string region_name(AnalysisRegion region) {
  return region == AnalysisRegion::GciSpan ? "gci_span" : "gci_centred";
}

void apply_config_entry(PipelineConfig& config, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  for (const auto& f : fields()) {
    if (f.key == key) {
      f.set(config, key, value);
      return;
    }
  }
  throw ArgumentError("unknown config key '" + std::string(key) + "'");
}

void apply_config_text(PipelineConfig& config, std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ArgumentError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    try {
      apply_config_entry(config, line.substr(0, eq), line.substr(eq + 1));
    } catch (const ArgumentError& e) {
      throw ArgumentError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void apply_config_file(PipelineConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  apply_config_text(config, ss.str());
}

std::string render_config(const PipelineConfig& config) {
  std::string out;
  for (const auto& f : fields()) out += f.key + "=" + f.get(config) + "\n";
  return out;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& f : fields()) k.push_back(f.key);
    return k;
  }();
  return keys;
}

}  // namespace glottal::tools
