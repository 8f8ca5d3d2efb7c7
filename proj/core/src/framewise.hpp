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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "glottal/errors.hpp"

namespace glottal::detail {

// Per-frame inverse filters on a shifting grid. Sample n uses the filter of
// the frame whose centre is nearest; frames without a filter borrow from the
// nearest frame that has one.
class FramewiseFir {
 public:
  FramewiseFir(std::ptrdiff_t frame_len, std::ptrdiff_t hop) : frame_len_(frame_len), hop_(hop) {}

  void push(std::optional<std::vector<double>> filter) { filters_.push_back(std::move(filter)); }

  std::vector<double> apply(const std::vector<double>& x) const {
    const auto count = static_cast<std::ptrdiff_t>(filters_.size());
    std::vector<std::ptrdiff_t> source(filters_.size(), -1);
    for (std::ptrdiff_t f = 0; f < count; ++f) {
      std::ptrdiff_t best = -1;
      for (std::ptrdiff_t d = 0; d < count && best < 0; ++d) {
        if (f - d >= 0 && filters_[static_cast<std::size_t>(f - d)]) best = f - d;
        else if (f + d < count && filters_[static_cast<std::size_t>(f + d)]) best = f + d;
      }
      if (best < 0) throw AnalysisError("no analysis frame produced a usable inverse filter");
      source[static_cast<std::size_t>(f)] = best;
    }
    std::vector<double> y(x.size(), 0.0);
    for (std::size_t n = 0; n < x.size(); ++n) {
      const double pos = (static_cast<double>(n) - 0.5 * static_cast<double>(frame_len_)) / static_cast<double>(hop_);
      const auto f = std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(std::lround(pos)), 0, count - 1);
      const auto& b = *filters_[static_cast<std::size_t>(source[static_cast<std::size_t>(f)])];
      double acc = 0.0;
      const std::size_t taps = std::min(b.size(), n + 1);
      for (std::size_t m = 0; m < taps; ++m) acc += b[m] * x[n - m];
      y[n] = acc;
    }
    return y;
  }

  std::size_t valid_count() const {
    return static_cast<std::size_t>(std::count_if(filters_.begin(), filters_.end(), [](const auto& f) { return f.has_value(); }));
  }
  std::size_t size() const { return filters_.size(); }

 private:
  std::ptrdiff_t frame_len_;
  std::ptrdiff_t hop_;
  std::vector<std::optional<std::vector<double>>> filters_;
};

}  // namespace glottal::detail
