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

// Synthetic acceptance suite: ten numbered criteria, each a pass/fail check
// with fixed tolerances and a fixed random seed.

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "glottal/eval.hpp"

namespace glottal::tools {

inline constexpr int kCriterionCount = 10;

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  /// Measured values next to their thresholds.
  std::string detail;
  double seconds = 0.0;
};

/// State shared between criteria; the sweep behind criteria 5 and 6 runs once.
class AcceptanceContext {
 public:
  const SweepReport& sweep(double* seconds = nullptr);

 private:
  std::optional<SweepReport> sweep_;
  double sweep_seconds_ = 0.0;
};

std::string criterion_title(int id);

/// Runs one criterion (1..kCriterionCount). Exceptions count as failures.
CriterionResult run_criterion(int id, AcceptanceContext& context);

/// One line per result: "criterion N PASS|FAIL title: detail (t s)".
std::string format_result(const CriterionResult& result);

/// Runs `ids` (all when empty), printing each line as it completes. Returns
/// 0 when every criterion passed, 1 otherwise.
int run_selftest(const std::vector<int>& ids, std::ostream& out);

}  // namespace glottal::tools
