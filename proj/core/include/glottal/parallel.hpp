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

#include <cstddef>
#include <functional>

namespace glottal {

/// Worker count: hardware concurrency, capped by GLOTTAL_NUM_THREADS when set.
unsigned worker_count();

/// Runs body(i) for i in [0, count). Results must be written to per-index
/// slots; the call returns after every index has run. The first exception
/// thrown by any body is rethrown. Calls made from inside a body run
/// sequentially on the calling worker.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  unsigned max_workers = 0);

}  // namespace glottal
