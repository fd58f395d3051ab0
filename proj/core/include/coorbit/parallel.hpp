// Copyright 2026 The coorbit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COORBIT_PARALLEL_HPP
#define COORBIT_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace coorbit {

/// Worker count: hardware concurrency, capped by COORBIT_THREADS when set.
unsigned worker_count();

/// Runs body(i) for i in [0, n). Each index is visited exactly once; bodies
/// must write only to index-owned storage. The first exception thrown by any
/// body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace coorbit

#endif  // COORBIT_PARALLEL_HPP
