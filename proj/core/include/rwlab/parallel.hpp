// Copyright 2026 The rwlab Authors
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

#ifndef RWLAB_PARALLEL_HPP
#define RWLAB_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace rwlab {

/// Worker cap from RWLAB_THREADS (default: hardware concurrency, at least 1).
std::size_t worker_count();

/// Calls body(k) for k in [0, count) across up to worker_count() threads.
/// Work items must be independent; the first exception thrown is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace rwlab

#endif  // RWLAB_PARALLEL_HPP
