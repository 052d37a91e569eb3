// Copyright 2026 The qfc Authors
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
#ifndef QFC_RUNNER_PARALLEL_H_
#define QFC_RUNNER_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace qfc::runner {

// Calls fn(i) for i in [0, n) on up to threads workers. Indices are
// handed out in contiguous chunks; results must be written per index. The
// first exception thrown by any call is rethrown after all workers join.
void ParallelFor(std::size_t n, int threads,
                 const std::function<void(std::size_t)>& fn);

// Hardware concurrency, at least 1.
int DefaultThreads();

}  // namespace qfc::runner

#endif  // QFC_RUNNER_PARALLEL_H_
