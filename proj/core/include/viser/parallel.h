// Copyright 2026 The VISER Authors
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

#ifndef VISER_PARALLEL_H_
#define VISER_PARALLEL_H_

#include <functional>

namespace viser {

// Worker count for `requested` threads: a positive request is honored as-is;
// 0 means the VISER_THREADS environment variable when it is a positive
// integer, else std::thread::hardware_concurrency().
int ResolveThreads(int requested);

// Calls fn(i) for every i in [0, count) using up to `threads` workers
// (after ResolveThreads). Blocks until all calls return; the first exception
// thrown by any call is rethrown here.
void ParallelFor(int count, int threads, const std::function<void(int)>& fn);

}  // namespace viser

#endif  // VISER_PARALLEL_H_
