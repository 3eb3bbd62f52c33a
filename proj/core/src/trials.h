// Copyright 2026 The tpd Authors.
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

// Runs independent randomized trials, optionally on several threads, and
// reports the smallest trial index that succeeds. The index does not depend
// on the thread count because every trial is seeded by its own index.

#ifndef TPD_SRC_TRIALS_H_
#define TPD_SRC_TRIALS_H_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

namespace tpd::internal {

// `make_worker()` returns a callable bool(uint64_t trial); each thread gets
// its own so workers may keep scratch buffers.
template <typename MakeWorker>
std::optional<uint64_t> FirstSuccessfulTrial(uint64_t num_trials, int threads,
                                             MakeWorker make_worker) {
  if (threads <= 1 || num_trials < 2) {
    auto worker = make_worker();
    for (uint64_t t = 0; t < num_trials; ++t) {
      if (worker(t)) return t;
    }
    return std::nullopt;
  }
  const uint64_t stride = static_cast<uint64_t>(threads);
  std::atomic<uint64_t> found{UINT64_MAX};
  std::vector<std::thread> pool;
  for (uint64_t k = 0; k < stride; ++k) {
    pool.emplace_back([&, k] {
      auto worker = make_worker();
      for (uint64_t t = k; t < num_trials; t += stride) {
        if (t > found.load(std::memory_order_relaxed)) return;
        if (worker(t)) {
          uint64_t seen = found.load();
          while (t < seen && !found.compare_exchange_weak(seen, t)) {
          }
          return;
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  const uint64_t t = found.load();
  if (t == UINT64_MAX) return std::nullopt;
  return t;
}

}  // namespace tpd::internal

#endif  // TPD_SRC_TRIALS_H_
