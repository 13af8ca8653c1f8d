// SPDX-License-Identifier: Apache-2.0
//
// sscm: 3-D statistical spatial channel simulator for 28 GHz NLOS links
// Copyright (C) 2026 The sscm authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

/// \file ensemble.hpp
/// Ensemble orchestration. Realization i always uses sub-stream i of the
/// root seed, so results do not depend on the worker count.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

#include "sscm/analysis.hpp"
#include "sscm/channel.hpp"

namespace sscm {

inline unsigned default_thread_count() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

/// Evaluates `map(i)` for i in [0, count) on `threads` workers and hands
/// the results to `sink` strictly in index order. Work proceeds in batches
/// so memory stays bounded.
template <class Map, class Sink>
void parallel_ordered(std::uint64_t count, unsigned threads, Map&& map, Sink&& sink) {
    using Result = std::invoke_result_t<Map&, std::uint64_t>;
    threads = std::max(1u, threads);
    const std::uint64_t batch = std::uint64_t{threads} * 16;
    std::vector<std::optional<Result>> slots;
    for (std::uint64_t begin = 0; begin < count; begin += batch) {
        const std::uint64_t end = std::min(count, begin + batch);
        slots.assign(static_cast<std::size_t>(end - begin), std::nullopt);
        if (threads == 1) {
            for (std::uint64_t i = begin; i < end; ++i) slots[static_cast<std::size_t>(i - begin)].emplace(map(i));
        } else {
            std::exception_ptr failure;
            std::mutex failure_mutex;
            std::vector<std::jthread> workers;
            for (unsigned w = 0; w < threads; ++w) {
                workers.emplace_back([&, w] {
                    for (std::uint64_t i = begin + w; i < end; i += threads) {
                        try {
                            slots[static_cast<std::size_t>(i - begin)].emplace(map(i));
                        } catch (...) {
                            std::lock_guard lock(failure_mutex);
                            if (!failure) failure = std::current_exception();
                            return;
                        }
                    }
                });
            }
            workers.clear();  // joins
            if (failure) std::rethrow_exception(failure);
        }
        for (auto& s : slots) sink(std::move(*s));
    }
}

/// Calls `sink(realization)` for every realization, in index order.
template <class Sink>
void for_each_realization(const ModelParams& params, std::uint64_t seed, std::uint64_t count, unsigned threads,
                          Sink&& sink) {
    params.validate();
    parallel_ordered(
        count, threads, [&](std::uint64_t i) { return generate_channel(params, seed, i); },
        std::forward<Sink>(sink));
}

/// Generates and analyzes `count` realizations and returns the finalized
/// ensemble statistics.
inline EnsembleStats run_ensemble(const ModelParams& params, std::uint64_t seed, std::uint64_t count,
                                  const AnalysisOptions& opt = {}, unsigned threads = default_thread_count()) {
    params.validate();
    EnsembleStats stats;
    parallel_ordered(
        count, threads, [&](std::uint64_t i) { return analyze_channel(generate_channel(params, seed, i), opt); },
        [&](ChannelStats&& s) { stats.add(s); });
    stats.finalize();
    return stats;
}

}  // namespace sscm
