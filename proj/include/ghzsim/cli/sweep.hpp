// Copyright 2026 The ghzsim Authors
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

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ghzsim::cli {

enum class AxisScale { Linear, Log };

inline AxisScale parse_axis_scale(const std::string &s) {
    if (s == "linear") {
        return AxisScale::Linear;
    }
    if (s == "log") {
        return AxisScale::Log;
    }
    throw std::invalid_argument("axis scale must be 'linear' or 'log', got '" + s + "'");
}

struct SweepAxis {
    std::string name;
    double min = 0;
    double max = 1;
    size_t steps = 2;
    AxisScale scale = AxisScale::Linear;

    void validate() const {
        if (steps < 2) {
            throw std::invalid_argument("axis " + name + ": need at least 2 steps");
        }
        if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
            throw std::invalid_argument("axis " + name + ": bounds must be finite with min < max");
        }
        if (scale == AxisScale::Log && !(min > 0)) {
            throw std::invalid_argument("axis " + name + ": log scale needs positive bounds");
        }
    }

    /// Grid values; the end points are hit exactly.
    std::vector<double> values() const {
        validate();
        std::vector<double> v(steps);
        const double last = static_cast<double>(steps - 1);
        for (size_t i = 0; i < steps; i++) {
            const double t = static_cast<double>(i) / last;
            if (scale == AxisScale::Linear) {
                v[i] = min + (max - min) * t;
            } else {
                v[i] = min * std::pow(max / min, t);
            }
        }
        v.back() = max;
        return v;
    }
};

/// Cartesian product of axes; the last axis varies fastest.
struct SweepGrid {
    std::vector<SweepAxis> axes;

    size_t size() const {
        size_t n = 1;
        for (const auto &a : axes) {
            a.validate();
            n *= a.steps;
        }
        return n;
    }

    std::vector<std::vector<double>> points() const {
        std::vector<std::vector<double>> values;
        for (const auto &a : axes) {
            values.push_back(a.values());
        }
        std::vector<std::vector<double>> out;
        const size_t total = size();
        out.reserve(total);
        for (size_t k = 0; k < total; k++) {
            std::vector<double> p(axes.size());
            size_t rest = k;
            for (size_t d = axes.size(); d-- > 0;) {
                p[d] = values[d][rest % axes[d].steps];
                rest /= axes[d].steps;
            }
            out.push_back(std::move(p));
        }
        return out;
    }
};

/// Worker count: GHZSIM_THREADS if set to a positive integer, else the hardware count.
inline size_t worker_count() {
    if (const char *env = std::getenv("GHZSIM_THREADS")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<size_t>(v);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Evaluates fn(0..count-1) on up to `workers` threads. Results land at their
/// index, so the output does not depend on scheduling. The first exception
/// thrown by any task is rethrown.
template <typename T>
std::vector<T> parallel_map(size_t count, const std::function<T(size_t)> &fn, size_t workers = worker_count()) {
    std::vector<T> out(count);
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (size_t i = next++; i < count; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = count;
            }
        }
    };
    workers = std::min(workers, count);
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (size_t w = 0; w < workers; w++) {
            pool.emplace_back(work);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return out;
}

}  // namespace ghzsim::cli
