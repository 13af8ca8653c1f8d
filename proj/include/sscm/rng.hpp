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

/// \file rng.hpp
/// Seeded random streams and the sampling kernel used by the generator.
///
/// The engine is Philox4x32-10, a counter-based generator: a stream is fully
/// described by (seed, stream id, block counter). Sub-streams for channel
/// realizations are obtained with `RngStream::substream(index)`; each one owns
/// a disjoint 2^64-block counter range, so results do not depend on the order
/// in which realizations are produced.
///
/// All samplers are written on top of the raw 64-bit output rather than the
/// <random> distribution objects, whose algorithms are implementation-defined.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "sscm/error.hpp"

namespace sscm {

/// Philox4x32 with 10 rounds (Salmon et al., Random123).
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr Counter block(Counter ctr, Key key) noexcept {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kW0;
                key[1] += kW1;
            }
            const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const auto lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const auto lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }

private:
    static constexpr std::uint32_t kM0 = 0xD2511F53u;
    static constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kW0 = 0x9E3779B9u;
    static constexpr std::uint32_t kW1 = 0xBB67AE85u;
};

/// A reproducible random stream with the samplers the channel model needs.
///
/// Not thread-safe; give each worker (or each realization) its own stream.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept
        : seed_(seed), stream_(stream_id) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_; }

    /// Independent stream keyed by `index`, derived from this stream's seed.
    /// Derivation ignores how many draws the parent has made.
    RngStream substream(std::uint64_t index) const noexcept {
        return RngStream(seed_, index);
    }

    /// Raw 64-bit output.
    std::uint64_t next_u64() noexcept {
        if (cached_ == 2) {
            refill();
        }
        return buffer_[cached_++];
    }

    /// Uniform double on [0, 1) with 53 random bits.
    double next_unit() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        if (!(lo <= hi)) {
            throw InvalidRange("uniform: lo > hi");
        }
        if (lo == hi) {
            return lo;
        }
        const double x = lo + (hi - lo) * next_unit();
        // lo + (hi-lo)*u can round up to hi for u close to 1
        return x < hi ? x : std::nextafter(hi, lo);
    }

    /// Uniform integer on the closed range {lo, ..., hi}.
    std::int64_t discrete_uniform(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) {
            throw InvalidRange("discrete_uniform: lo > hi");
        }
        const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
        if (span == std::numeric_limits<std::uint64_t>::max()) {
            return static_cast<std::int64_t>(next_u64());
        }
        const std::uint64_t n = span + 1;
        // reject the top partial bucket so every residue is equally likely
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;
        std::uint64_t r = next_u64();
        while (r > limit) {
            r = next_u64();
        }
        return lo + static_cast<std::int64_t>(r % n);
    }

    double exponential(double mean) {
        if (!(mean > 0.0)) {
            throw InvalidParameter("exponential: mean must be > 0");
        }
        return -mean * std::log1p(-next_unit());
    }

    /// Box-Muller, one normal per call (no cached spare, so draws stay
    /// aligned with the counter).
    double normal(double mu, double sigma) {
        if (!(sigma >= 0.0)) {
            throw InvalidParameter("normal: sigma must be >= 0");
        }
        const double u1 = 1.0 - next_unit();  // (0, 1]
        const double u2 = next_unit();
        if (sigma == 0.0) {
            return mu;
        }
        const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
        return mu + sigma * z;
    }

    std::int64_t poisson(double mean) {
        if (!(mean > 0.0)) {
            throw InvalidParameter("poisson: mean must be > 0");
        }
        return mean < 10.0 ? poisson_multiplicative(mean) : poisson_ptrs(mean);
    }

    /// Discrete lognormal: the continuous lognormal has the given mean and
    /// standard deviation (not those of the underlying normal); the draw is
    /// rounded to the nearest integer and floored at 1.
    std::int64_t discrete_lognormal(double mean, double std_dev) {
        if (!(mean > 0.0)) {
            throw InvalidParameter("discrete_lognormal: mean must be > 0");
        }
        if (!(std_dev >= 0.0)) {
            throw InvalidParameter("discrete_lognormal: std must be >= 0");
        }
        const double ratio = (std_dev * std_dev) / (mean * mean);
        const double sigma = std::sqrt(std::log1p(ratio));
        const double mu = std::log(mean) - 0.5 * std::log1p(ratio);
        const double x = std::exp(normal(mu, sigma));
        const auto k = static_cast<std::int64_t>(std::llround(x));
        return k < 1 ? 1 : k;
    }

private:
    void refill() noexcept {
        const Philox4x32::Counter ctr = {
            static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
            static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
        const Philox4x32::Key key = {static_cast<std::uint32_t>(seed_),
                                     static_cast<std::uint32_t>(seed_ >> 32)};
        const auto out = Philox4x32::block(ctr, key);
        buffer_[0] = (std::uint64_t{out[1]} << 32) | out[0];
        buffer_[1] = (std::uint64_t{out[3]} << 32) | out[2];
        ++block_;
        cached_ = 0;
    }

    std::int64_t poisson_multiplicative(double mean) {
        const double limit = std::exp(-mean);
        std::int64_t k = 0;
        double prod = next_unit();
        while (prod > limit) {
            ++k;
            prod *= next_unit();
        }
        return k;
    }

    // Transformed rejection with squeeze (Hormann 1993), valid for mean >= 10.
    std::int64_t poisson_ptrs(double mean) {
        const double slam = std::sqrt(mean);
        const double loglam = std::log(mean);
        const double b = 0.931 + 2.53 * slam;
        const double a = -0.059 + 0.02483 * b;
        const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
        const double vr = 0.9277 - 3.6224 / (b - 2.0);
        for (;;) {
            const double u = next_unit() - 0.5;
            const double v = next_unit();
            const double us = 0.5 - std::fabs(u);
            const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
            if (us >= 0.07 && v <= vr) {
                return static_cast<std::int64_t>(k);
            }
            if (k < 0.0 || (us < 0.013 && v > us)) {
                continue;
            }
            if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
                -mean + k * loglam - std::lgamma(k + 1.0)) {
                return static_cast<std::int64_t>(k);
            }
        }
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    unsigned cached_ = 2;
};

}  // namespace sscm
