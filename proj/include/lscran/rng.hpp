// SPDX-License-Identifier: Apache-2.0
//
// lscran: scaling-law laboratory for large-scale cloud radio access networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef LSCRAN_RNG_HPP
#define LSCRAN_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace lscran {

// splitmix64 finalizer; used to derive independent stream seeds from a
// master seed and a counter path, so results do not depend on scheduling.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = splitmix64(master ^ 0x5851f42d4c957f2dULL);
    for (std::uint64_t id : path) s = splitmix64(s ^ (id + 0x9e3779b97f4a7c15ULL));
    return s;
}

// One independent random stream. Every consumer owns its stream, seeded by
// derive_seed, so draws never interleave across threads or call sites.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

    double uniform() { return uni_(gen_); }           // U[0,1)
    double normal() { return norm_(gen_); }           // N(0,1)
    std::complex<double> cnormal() {                  // CN(0,1)
        return {norm_(gen_) * kInvSqrt2, norm_(gen_) * kInvSqrt2};
    }
    // uniform integer in [lo, hi]
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
        return std::uniform_int_distribution<std::uint64_t>(lo, hi)(gen_);
    }
    long long poisson(double mean) {
        return std::poisson_distribution<long long>(mean)(gen_);
    }

    std::mt19937_64& engine() { return gen_; }

  private:
    static constexpr double kInvSqrt2 = 0.70710678118654752440;
    std::mt19937_64 gen_;
    std::uniform_real_distribution<double> uni_{0.0, 1.0};
    std::normal_distribution<double> norm_{0.0, 1.0};
};

}  // namespace lscran

#endif  // LSCRAN_RNG_HPP
