// SPDX-License-Identifier: Apache-2.0
//
// lscran: scaling-law laboratory for large-scale cloud radio access networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "lscran/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "lscran/rng.hpp"

namespace lscran {

ChannelRealization draw_channels(const NetworkInstance& net,
                                 std::uint64_t seed) {
    RandomStream rng(derive_seed(seed, {10}));
    ChannelRealization ch;
    ch.h.set_size(net.l * net.m, net.k);
    std::complex<double>* ptr = ch.h.memptr();
    const arma::uword n = ch.h.n_elem;
    for (arma::uword i = 0; i < n; ++i) ptr[i] = rng.cnormal();
    return ch;
}

EstimatedChannels estimate(const NetworkInstance& net,
                           const ChannelRealization& ch, double p_ul,
                           std::uint64_t seed) {
    if (!(p_ul > 0.0) || !std::isfinite(p_ul))
        throw std::invalid_argument("p_ul must be positive");

    const long long L = net.l, M = net.m, K = net.k, T = net.t;
    RandomStream noise(derive_seed(seed, {11}));

    EstimatedChannels est;
    est.h_hat.zeros(L * M, K);
    est.phi.zeros(L, K);

    arma::cx_mat s(M, T);   // pilot-projected vectors at the current BS
    arma::vec denom(T);

    for (long long l = 0; l < L; ++l) {
        // one noise vector per (BS, pilot); co-pilot users share it
        for (long long p = 0; p < T; ++p)
            for (long long i = 0; i < M; ++i) s(i, p) = noise.cnormal();
        denom.ones();
        for (long long j = 0; j < K; ++j) {
            const long long p = net.pilot_of[j] - 1;
            const double w = p_ul * net.beta(l, j);
            s.col(p) += std::sqrt(w) * ch.h.col(j).rows(l * M, l * M + M - 1);
            denom(p) += w;
        }
        for (unsigned k : net.users_of_bs[l]) {
            const long long p = net.pilot_of[k] - 1;
            const double w = p_ul * net.beta(l, k);
            est.phi(l, k) = w / denom(p);
            est.h_hat.col(k).rows(l * M, l * M + M - 1) =
                (std::sqrt(w) / denom(p)) * s.col(p);
        }
    }
    return est;
}

EstimatedChannels genie_estimate(const NetworkInstance& net,
                                 const ChannelRealization& ch) {
    const long long L = net.l, M = net.m, K = net.k;
    EstimatedChannels est;
    est.genie = true;
    est.h_hat.zeros(L * M, K);
    est.phi.zeros(L, K);
    for (long long k = 0; k < K; ++k) {
        for (unsigned l : net.assoc[k]) {
            est.h_hat.col(k).rows(l * M, l * M + M - 1) =
                ch.h.col(k).rows(l * M, l * M + M - 1);
            est.phi(l, k) = 1.0;
        }
    }
    return est;
}

}  // namespace lscran
