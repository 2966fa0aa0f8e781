// SPDX-License-Identifier: Apache-2.0
//
// lscran: scaling-law laboratory for large-scale cloud radio access networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef LSCRAN_CHANNEL_HPP
#define LSCRAN_CHANNEL_HPP

#include <armadillo>
#include <cstdint>

#include "lscran/network.hpp"

namespace lscran {

// Short-term CSI. h is (L*M) x K; rows l*M..l*M+M-1 of column k hold the
// M-vector h_lk with i.i.d. unit-variance circular Gaussian entries. The
// full channel is g_lk = sqrt(beta_lk) h_lk.
struct ChannelRealization {
    arma::cx_mat h;
};

ChannelRealization draw_channels(const NetworkInstance& net,
                                 std::uint64_t seed);

// MMSE estimates from the UL training phase. h_hat holds hhat_lk in the
// same layout as ChannelRealization::h, zero outside the association;
// phi(l,k) is the estimation-quality coefficient phi_lkk in [0,1] (the
// conditional variance of each hhat_lk entry). In genie mode h_hat equals
// h on associated pairs and phi is 1 there.
struct EstimatedChannels {
    arma::cx_mat h_hat;
    arma::mat phi;
    bool genie = false;
};

// Builds hhat_lk directly from the estimator's decomposition: the
// pilot-projected vector at BS l on pilot p is
//   s_lp = sum_{j: pi_j = p} sqrt(P beta_lj) h_lj + v_lp,
// with one noise vector v_lp per (BS, pilot) shared by co-pilot users, and
//   hhat_lk = sqrt(P beta_lk) / D_lp * s_lp,  D_lp = sum_{j: pi_j=p} P beta_lj + 1.
// Contaminators enter regardless of association; estimates are produced for
// associated pairs only. p_ul is the common per-user UL power (> 0).
EstimatedChannels estimate(const NetworkInstance& net,
                           const ChannelRealization& ch, double p_ul,
                           std::uint64_t seed);

// Perfect-CSI bypass: h_hat = h on associated pairs.
EstimatedChannels genie_estimate(const NetworkInstance& net,
                                 const ChannelRealization& ch);

}  // namespace lscran

#endif  // LSCRAN_CHANNEL_HPP
