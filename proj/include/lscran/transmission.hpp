// SPDX-License-Identifier: Apache-2.0
//
// lscran: scaling-law laboratory for large-scale cloud radio access networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef LSCRAN_TRANSMISSION_HPP
#define LSCRAN_TRANSMISSION_HPP

#include <armadillo>
#include <complex>
#include <vector>

#include "lscran/channel.hpp"
#include "lscran/exponent_engine.hpp"
#include "lscran/network.hpp"

namespace lscran {

// Precoding matrix, (L*M) x K in the channel layout. Columns are zero on
// non-associated (BS, user) blocks: a BS only transmits to its own users.
struct Precoder {
    Operation operation = Operation::MRT;
    arma::cx_mat f;
};

// Stacks sqrt(beta_lk) * h_lk into an (L*M) x K matrix; with the estimated
// channels this is Ghat^H (zero outside the association).
arma::cx_mat stack_scaled(const NetworkInstance& net, const arma::cx_mat& h,
                          bool associated_only);

// IF and MRT return Ghat^H. ZF solves the K x K Gram system
// (Ghat Ghat^H) W = I and returns Ghat^H W with non-associated blocks
// zeroed. Requires realized N >= K for ZF; throws IllConditionedGram when
// the Gram condition estimate exceeds 1e12.
Precoder build_precoder(Operation op, const EstimatedChannels& est,
                        const NetworkInstance& net);

// Per-user allocation hitting the radiated-power target exactly:
// Q_j = p_dl_target / sum_l ||f_lj||^2. Throws ZeroNormPrecoder if a user
// has no usable precoding energy.
arma::vec allocate_power(const Precoder& pre, double p_dl_target);

// Effective channels psi(k,j) = sum_{l in X_j} g_lk^H f_lj against the true
// channels, for all user pairs.
arma::cx_mat effective_channels(const Precoder& pre,
                                const ChannelRealization& ch,
                                const NetworkInstance& net);

// Link quality of the typical user. Noise power is 1, so snr = Q_k|psi_kk|^2,
// interference = sum_{j != k} Q_j |psi_kj|^2, sinr = snr / (interference + 1).
// 1/sinr = 1/snr + 1/sir holds exactly. For IF the interference is zero by
// construction and its power allocation comes from the MRT precoder norms.
struct LinkMetrics {
    double snr = 0.0;
    double sir = 0.0;  // +infinity when interference == 0
    double sinr = 0.0;
    double interference = 0.0;
    std::complex<double> psi_kk{};
    arma::vec q;  // per-user allocated powers
};

LinkMetrics measure(Operation op, const NetworkInstance& net,
                    const ChannelRealization& ch,
                    const EstimatedChannels& est, double p_dl_target);

// Shared-work evaluation of several operations on one realization. MRT and
// IF reuse one effective-channel product; under full association the ZF
// column norms come from the Gram inverse diagonal instead of an explicit
// precoder, which the unit tests check against the explicit path.
std::vector<LinkMetrics> evaluate_operations(const std::vector<Operation>& ops,
                                             const NetworkInstance& net,
                                             const ChannelRealization& ch,
                                             const EstimatedChannels& est,
                                             double p_dl_target);

}  // namespace lscran

#endif  // LSCRAN_TRANSMISSION_HPP
