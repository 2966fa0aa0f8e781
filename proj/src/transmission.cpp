// SPDX-License-Identifier: Apache-2.0
//
// lscran: scaling-law laboratory for large-scale cloud radio access networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "lscran/transmission.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lscran/errors.hpp"

namespace lscran {

namespace {

constexpr double kRcondFloor = 1e-12;  // condition estimate cap of 1e12

void zero_nonassociated_blocks(arma::cx_mat& f, const NetworkInstance& net) {
    const long long M = net.m;
    arma::cx_mat masked(f.n_rows, f.n_cols, arma::fill::zeros);
    for (long long k = 0; k < net.k; ++k)
        for (unsigned l : net.assoc[k])
            masked.col(k).rows(l * M, l * M + M - 1) =
                f.col(k).rows(l * M, l * M + M - 1);
    f = std::move(masked);
}

arma::cx_mat gram_inverse(const arma::cx_mat& a) {
    const arma::cx_mat gram = a.t() * a;
    const double rc = arma::rcond(gram);
    if (!(rc > kRcondFloor))
        throw IllConditionedGram("ZF Gram system condition estimate above 1e12");
    arma::cx_mat w;
    if (!arma::inv_sympd(w, gram))
        throw IllConditionedGram("ZF Gram system is not positive definite");
    return w;
}

LinkMetrics metrics_from_row(const arma::cx_rowvec& psi_row,
                             const arma::vec& q, unsigned k,
                             bool interference_free) {
    LinkMetrics lm;
    lm.q = q;
    lm.psi_kk = psi_row(k);
    lm.snr = q(k) * std::norm(psi_row(k));
    if (!interference_free) {
        double itf = 0.0;
        for (arma::uword j = 0; j < psi_row.n_elem; ++j)
            if (j != k) itf += q(j) * std::norm(psi_row(j));
        lm.interference = itf;
    }
    lm.sir = lm.interference > 0.0
                 ? lm.snr / lm.interference
                 : std::numeric_limits<double>::infinity();
    lm.sinr = lm.snr / (lm.interference + 1.0);
    return lm;
}

}  // namespace

arma::cx_mat stack_scaled(const NetworkInstance& net, const arma::cx_mat& h,
                          bool associated_only) {
    const long long L = net.l, M = net.m, K = net.k;
    arma::cx_mat a(L * M, K, arma::fill::zeros);
    for (long long k = 0; k < K; ++k) {
        if (associated_only) {
            for (unsigned l : net.assoc[k])
                a.col(k).rows(l * M, l * M + M - 1) =
                    std::sqrt(net.beta(l, k)) *
                    h.col(k).rows(l * M, l * M + M - 1);
        } else {
            for (long long l = 0; l < L; ++l)
                a.col(k).rows(l * M, l * M + M - 1) =
                    std::sqrt(net.beta(l, k)) *
                    h.col(k).rows(l * M, l * M + M - 1);
        }
    }
    return a;
}

Precoder build_precoder(Operation op, const EstimatedChannels& est,
                        const NetworkInstance& net) {
    Precoder pre;
    pre.operation = op;
    arma::cx_mat a = stack_scaled(net, est.h_hat, true);
    if (op == Operation::IF || op == Operation::MRT) {
        pre.f = std::move(a);
        return pre;
    }
    if (net.n_realized < net.k)
        throw std::invalid_argument("ZF requires realized N >= K");
    const arma::cx_mat w = gram_inverse(a);
    pre.f = a * w;
    if (net.n_pa < net.l) zero_nonassociated_blocks(pre.f, net);
    return pre;
}

arma::vec allocate_power(const Precoder& pre, double p_dl_target) {
    if (!(p_dl_target >= 0.0) || !std::isfinite(p_dl_target))
        throw std::invalid_argument("p_dl_target must be non-negative");
    const arma::uword k = pre.f.n_cols;
    arma::vec q(k);
    for (arma::uword j = 0; j < k; ++j) {
        const double n2 = arma::accu(arma::square(arma::abs(pre.f.col(j))));
        if (!(n2 > 0.0))
            throw ZeroNormPrecoder("user has an all-zero precoder column");
        q(j) = p_dl_target / n2;
    }
    return q;
}

arma::cx_mat effective_channels(const Precoder& pre,
                                const ChannelRealization& ch,
                                const NetworkInstance& net) {
    const arma::cx_mat a_true = stack_scaled(net, ch.h, false);
    return a_true.t() * pre.f;
}

LinkMetrics measure(Operation op, const NetworkInstance& net,
                    const ChannelRealization& ch,
                    const EstimatedChannels& est, double p_dl_target) {
    return evaluate_operations({op}, net, ch, est, p_dl_target).front();
}

std::vector<LinkMetrics> evaluate_operations(const std::vector<Operation>& ops,
                                             const NetworkInstance& net,
                                             const ChannelRealization& ch,
                                             const EstimatedChannels& est,
                                             double p_dl_target) {
    const bool want_mrt_like =
        std::any_of(ops.begin(), ops.end(), [](Operation o) {
            return o != Operation::ZF;
        });
    const bool want_zf = std::any_of(ops.begin(), ops.end(), [](Operation o) {
        return o == Operation::ZF;
    });

    const arma::cx_mat a = stack_scaled(net, est.h_hat, true);
    const arma::cx_mat a_true = stack_scaled(net, ch.h, false);
    // psi for the conjugate precoder; also the left factor of the ZF psi
    const arma::cx_mat psi_mrt = a_true.t() * a;
    const unsigned k0 = net.typical_user;

    LinkMetrics mrt, ideal, zf;
    if (want_mrt_like) {
        arma::vec q(net.k);
        for (long long j = 0; j < net.k; ++j) {
            const double n2 = arma::accu(arma::square(arma::abs(a.col(j))));
            if (!(n2 > 0.0))
                throw ZeroNormPrecoder("user has an all-zero precoder column");
            q(j) = p_dl_target / n2;
        }
        mrt = metrics_from_row(psi_mrt.row(k0), q, k0, false);
        ideal = metrics_from_row(psi_mrt.row(k0), q, k0, true);
    }
    if (want_zf) {
        if (net.n_realized < net.k)
            throw std::invalid_argument("ZF requires realized N >= K");
        const arma::cx_mat w = gram_inverse(a);
        if (net.n_pa == net.l) {
            // full association: column norms are the Gram inverse diagonal
            arma::vec q(net.k);
            for (long long j = 0; j < net.k; ++j) {
                const double n2 = w(j, j).real();
                if (!(n2 > 0.0))
                    throw ZeroNormPrecoder(
                        "user has an all-zero precoder column");
                q(j) = p_dl_target / n2;
            }
            const arma::cx_rowvec psi_row = psi_mrt.row(k0) * w;
            zf = metrics_from_row(psi_row, q, k0, false);
        } else {
            arma::cx_mat f = a * w;
            zero_nonassociated_blocks(f, net);
            arma::vec q(net.k);
            for (long long j = 0; j < net.k; ++j) {
                const double n2 =
                    arma::accu(arma::square(arma::abs(f.col(j))));
                if (!(n2 > 0.0))
                    throw ZeroNormPrecoder(
                        "user has an all-zero precoder column");
                q(j) = p_dl_target / n2;
            }
            const arma::cx_rowvec psi_row = a_true.col(k0).t() * f;
            zf = metrics_from_row(psi_row, q, k0, false);
        }
    }

    std::vector<LinkMetrics> out;
    out.reserve(ops.size());
    for (Operation op : ops) {
        switch (op) {
            case Operation::IF: out.push_back(ideal); break;
            case Operation::MRT: out.push_back(mrt); break;
            case Operation::ZF: out.push_back(zf); break;
        }
    }
    return out;
}

}  // namespace lscran
