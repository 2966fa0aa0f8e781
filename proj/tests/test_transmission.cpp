// SPDX-License-Identifier: Apache-2.0
//
// lscran: scaling-law laboratory for large-scale cloud radio access networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include <doctest.h>

#include <cmath>
#include <limits>

#include "lscran/asymptotics.hpp"
#include "lscran/errors.hpp"
#include "lscran/transmission.hpp"

using namespace lscran;

namespace {

NetworkConfig make_config(long long n, double eta_user = 0.5,
                          double ups_pa = -1.0, std::uint64_t seed = 3) {
    NetworkConfig cfg;
    cfg.n_target = n;
    cfg.params.eta_user = eta_user;
    cfg.params.upsilon_pa = ups_pa < 0 ? cfg.params.eta_bs : ups_pa;
    cfg.params.upsilon_pr = eta_user;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("single BS, single user: matched filter") {
    auto cfg = make_config(4, 0.0);
    cfg.params.eta_bs = 0.0;
    cfg.params.eta_ant = 1.0;
    cfg.params.upsilon_pa = 0.0;
    const auto net = place_and_associate(cfg);
    REQUIRE(net.l == 1);
    REQUIRE(net.k == 1);
    const auto ch = draw_channels(net, 2);
    const auto est = genie_estimate(net, ch);
    const auto pre = build_precoder(Operation::MRT, est, net);
    const arma::cx_mat g = stack_scaled(net, ch.h, false);
    CHECK(arma::norm(pre.f.col(0) - g.col(0)) == 0.0);
    const auto psi = effective_channels(pre, ch, net);
    CHECK(psi(0, 0).real() ==
          doctest::Approx(arma::accu(arma::square(arma::abs(g.col(0)))))
              .epsilon(1e-12));
}

TEST_CASE("IF and MRT share the precoder bitwise") {
    const auto net = place_and_associate(make_config(256));
    const auto ch = draw_channels(net, 4);
    const auto est = estimate(net, ch, 1.0, 5);
    const auto a = build_precoder(Operation::IF, est, net);
    const auto b = build_precoder(Operation::MRT, est, net);
    CHECK(arma::approx_equal(a.f, b.f, "absdiff", 0.0));
}

TEST_CASE("power allocation hits the target exactly") {
    const auto net = place_and_associate(make_config(256));
    const auto ch = draw_channels(net, 6);
    const auto est = estimate(net, ch, 1.0, 7);
    auto pre = build_precoder(Operation::MRT, est, net);
    const double p_dl = 2.0;
    const auto q = allocate_power(pre, p_dl);
    for (long long j = 0; j < net.k; ++j) {
        const double n2 = arma::accu(arma::square(arma::abs(pre.f.col(j))));
        CHECK(q(j) * n2 == doctest::Approx(p_dl).epsilon(1e-12));
    }
    // doubling the precoder halves the allocation
    pre.f *= std::sqrt(2.0);
    const auto q2 = allocate_power(pre, p_dl);
    for (long long j = 0; j < net.k; ++j)
        CHECK(q2(j) == doctest::Approx(0.5 * q(j)).epsilon(1e-12));
    // zero target
    const auto q0 = allocate_power(pre, 0.0);
    CHECK(arma::norm(q0) == 0.0);
    // zero column rejected
    pre.f.col(0).zeros();
    CHECK_THROWS_AS(allocate_power(pre, p_dl), ZeroNormPrecoder);
}

TEST_CASE("genie ZF nulls the interference") {
    const auto net = place_and_associate(make_config(512));
    const auto ch = draw_channels(net, 8);
    const auto est = genie_estimate(net, ch);
    const auto pre = build_precoder(Operation::ZF, est, net);
    const auto psi = effective_channels(pre, ch, net);
    for (long long k = 0; k < net.k; ++k) {
        CHECK(std::abs(psi(k, k) - 1.0) <= 1e-8);
        for (long long j = 0; j < net.k; ++j)
            if (j != k) CHECK(std::abs(psi(k, j)) <= 1e-8 * std::abs(psi(k, k)));
    }
}

TEST_CASE("zero precoder gives zero effective channels") {
    const auto net = place_and_associate(make_config(256));
    const auto ch = draw_channels(net, 9);
    Precoder pre;
    pre.operation = Operation::MRT;
    pre.f.zeros(net.l * net.m, net.k);
    const auto psi = effective_channels(pre, ch, net);
    CHECK(arma::norm(psi, "fro") == 0.0);
}

TEST_CASE("measure: harmonic identity and IF semantics") {
    const auto net = place_and_associate(make_config(512));
    const auto ch = draw_channels(net, 10);
    const auto est = estimate(net, ch, 1.0, 11);
    const double p_dl = 1.0;
    const auto mrt = measure(Operation::MRT, net, ch, est, p_dl);
    CHECK(1.0 / mrt.sinr ==
          doctest::Approx(1.0 / mrt.snr + 1.0 / mrt.sir).epsilon(1e-9));
    CHECK(mrt.sinr <= std::min(mrt.snr, mrt.sir) + 1e-15);

    const auto ideal = measure(Operation::IF, net, ch, est, p_dl);
    CHECK(ideal.interference == 0.0);
    CHECK(std::isinf(ideal.sir));
    CHECK(ideal.sinr == doctest::Approx(ideal.snr).epsilon(1e-12));
    CHECK(ideal.snr == doctest::Approx(mrt.snr).epsilon(1e-12));

    // zero DL power
    const auto off = measure(Operation::MRT, net, ch, est, 0.0);
    CHECK(off.snr == 0.0);
    CHECK(off.sinr == 0.0);
}

TEST_CASE("single user has no interference") {
    const auto net = place_and_associate(make_config(64, 0.0));
    const auto ch = draw_channels(net, 12);
    const auto est = estimate(net, ch, 1.0, 13);
    const auto m = measure(Operation::MRT, net, ch, est, 1.0);
    CHECK(m.interference == 0.0);
    CHECK(std::isinf(m.sir));
    CHECK(m.sinr == doctest::Approx(m.snr).epsilon(1e-12));
}

TEST_CASE("shared evaluation matches the explicit module path") {
    for (double ups_pa : {-1.0, 0.25}) {
        const auto net = place_and_associate(make_config(512, 0.5, ups_pa));
        const auto ch = draw_channels(net, 14);
        const auto est = estimate(net, ch, 1.0, 15);
        const double p_dl = 3.0;
        const auto fast = evaluate_operations(
            {Operation::IF, Operation::MRT, Operation::ZF}, net, ch, est, p_dl);
        // explicit path: build precoder, allocate, contract
        for (std::size_t oi = 0; oi < 3; ++oi) {
            const Operation op =
                oi == 0 ? Operation::IF : oi == 1 ? Operation::MRT : Operation::ZF;
            const auto pre = build_precoder(op, est, net);
            const auto q = allocate_power(pre, p_dl);
            const auto psi = effective_channels(pre, ch, net);
            const unsigned k = net.typical_user;
            const double snr = q(k) * std::norm(psi(k, k));
            double itf = 0.0;
            for (long long j = 0; j < net.k; ++j)
                if (unsigned(j) != k) itf += q(j) * std::norm(psi(k, j));
            if (op == Operation::IF) itf = 0.0;
            CHECK(fast[oi].snr == doctest::Approx(snr).epsilon(1e-9));
            if (op != Operation::IF)
                CHECK(fast[oi].interference ==
                      doctest::Approx(itf).epsilon(1e-9));
        }
    }
}

TEST_CASE("ZF power accounting via the Gram inverse diagonal") {
    const auto net = place_and_associate(make_config(512));
    const auto ch = draw_channels(net, 16);
    const auto est = estimate(net, ch, 1.0, 17);
    const double p_dl = 1.5;
    const auto pre = build_precoder(Operation::ZF, est, net);
    const auto q = allocate_power(pre, p_dl);
    // total radiated power is K * p_dl
    double total = 0.0;
    for (long long j = 0; j < net.k; ++j)
        total += q(j) * arma::accu(arma::square(arma::abs(pre.f.col(j))));
    CHECK(total == doctest::Approx(double(net.k) * p_dl).epsilon(1e-9));
    // fast path must agree with the explicit norms
    const auto fast = evaluate_operations({Operation::ZF}, net, ch, est, p_dl);
    const unsigned k = net.typical_user;
    CHECK(fast[0].q(k) == doctest::Approx(q(k)).epsilon(1e-9));
}

TEST_CASE("partial association zeroes foreign blocks") {
    const auto net = place_and_associate(make_config(512, 0.5, 0.25));
    REQUIRE(net.n_pa < net.l);
    const auto ch = draw_channels(net, 18);
    const auto est = estimate(net, ch, 1.0, 19);
    for (Operation op : {Operation::MRT, Operation::ZF}) {
        const auto pre = build_precoder(op, est, net);
        for (long long k = 0; k < net.k; ++k) {
            for (long long l = 0; l < net.l; ++l) {
                if (net.associated(unsigned(l), unsigned(k))) continue;
                const double n = arma::norm(
                    pre.f.col(k).rows(l * net.m, (l + 1) * net.m - 1));
                CHECK(n == 0.0);
            }
        }
    }
}

TEST_CASE("ZF requires enough antennas") {
    auto cfg = make_config(16, 1.0);  // K = 16 = N boundary is fine
    const auto net = place_and_associate(cfg);
    CHECK(net.n_realized >= net.k);
    const auto ch = draw_channels(net, 20);
    const auto est = estimate(net, ch, 1.0, 21);
    CHECK_NOTHROW(build_precoder(Operation::ZF, est, net));
}

TEST_CASE("operation ordering in median SINR") {
    // medians over seeds at a fixed size; IF >= ZF >= MRT at rho_ul >= 0
    std::vector<double> v_if, v_zf, v_mrt;
    for (std::uint64_t s = 0; s < 200; ++s) {
        const auto net = place_and_associate(make_config(256, 0.5, -1.0, 100 + s));
        const auto ch = draw_channels(net, 7000 + s);
        const auto est = estimate(net, ch, 1.0, 8000 + s);
        const auto m = evaluate_operations(
            {Operation::IF, Operation::ZF, Operation::MRT}, net, ch, est, 1.0);
        v_if.push_back(m[0].sinr);
        v_zf.push_back(m[1].sinr);
        v_mrt.push_back(m[2].sinr);
    }
    const double med_if = median(v_if);
    const double med_zf = median(v_zf);
    const double med_mrt = median(v_mrt);
    CHECK(med_if >= med_zf);
    CHECK(med_zf >= med_mrt);
}
