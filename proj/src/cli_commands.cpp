// SPDX-License-Identifier: Apache-2.0
//
// lscran: scaling-law laboratory for large-scale cloud radio access networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "lscran/cli_commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "lscran/errors.hpp"
#include "lscran/rng.hpp"

namespace lscran {

std::string format_value(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int cmd_theory(const TheoryOptions& opt, std::ostream& out) {
    validate(opt.params);
    for (Operation op : opt.operations) {
        const ExponentReport r = exponent_report(op, opt.params);
        out << "operation=" << to_string(op) << " regime=" << to_string(r.regime)
            << " xi=" << format_value(r.xi) << " delta=" << format_value(r.delta)
            << " snr=" << format_value(r.snr) << " sir=" << format_value(r.sir)
            << " sinr=" << format_value(r.sinr) << '\n';
    }
    return kExitOk;
}

int cmd_contour(const ContourOptions& opt, std::ostream& out) {
    validate(opt.params);
    if (opt.steps < 1) throw std::invalid_argument("steps must be positive");
    if (!(std::isfinite(opt.rho_min) && std::isfinite(opt.rho_max) &&
          std::isfinite(opt.tau_min) && std::isfinite(opt.tau_max)))
        throw std::invalid_argument("grid ranges must be finite");
    // a collapsed axis (min == max) contributes a single grid line
    const int n_rho = opt.rho_min == opt.rho_max ? 1 : std::max(2, opt.steps);
    const int n_tau = opt.tau_min == opt.tau_max ? 1 : std::max(2, opt.steps);
    out << "rho,tau,operation,region,zeta\n";
    for (Operation op : opt.operations) {
        for (int i = 0; i < n_rho; ++i) {
            const double rho =
                n_rho == 1 ? opt.rho_min
                           : opt.rho_min + (opt.rho_max - opt.rho_min) * i /
                                               double(n_rho - 1);
            for (int j = 0; j < n_tau; ++j) {
                const double tau =
                    n_tau == 1 ? opt.tau_min
                               : opt.tau_min + (opt.tau_max - opt.tau_min) *
                                                   j / double(n_tau - 1);
                const TradeoffPoint pt =
                    supportable_users(op, rho, tau, opt.params);
                out << format_value(pt.rho) << ',' << format_value(pt.tau)
                    << ',' << to_string(op) << ',' << to_string(pt.region)
                    << ',' << format_value(pt.zeta_user) << '\n';
            }
        }
    }
    return kExitOk;
}

void write_trials_csv(const std::vector<TrialRow>& rows, std::ostream& os) {
    os << "n_target,n_realized,operation,statistic,trial,value\n";
    for (const TrialRow& r : rows) {
        const Statistic stats[3] = {Statistic::SNR, Statistic::SIR,
                                    Statistic::SINR};
        const double vals[3] = {r.snr, r.sir, r.sinr};
        for (int i = 0; i < 3; ++i) {
            os << r.n_target << ',' << r.n_realized << ','
               << to_string(r.operation) << ',' << to_string(stats[i]) << ','
               << r.trial << ',' << format_value(vals[i]) << '\n';
        }
    }
}

void write_summary_csv(const SweepResult& res, const ScalingParams& params,
                       std::ostream& os) {
    os << "operation,statistic,slope,intercept,r2,theory_exponent,abs_error\n";
    for (const OperationFits& of : res.fits) {
        const ExponentReport theory = exponent_report(of.operation, params);
        auto row = [&](const ExponentFit& fit, double expected) {
            os << to_string(of.operation) << ',' << to_string(fit.statistic)
               << ',' << format_value(fit.slope) << ','
               << format_value(fit.intercept) << ','
               << format_value(fit.r_squared) << ',' << format_value(expected)
               << ',' << format_value(std::fabs(fit.slope - expected)) << '\n';
        };
        row(of.snr, theory.snr);
        if (of.sir) row(*of.sir, theory.sir);
        row(of.sinr, theory.sinr);
    }
}

int cmd_simulate(const SimulateOptions& opt, std::ostream& log) {
    validate(opt.plan);
    const std::string trials_path = opt.output_prefix + "_trials.csv";
    const std::string summary_path = opt.output_prefix + "_summary.csv";

    auto open = [](const std::string& path) {
        std::ofstream os(path, std::ios::binary);
        if (!os) throw std::invalid_argument("cannot write " + path);
        return os;
    };

    try {
        const SweepResult res = run_sweep(opt.plan);
        {
            auto os = open(trials_path);
            write_trials_csv(res.trials, os);
        }
        {
            auto os = open(summary_path);
            write_summary_csv(res, opt.plan.params, os);
        }
        log << "wrote " << trials_path << " and " << summary_path;
        if (res.discarded_realizations > 0)
            log << " (" << res.discarded_realizations
                << " discarded realizations redrawn)";
        log << '\n';
        return kExitOk;
    } catch (const SweepError& e) {
        auto os = open(trials_path);
        write_trials_csv(e.partial_trials, os);
        os << "# incomplete: " << e.what() << '\n';
        auto os2 = open(summary_path);
        os2 << "operation,statistic,slope,intercept,r2,theory_exponent,abs_error\n";
        os2 << "# incomplete: " << e.what() << '\n';
        log << "sweep incomplete: " << e.what() << '\n';
        return kExitRuntime;
    }
}

namespace {

struct OracleLine {
    std::string name;
    double value;
    double expected;
    double tol;
    bool relative;
};

bool report(std::ostream& out, const OracleLine& o) {
    const double err = o.relative
                           ? std::fabs(o.value / o.expected - 1.0)
                           : std::fabs(o.value - o.expected);
    const bool ok = err <= o.tol;
    out << "oracle=" << o.name << " value=" << format_value(o.value)
        << " expected=" << format_value(o.expected)
        << " tol=" << format_value(o.tol) << (o.relative ? " (relative)" : "")
        << " status=" << (ok ? "ok" : "FAIL") << '\n';
    return ok;
}

}  // namespace

int cmd_verify(const VerifyOptions& opt, std::ostream& out) {
    const double slope_tol = opt.quick ? 0.25 : 0.1;
    const double dsum_tol = opt.quick ? 0.25 : 0.2;
    const int ppp_trials = opt.quick ? 40 : 100;
    const int sum_trials = opt.quick ? 40 : 100;
    const int dsum_trials = opt.quick ? 25 : 40;
    bool all_ok = true;

    // Aggregate pathloss sum over a PPP grows like
    // lambda^(alpha/2). The grid starts high enough that the disk boundary
    // no longer clips the nearest-point scale.
    std::vector<double> alphas{3.0, 4.0};
    if (opt.alpha_only > 0.0) alphas = {opt.alpha_only};
    const std::vector<double> lam_grid{256, 512, 1024, 2048, 4096, 8192};
    for (double a : alphas) {
        const auto res = ppp_pathloss_sum(lam_grid, a, ppp_trials, opt.seed);
        all_ok &= report(out, {"ppp_pathloss_sum_alpha" + std::to_string(int(a)),
                               res.fit.slope, 0.5 * a, slope_tol, false});
    }

    // Binomial point process on the disk: empirical slope and the quadrature
    // prediction ratio for the unbounded pathloss sum.
    for (double a : std::vector<double>{3.0, 4.0}) {
        auto sampler = [](RandomStream& rng) { return std::sqrt(rng.uniform()); };
        auto h = [a](double x) { return std::pow(x, -a); };
        const auto fit =
            iid_sum_empirical(sampler, h, 32768, sum_trials, opt.seed + 7);
        all_ok &= report(out, {"disk_interference_alpha" + std::to_string(int(a)),
                               fit.slope, 0.5 * a, slope_tol, false});
        auto quantile = [](double q) { return std::sqrt(q); };
        const double n0 = 1e6;
        const double ratio = iid_sum_prediction(quantile, h, 2.0 * n0) /
                             iid_sum_prediction(quantile, h, n0);
        all_ok &= report(out, {"disk_prediction_ratio_alpha" +
                                   std::to_string(int(a)),
                               ratio, std::pow(2.0, 0.5 * a), 0.01, true});
    }
    {
        // bounded pathloss: the sum is linear in n
        auto quantile = [](double q) { return std::sqrt(q); };
        auto hb = [](double x) { return std::pow(std::max(0.1, x), -3.0); };
        const double n0 = 1e6;
        const double ratio = iid_sum_prediction(quantile, hb, 2.0 * n0) /
                             iid_sum_prediction(quantile, hb, n0);
        all_ok &= report(out, {"disk_prediction_ratio_bounded", ratio, 2.0,
                               0.01, true});
    }

    // Dominant-scale encoding of the disk sum: exact alpha/2.
    for (double a : std::vector<double>{3.0, 4.0}) {
        const double sup = dominant_scale_exponent(
            0.5 * a, [](double t) { return 2.0 * t + 1.0; }, -0.5, 0.0);
        all_ok &= report(out, {"sup_encoding_alpha" + std::to_string(int(a)),
                               sup, 0.5 * a, 1e-12, false});
    }

    // Double-sum branch values and the exclusion-complement empirics.
    {
        const auto p1 = double_sum_prediction(4.0, 4.0, 1.0, -1.0);
        all_ok &= report(out, {"double_sum_pred_a", p1.s, 4.0, 1e-12, false});
        const auto p2 = double_sum_prediction(4.0, 3.0, 0.5, 0.0);
        all_ok &= report(out, {"double_sum_pred_b", p2.s, 1.5, 1e-12, false});
        const auto p3 = double_sum_prediction(4.0, 3.0, 1.0, 0.0);
        all_ok &= report(out, {"double_sum_pred_c_t_branch",
                               std::isinf(p3.t) && p3.t < 0 ? 1.0 : 0.0, 1.0,
                               0.0, false});
    }
    {
        // Exclusion constants and grids per point: the radius must clear the
        // nearest-neighbor scale over the whole grid or the pre-asymptotic
        // branch leaks into the fit.
        struct Point {
            double delta, z, c;
            int trials;
            std::vector<double> grid;
        };
        const std::vector<Point> pts{
            {0.5, -0.6, 0.15, dsum_trials, {64, 128, 256, 512, 1024, 2048}},
            {0.5, -0.25, 0.3, 2 * dsum_trials,
             {128, 256, 512, 1024, 2048, 4096}},
            {1.0, 0.0, 0.15, dsum_trials, {64, 128, 256, 512, 1024}},
        };
        int idx = 0;
        for (const auto& pt : pts) {
            const auto pred =
                double_sum_prediction(4.0, 3.0, pt.delta, pt.z);
            const auto res = double_sum_empirical(
                4.0, 3.0, pt.delta, pt.z, pt.grid, pt.trials, pt.c,
                opt.seed + 11);
            all_ok &= report(out, {"double_sum_slope_" + std::to_string(idx++),
                                   res.fit.slope, pred.s, dsum_tol, false});
        }
    }

    out << (all_ok ? "verify: all oracles passed\n"
                   : "verify: tolerance failure\n");
    return all_ok ? kExitOk : kExitTolerance;
}

}  // namespace lscran
