// SPDX-License-Identifier: Apache-2.0
//
// lscran: scaling-law laboratory for large-scale cloud radio access networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "lscran/asymptotics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

#include "lscran/channel.hpp"
#include "lscran/errors.hpp"
#include "lscran/network.hpp"
#include "lscran/rng.hpp"
#include "lscran/transmission.hpp"

namespace lscran {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

const char* to_string(Statistic s) {
    switch (s) {
        case Statistic::SNR: return "snr";
        case Statistic::SIR: return "sir";
        case Statistic::SINR: return "sinr";
        case Statistic::Custom: return "custom";
    }
    return "?";
}

ExponentFit fit_loglog(const std::vector<double>& log_x,
                       const std::vector<double>& log_y, Statistic stat) {
    if (log_x.size() != log_y.size() || log_x.size() < 2)
        throw std::invalid_argument("fit needs at least two points");
    const std::size_t n = log_x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += log_x[i];
        my += log_y[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (log_x[i] - mx) * (log_x[i] - mx);
        sxy += (log_x[i] - mx) * (log_y[i] - my);
        syy += (log_y[i] - my) * (log_y[i] - my);
    }
    if (sxx <= 0.0) throw std::invalid_argument("degenerate abscissae");
    ExponentFit fit;
    fit.statistic = stat;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = log_y[i] - (fit.intercept + fit.slope * log_x[i]);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    fit.points.resize(n);
    for (std::size_t i = 0; i < n; ++i) fit.points[i] = {log_x[i], log_y[i]};
    return fit;
}

double median(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median of empty sample");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void validate(const SweepPlan& plan) {
    validate(plan.params);
    if (plan.n_grid.size() < 4)
        throw std::invalid_argument("n_grid needs at least four sizes");
    for (std::size_t i = 0; i + 1 < plan.n_grid.size(); ++i)
        if (plan.n_grid[i] >= plan.n_grid[i + 1])
            throw std::invalid_argument("n_grid must be strictly increasing");
    if (plan.n_grid.front() < 4)
        throw std::invalid_argument("n_grid sizes must be at least 4");
    if (plan.trials_per_n < 1)
        throw std::invalid_argument("trials_per_n must be positive");
    if (plan.operations.empty())
        throw std::invalid_argument("no operations requested");
    if (!(plan.region_radius > 0.0))
        throw std::invalid_argument("region_radius must be positive");
}

int default_worker_count() {
    if (const char* env = std::getenv("LSCRAN_WORKERS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? int(hw) : 1;
}

namespace {

struct TrialOut {
    bool ok = false;
    int discards = 0;
    std::vector<LinkMetrics> metrics;  // aligned with plan.operations
    std::string error;
};

TrialOut run_one_trial(const SweepPlan& plan, std::size_t n_idx, int trial) {
    TrialOut out;
    NetworkConfig cfg;
    cfg.n_target = plan.n_grid[n_idx];
    cfg.params = plan.params;
    cfg.region_radius = plan.region_radius;
    cfg.random_typical_user = plan.random_typical_user;

    const double p_ul =
        std::pow(double(realize_sizes(cfg).n_realized), plan.params.rho_ul);
    const double p_dl =
        std::pow(double(realize_sizes(cfg).n_realized), plan.params.rho_dl);

    for (int attempt = 0; attempt < 32; ++attempt) {
        cfg.seed = derive_seed(plan.master_seed,
                               {std::uint64_t(n_idx), std::uint64_t(trial),
                                std::uint64_t(attempt)});
        try {
            const NetworkInstance net = place_and_associate(cfg);
            const ChannelRealization ch =
                draw_channels(net, derive_seed(cfg.seed, {3}));
            const EstimatedChannels est =
                estimate(net, ch, p_ul, derive_seed(cfg.seed, {4}));
            out.metrics =
                evaluate_operations(plan.operations, net, ch, est, p_dl);
            out.ok = true;
            return out;
        } catch (const RealizationDiscard&) {
            ++out.discards;
        }
    }
    out.error = "trial exhausted 32 redraw attempts";
    return out;
}

}  // namespace

SweepResult run_sweep(const SweepPlan& plan) {
    validate(plan);
    const std::size_t n_sizes = plan.n_grid.size();
    const std::size_t items = n_sizes * std::size_t(plan.trials_per_n);
    std::vector<TrialOut> slots(items);

    const int workers =
        plan.workers > 0 ? plan.workers : default_worker_count();
    std::atomic<std::size_t> next{0};
    auto body = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= items) return;
            const std::size_t n_idx = i / std::size_t(plan.trials_per_n);
            const int trial = int(i % std::size_t(plan.trials_per_n));
            slots[i] = run_one_trial(plan, n_idx, trial);
        }
    };
    if (workers <= 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(body);
        for (auto& th : pool) th.join();
    }

    SweepResult res;
    res.n_targets = plan.n_grid;
    res.n_realized.resize(n_sizes);
    for (std::size_t i = 0; i < n_sizes; ++i) {
        NetworkConfig cfg;
        cfg.n_target = plan.n_grid[i];
        cfg.params = plan.params;
        cfg.region_radius = plan.region_radius;
        res.n_realized[i] = realize_sizes(cfg).n_realized;
    }

    // deterministic reduction in (size, trial, operation) order
    for (std::size_t i = 0; i < items; ++i) {
        const std::size_t n_idx = i / std::size_t(plan.trials_per_n);
        const int trial = int(i % std::size_t(plan.trials_per_n));
        const TrialOut& t = slots[i];
        res.discarded_realizations += t.discards;
        if (!t.ok) continue;
        for (std::size_t oi = 0; oi < plan.operations.size(); ++oi) {
            TrialRow row;
            row.n_target = plan.n_grid[n_idx];
            row.n_realized = res.n_realized[n_idx];
            row.operation = plan.operations[oi];
            row.trial = trial;
            row.snr = t.metrics[oi].snr;
            row.sir = t.metrics[oi].sir;
            row.sinr = t.metrics[oi].sinr;
            res.trials.push_back(row);
        }
    }
    for (std::size_t i = 0; i < items; ++i) {
        if (!slots[i].ok)
            throw SweepError(slots[i].error, std::move(res.trials));
    }

    const Statistic stats[3] = {Statistic::SNR, Statistic::SIR,
                                Statistic::SINR};
    for (Operation op : plan.operations) {
        OperationFits of;
        of.operation = op;
        for (int si = 0; si < 3; ++si) {
            if (op == Operation::IF && stats[si] == Statistic::SIR)
                continue;  // infinite by definition, never fitted
            std::vector<double> lx, ly;
            long long kept = 0;
            for (std::size_t n_idx = 0; n_idx < n_sizes; ++n_idx) {
                std::vector<double> vals;
                for (const TrialRow& row : res.trials) {
                    if (row.operation != op ||
                        row.n_target != plan.n_grid[n_idx])
                        continue;
                    const double v = si == 0 ? row.snr
                                   : si == 1 ? row.sir
                                             : row.sinr;
                    if (!std::isfinite(v) || v <= 0.0) {
                        ++of.excluded[si];
                        continue;
                    }
                    vals.push_back(v);
                }
                if (vals.empty())
                    throw SweepError("no usable trials at one grid size",
                                     std::move(res.trials));
                kept += static_cast<long long>(vals.size());
                lx.push_back(std::log(double(res.n_realized[n_idx])));
                ly.push_back(std::log(median(std::move(vals))));
            }
            if (of.excluded[si] * 10 > of.excluded[si] + kept)
                throw SweepError("more than 10% of trials excluded from a fit",
                                 std::move(res.trials));
            const ExponentFit fit = fit_loglog(lx, ly, stats[si]);
            if (si == 0)
                of.snr = fit;
            else if (si == 1)
                of.sir = fit;
            else
                of.sinr = fit;
        }
        res.fits.push_back(std::move(of));
    }
    return res;
}

// ---- asymptotic-sum oracles ----

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double tol,
                        double tol_floor, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double split = left + right;
    if (std::fabs(split - whole) <= 15.0 * tol)
        return split + (split - whole) / 15.0;
    if (depth <= 0)
        throw QuadratureFailure("adaptive quadrature did not converge");
    const double child = std::max(0.5 * tol, tol_floor);
    return adaptive_simpson(f, a, m, fa, flm, fm, child, tol_floor,
                            depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, child, tol_floor, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double eps) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
        throw QuadratureFailure("integrand not finite on the interval");
    // coarse scale estimate so the tolerance is absolute; prevents float
    // noise on large integrands from defeating a purely relative test
    double rough = 0.0;
    const int segs = 128;
    double prev = fa;
    for (int i = 1; i <= segs; ++i) {
        const double x = a + (b - a) * i / double(segs);
        const double fx = f(x);
        rough += 0.5 * (prev + fx) * (b - a) / double(segs);
        prev = fx;
    }
    const double scale = std::max(std::fabs(rough), 1e-300);
    const double tol = eps * scale;
    const double tol_floor = 16.0 * std::numeric_limits<double>::epsilon() * scale;
    return adaptive_simpson(f, a, b, fa, fm, fb, std::max(tol, tol_floor),
                            tol_floor, 44);
}

struct DiskPoint {
    double x, y;
};

DiskPoint disk_point(RandomStream& rng) {
    const double r = std::sqrt(rng.uniform());
    const double th = 2.0 * M_PI * rng.uniform();
    return {r * std::cos(th), r * std::sin(th)};
}

std::vector<DiskPoint> ppp_on_unit_disk(RandomStream& rng, double intensity) {
    const long long n = rng.poisson(intensity * M_PI);
    std::vector<DiskPoint> pts(std::size_t(std::max(0LL, n)));
    for (auto& p : pts) p = disk_point(rng);
    return pts;
}

double sq_dist(const DiskPoint& a, const DiskPoint& b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

ExponentFit fit_medians(const std::vector<double>& grid,
                        const std::vector<std::vector<double>>& samples) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (samples[i].empty())
            throw InsufficientPoints("no usable realizations at a grid point");
        lx.push_back(std::log(grid[i]));
        ly.push_back(std::log(median(samples[i])));
    }
    return fit_loglog(lx, ly, Statistic::Custom);
}

}  // namespace

double iid_sum_prediction(const std::function<double(double)>& quantile,
                         const std::function<double(double)>& h, double n) {
    if (!(n > 1.0)) throw std::invalid_argument("n must exceed 1");
    const double ln_n = std::log(n);
    auto integrand = [&](double t) {
        return std::exp(t * ln_n) * h(quantile(std::exp((t - 1.0) * ln_n)));
    };
    return ln_n * integrate(integrand, 0.0, 1.0, 1e-10);
}

ExponentFit iid_sum_empirical(
    const std::function<double(RandomStream&)>& sampler,
    const std::function<double(double)>& h, long long n_max, int trials,
    std::uint64_t seed) {
    if (n_max < 64) throw std::invalid_argument("n_max too small");
    std::vector<double> grid;
    for (int j = 5; j >= 0; --j) grid.push_back(double(n_max >> j));
    std::vector<std::vector<double>> samples(grid.size());
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        const long long n = (long long)grid[gi];
        for (int tr = 0; tr < trials; ++tr) {
            RandomStream rng(derive_seed(seed, {20, gi, std::uint64_t(tr)}));
            double acc = 0.0;
            for (long long i = 0; i < n; ++i) acc += h(sampler(rng));
            if (acc > 0.0 && std::isfinite(acc)) samples[gi].push_back(acc);
        }
    }
    return fit_medians(grid, samples);
}

double dominant_scale_exponent(double tail_exponent_p,
                      const std::function<double(double)>& growth,
                      double t_min, double t_max) {
    // The asymptotic statement needs p > 1; p = 0 (bounded h) still lands on
    // the law-of-large-numbers answer, so only nonsense values are rejected.
    if (!(tail_exponent_p >= 0.0) || !std::isfinite(tail_exponent_p))
        throw std::invalid_argument("tail exponent must be non-negative");
    if (!(t_max >= t_min))
        throw std::invalid_argument("empty t range");
    const int cells = 4096;
    double best = -kInf;
    for (int i = 0; i <= cells; ++i) {
        const double t = t_min + (t_max - t_min) * i / double(cells);
        const double g = growth(t);
        best = std::max(best, g - tail_exponent_p * (g - 1.0));
    }
    return best;
}

PppSumResult ppp_pathloss_sum(const std::vector<double>& lambda_grid, double alpha,
                          int trials, std::uint64_t seed) {
    if (!(alpha > 2.0)) throw std::invalid_argument("alpha must exceed 2");
    if (lambda_grid.size() < 2)
        throw std::invalid_argument("lambda grid too short");
    PppSumResult out;
    std::vector<std::vector<double>> samples(lambda_grid.size());
    for (std::size_t gi = 0; gi < lambda_grid.size(); ++gi) {
        for (int tr = 0; tr < trials; ++tr) {
            RandomStream rng(derive_seed(seed, {30, gi, std::uint64_t(tr)}));
            const auto pts = ppp_on_unit_disk(rng, lambda_grid[gi]);
            if (pts.empty()) {
                ++out.excluded;
                continue;
            }
            const DiskPoint y0 = disk_point(rng);
            double acc = 0.0;
            for (const auto& p : pts)
                acc += std::pow(sq_dist(p, y0), -0.5 * alpha);
            if (acc > 0.0 && std::isfinite(acc)) samples[gi].push_back(acc);
        }
    }
    out.fit = fit_medians(lambda_grid, samples);
    return out;
}

DoubleSumExponents double_sum_prediction(double alpha0, double alpha1,
                                           double delta, double z) {
    if (!(alpha0 > 2.0) || !(alpha1 > 2.0))
        throw std::invalid_argument("pathloss exponents must exceed 2");
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    const double amax = std::max(alpha0, alpha1);
    const double amin = std::min(alpha0, alpha1);
    DoubleSumExponents out{};
    if (delta < 1.0) {
        if (z < -0.5)
            out.s = 0.5 * amax + 0.5 * amin * delta;
        else if (z < -0.5 * delta)
            out.s = 1.0 + (2.0 - amax) * z + 0.5 * amin * delta;
        else
            out.s = 1.0 + delta + (4.0 - amax - amin) * z;
    } else {
        if (z < -0.5)
            out.s = 0.5 * (amax + amin) + delta - 1.0;
        else
            out.s = 1.0 + delta + (4.0 - amax - amin) * z;
    }
    if (z > -0.5 * delta && -0.5 * delta > -0.5)
        out.t = 0.5 * amax + 0.5 * amin * delta;
    else if (z > -0.5 && -0.5 > -0.5 * delta)
        out.t = 0.5 * (amax + amin) + delta - 1.0;
    else if (-0.5 * delta < z && z < -0.5)
        out.t = 0.5 * (amax + amin) + delta + 2.0 * z;
    else
        out.t = -kInf;
    return out;
}

PppSumResult double_sum_empirical(double alpha0, double alpha1, double delta,
                                    double z,
                                    const std::vector<double>& lambda_grid,
                                    int trials, double radius_constant,
                                    std::uint64_t seed) {
    if (!(radius_constant > 0.0))
        throw std::invalid_argument("radius constant must be positive");
    PppSumResult out;
    std::vector<std::vector<double>> samples(lambda_grid.size());
    for (std::size_t gi = 0; gi < lambda_grid.size(); ++gi) {
        const double lam = lambda_grid[gi];
        const double r2 =
            std::pow(radius_constant * std::pow(lam, z), 2.0);
        for (int tr = 0; tr < trials; ++tr) {
            RandomStream rng(derive_seed(seed, {40, gi, std::uint64_t(tr)}));
            const auto phi = ppp_on_unit_disk(rng, lam);
            const auto psi = ppp_on_unit_disk(rng, std::pow(lam, delta));
            if (phi.empty() || psi.size() < 2) {
                ++out.excluded;
                continue;
            }
            const std::size_t i0 =
                std::size_t(rng.uniform_int(0, psi.size() - 1));
            const DiskPoint y0 = psi[i0];
            double acc = 0.0;
            for (std::size_t yi = 0; yi < psi.size(); ++yi) {
                if (yi == i0) continue;
                const DiskPoint y = psi[yi];
                for (const auto& x : phi) {
                    const double d0 = sq_dist(x, y0);
                    if (d0 <= r2) continue;
                    const double d1 = sq_dist(x, y);
                    if (d1 <= r2) continue;
                    acc += std::pow(d0, -0.5 * alpha0) *
                           std::pow(d1, -0.5 * alpha1);
                }
            }
            if (acc > 0.0 && std::isfinite(acc)) samples[gi].push_back(acc);
            else ++out.excluded;
        }
    }
    out.fit = fit_medians(lambda_grid, samples);
    return out;
}

}  // namespace lscran
