// SPDX-License-Identifier: Apache-2.0
//
// lscran: scaling-law laboratory for large-scale cloud radio access networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef LSCRAN_ASYMPTOTICS_HPP
#define LSCRAN_ASYMPTOTICS_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lscran/exponent_engine.hpp"

namespace lscran {

enum class Statistic { SNR, SIR, SINR, Custom };
const char* to_string(Statistic s);

// Ordinary least squares of y against x on stored (x, y) points, both
// already in log space.
struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<std::array<double, 2>> points;  // (log n, log statistic)
    Statistic statistic = Statistic::Custom;
};

ExponentFit fit_loglog(const std::vector<double>& log_x,
                       const std::vector<double>& log_y, Statistic stat);

double median(std::vector<double> v);  // empty input throws

// ---- full-pipeline sweeps ----

struct SweepPlan {
    std::vector<long long> n_grid;  // strictly increasing, >= 4 entries
    int trials_per_n = 200;
    ScalingParams params;
    std::vector<Operation> operations{Operation::IF, Operation::MRT,
                                      Operation::ZF};
    std::uint64_t master_seed = 1;
    int workers = 0;  // 0: LSCRAN_WORKERS env or hardware concurrency
    double region_radius = 1.0;
    bool random_typical_user = false;
};

void validate(const SweepPlan& plan);

struct TrialRow {
    long long n_target = 0;
    long long n_realized = 0;
    Operation operation = Operation::MRT;
    int trial = 0;
    double snr = 0.0, sir = 0.0, sinr = 0.0;
};

struct OperationFits {
    Operation operation;
    ExponentFit snr;
    std::optional<ExponentFit> sir;  // absent for IF (its SIR is infinite)
    ExponentFit sinr;
    // trials dropped from the median for being zero or non-finite
    long long excluded[3] = {0, 0, 0};  // indexed by SNR, SIR, SINR
};

struct SweepResult {
    std::vector<long long> n_targets;
    std::vector<long long> n_realized;
    std::vector<TrialRow> trials;        // every trial, every operation
    std::vector<OperationFits> fits;     // one entry per requested operation
    long long discarded_realizations = 0;  // ill-conditioned / degenerate redraws
};

// Carries whatever trials completed when a sweep fails part-way, so callers
// can flush partial output.
class SweepError : public std::runtime_error {
  public:
    SweepError(const std::string& msg, std::vector<TrialRow> partial)
        : std::runtime_error(msg), partial_trials(std::move(partial)) {}
    std::vector<TrialRow> partial_trials;
};

// Builds trials_per_n independent realizations per grid point (network ->
// channels -> estimate -> precode -> measure), medians each statistic over
// trials and fits log(median) against log(realized N). Work items are keyed
// by (grid index, trial), so results do not depend on the worker count.
SweepResult run_sweep(const SweepPlan& plan);

int default_worker_count();  // LSCRAN_WORKERS env var, else hardware

// ---- asymptotic-sum oracles ----

// n * integral of h over the top (1 - 1/n) quantile mass, evaluated by
// adaptive quadrature in the substituted form
// ln(n) * int_0^1 n^t h(quantile(n^(t-1))) dt. Throws QuadratureFailure.
double iid_sum_prediction(const std::function<double(double)>& quantile,
                         const std::function<double(double)>& h, double n);

// Samples sum_k h(x_k) at a geometric grid of sizes ending at n_max
// (halving six times), medians over trials and fits the slope.
ExponentFit iid_sum_empirical(const std::function<double(class RandomStream&)>& sampler,
                             const std::function<double(double)>& h,
                             long long n_max, int trials, std::uint64_t seed);

// Exponent of sup_t |X_t| h(n^t) for h with quantile tail exponent p > 1 and
// piecewise-linear |X_t| growth: max over a fine t-grid (endpoints included)
// of growth(t) - p * (growth(t) - 1).
double dominant_scale_exponent(double tail_exponent_p,
                      const std::function<double(double)>& growth,
                      double t_min, double t_max);

struct PppSumResult {
    ExponentFit fit;
    long long excluded = 0;  // empty-process realizations
};

// Sum of |X - Y0|^-alpha over a PPP of intensity lambda on the unit disk,
// Y0 uniform; slope fitted against log lambda.
PppSumResult ppp_pathloss_sum(const std::vector<double>& lambda_grid, double alpha,
                          int trials, std::uint64_t seed);

struct DoubleSumExponents {
    double s;  // exclusion-complement double sum
    double t;  // exclusion-intersection double sum; may be -infinity
};

DoubleSumExponents double_sum_prediction(double alpha0, double alpha1,
                                           double delta, double z);

// Empirical companion of the exclusion-complement sum: two independent PPPs
// with intensities lambda and lambda^delta, exclusion radius c * lambda^z
// around Y0 and each Y. Only the slope is controlled.
PppSumResult double_sum_empirical(double alpha0, double alpha1, double delta,
                                    double z,
                                    const std::vector<double>& lambda_grid,
                                    int trials, double radius_constant,
                                    std::uint64_t seed);

}  // namespace lscran

#endif  // LSCRAN_ASYMPTOTICS_HPP
