// SPDX-License-Identifier: Apache-2.0
//
// lscran: scaling-law laboratory for large-scale cloud radio access networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef LSCRAN_EXPONENT_ENGINE_HPP
#define LSCRAN_EXPONENT_ENGINE_HPP

#include <string>
#include <vector>

namespace lscran {

// Exponent-space description of a network family. All quantities are
// scaling exponents with respect to the network size N = L*M except
// alpha, the pathloss exponent.
struct ScalingParams {
    double eta_bs = 0.5;      // exponent of the BS count L
    double eta_ant = 0.5;     // exponent of the per-BS antenna count M
    double eta_user = 0.5;    // exponent of the user count K
    double alpha = 4.0;       // pathloss exponent, > 2
    double rho_ul = 0.0;      // exponent of the per-user UL transmit power
    double rho_dl = 0.0;      // exponent of the per-user DL transmit power
    double upsilon_pa = 0.5;  // exponent of the associated-BS count per user
    double upsilon_pr = 0.5;  // exponent of the pilot-resource count
};

// Throws std::invalid_argument naming the offending field.
// Requires 0 <= eta_* <= 1, eta_bs + eta_ant = 1 (1e-12), alpha > 2 + 1e-9,
// 0 <= upsilon_pa <= eta_bs and 0 <= upsilon_pr <= eta_user.
void validate(const ScalingParams& p);

// upsilon_pa == eta_bs means every user is served by all BSs.
bool full_association(const ScalingParams& p);
// upsilon_pr == eta_user means enough pilots for all users.
bool no_pilot_reuse(const ScalingParams& p);

// UL-power regimes controlling CSI accuracy. Boundaries are inclusive on
// the left of each band: EH for rho_ul >= 0, H for -a2*eta_bs <= rho_ul < 0,
// M for -a2*eta_bs - eta_ant <= rho_ul < -a2*eta_bs, L below, a2 = alpha/2.
enum class Regime { EH, H, M, L };

enum class Operation { IF, MRT, ZF };

Regime classify_regime(const ScalingParams& p);

// Array gain Xi, in [0, eta_ant]; eta_ant in EH/H, 0 in L.
double array_gain(const ScalingParams& p);

// Array gain under pilot reuse, Xi_PR. Coincides with Xi when
// upsilon_pr == eta_user.
double pilot_limited_xi(const ScalingParams& p);

// SNR exponent shared by IF/MRT/ZF: rho_dl + (alpha/2) eta_bs + Xi_PR.
double snr_exponent(const ScalingParams& p);

// Gap terms between the SNR and SIR exponents, before the partial
// association and pilot reuse substitutions.
double delta_mrt(const ScalingParams& p);
double delta_zf(const ScalingParams& p);

// Effective UL power exponent under partial association: the UL power that
// far BSs effectively see. Identity when upsilon_pa == eta_bs.
double effective_ul_power(const ScalingParams& p);

struct PilotLimitedTerms {
    double xi_pr;     // array gain under pilot reuse
    double delta_pr;  // gap floor contributed by co-pilot users
};
PilotLimitedTerms pilot_limited_terms(const ScalingParams& p);

// Final gap for an operation after both substitutions: first rho_ul is
// replaced by the effective UL power, then the co-pilot floor is applied
// as max{., delta_pr} when upsilon_pr < eta_user. Returns -infinity for
// IF (its interference is removed outright, so sir = snr - delta = +inf).
double operation_gap(Operation op, const ScalingParams& p);

struct ExponentReport {
    Operation operation;
    Regime regime;
    double xi;     // array gain (Xi_PR under pilot reuse)
    double delta;  // final gap; -infinity for IF
    double snr;
    double sir;    // +infinity for IF
    double sinr;   // min(snr, sir)
};

ExponentReport exponent_report(Operation op, const ScalingParams& p);

// Largest rho_dl for which the operation is interference-free
// (operation_gap <= 0). The gap is affine in rho_dl with unit slope.
// op must be MRT or ZF.
double if_optimality_threshold(Operation op, const ScalingParams& p);

// Exponent of the total front/backhaul overhead (complex values per frame)
// needed to sustain the useful association range:
// eta_user + eta_bs + eta_ant + (2/alpha) min(rho_ul, 0). The min() caps the
// association contribution at eta_bs, since cooperation cannot exceed all BSs.
double backhaul_overhead_exponent(const ScalingParams& p);

// ---- supportable-users tradeoff ----

enum class TradeoffRegion { A, B, C, D, E, F, G, Infeasible };

struct TradeoffPoint {
    double rho = 0.0;  // total-power exponent
    double tau = 0.0;  // target SINR exponent
    TradeoffRegion region = TradeoffRegion::Infeasible;
    double zeta_user = 0.0;  // supportable-user exponent, clamped to [0,1]
};

// Supportable-user exponent at total-power exponent rho and QoS target tau.
// The power split rho_ul = rho_dl = rho - eta_user is applied internally;
// p's rho fields are ignored. With full association and no pilot reuse the
// closed-form region table is used; otherwise the supremum is found by
// bisection on eta_user with upsilon_pr clamped to min(upsilon_pr, eta_user).
// Ties on region boundaries resolve to the lexicographically first label.
// Throws std::runtime_error if two region conditions hold simultaneously
// (a formula transcription bug).
TradeoffPoint supportable_users(Operation op, double rho, double tau,
                                const ScalingParams& p);

// Row-major grid over [rho_min, rho_max] x [tau_min, tau_max], inclusive
// endpoints, steps >= 2 points per axis. rho varies in the outer loop.
std::vector<TradeoffPoint> tradeoff_grid(Operation op, double rho_min,
                                         double rho_max, double tau_min,
                                         double tau_max,
                                         const ScalingParams& p, int steps);

const char* to_string(Regime r);
const char* to_string(Operation op);
const char* to_string(TradeoffRegion r);
Operation parse_operation(const std::string& s);  // "if" | "mrt" | "zf"

}  // namespace lscran

#endif  // LSCRAN_EXPONENT_ENGINE_HPP
