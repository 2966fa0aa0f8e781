// SPDX-License-Identifier: Apache-2.0
//
// lscran: scaling-law laboratory for large-scale cloud radio access networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "lscran/exponent_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lscran {

namespace {

constexpr double kTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

double pos(double x) { return x > 0.0 ? x : 0.0; }

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

void validate(const ScalingParams& p) {
    require(std::isfinite(p.eta_bs) && p.eta_bs >= 0.0 && p.eta_bs <= 1.0,
            "eta_bs must lie in [0, 1]");
    require(std::isfinite(p.eta_ant) && p.eta_ant >= 0.0 && p.eta_ant <= 1.0,
            "eta_ant must lie in [0, 1]");
    require(std::isfinite(p.eta_user) && p.eta_user >= 0.0 && p.eta_user <= 1.0,
            "eta_user must lie in [0, 1]");
    require(std::fabs(p.eta_bs + p.eta_ant - 1.0) <= kTol,
            "eta_bs + eta_ant must equal 1");
    require(std::isfinite(p.alpha) && p.alpha > 2.0 + 1e-9,
            "alpha must exceed 2");
    require(std::isfinite(p.rho_ul), "rho_ul must be finite");
    require(std::isfinite(p.rho_dl), "rho_dl must be finite");
    require(p.upsilon_pa >= -kTol && p.upsilon_pa <= p.eta_bs + kTol,
            "upsilon_pa must lie in [0, eta_bs]");
    require(p.upsilon_pr >= -kTol && p.upsilon_pr <= p.eta_user + kTol,
            "upsilon_pr must lie in [0, eta_user]");
}

bool full_association(const ScalingParams& p) {
    return std::fabs(p.upsilon_pa - p.eta_bs) <= kTol;
}

bool no_pilot_reuse(const ScalingParams& p) {
    return std::fabs(p.upsilon_pr - p.eta_user) <= kTol;
}

Regime classify_regime(const ScalingParams& p) {
    const double a2 = 0.5 * p.alpha;
    if (p.rho_ul >= 0.0) return Regime::EH;
    if (p.rho_ul >= -a2 * p.eta_bs) return Regime::H;
    if (p.rho_ul >= -a2 * p.eta_bs - p.eta_ant) return Regime::M;
    return Regime::L;
}

double array_gain(const ScalingParams& p) {
    const double base = p.rho_ul + 0.5 * p.alpha * p.eta_bs;
    return pos(base + p.eta_ant) - pos(base);
}

double pilot_limited_xi(const ScalingParams& p) {
    const double base = p.rho_ul + 0.5 * p.alpha * p.eta_bs;
    const double leak = pos(p.eta_user - p.upsilon_pr - p.eta_bs);
    return pos(base + p.eta_ant) - pos(base + leak);
}

double snr_exponent(const ScalingParams& p) {
    return p.rho_dl + 0.5 * p.alpha * p.eta_bs + pilot_limited_xi(p);
}

double delta_mrt(const ScalingParams& p) {
    return p.rho_dl + 0.5 * p.alpha * std::min(p.eta_bs, p.eta_user) +
           pos(p.eta_user - p.eta_bs);
}

double delta_zf(const ScalingParams& p) {
    const double a = p.alpha;
    return delta_mrt(p) -
           (1.0 - 2.0 / a) *
               pos(0.5 * a * std::min(p.eta_bs, p.eta_user) + p.rho_ul) -
           (2.0 / a) * pos(p.rho_ul);
}

double effective_ul_power(const ScalingParams& p) {
    if (full_association(p)) return p.rho_ul;
    return std::min(p.rho_ul, 0.5 * p.alpha * (p.upsilon_pa - p.eta_bs));
}

PilotLimitedTerms pilot_limited_terms(const ScalingParams& p) {
    PilotLimitedTerms out{};
    out.xi_pr = pilot_limited_xi(p);
    out.delta_pr = p.rho_dl +
                   0.5 * p.alpha *
                       std::min(p.eta_bs, p.eta_user - p.upsilon_pr) +
                   pos(p.eta_user - p.upsilon_pr - p.eta_bs) + out.xi_pr;
    return out;
}

double operation_gap(Operation op, const ScalingParams& p) {
    if (op == Operation::IF) return -kInf;
    ScalingParams sub = p;
    sub.rho_ul = effective_ul_power(p);
    double gap = (op == Operation::MRT) ? delta_mrt(sub) : delta_zf(sub);
    if (!no_pilot_reuse(p)) gap = std::max(gap, pilot_limited_terms(p).delta_pr);
    return gap;
}

ExponentReport exponent_report(Operation op, const ScalingParams& p) {
    validate(p);
    ExponentReport r{};
    r.operation = op;
    r.regime = classify_regime(p);
    r.xi = pilot_limited_xi(p);
    r.delta = operation_gap(op, p);
    r.snr = snr_exponent(p);
    r.sir = (op == Operation::IF) ? kInf : r.snr - r.delta;
    r.sinr = std::min(r.snr, r.sir);
    return r;
}

double if_optimality_threshold(Operation op, const ScalingParams& p) {
    if (op == Operation::IF)
        throw std::invalid_argument(
            "if_optimality_threshold expects MRT or ZF");
    return p.rho_dl - operation_gap(op, p);
}

double backhaul_overhead_exponent(const ScalingParams& p) {
    return p.eta_user + p.eta_bs + p.eta_ant +
           (2.0 / p.alpha) * std::min(p.rho_ul, 0.0);
}

// ---- supportable-users tradeoff ----

namespace {

struct RegionRow {
    TradeoffRegion label;
    bool open;    // conditions with the stated strict/non-strict inequalities
    bool closed;  // same conditions with every inequality made non-strict
    double u;
};

// Region conditions and per-operation u formulas. s2 = (alpha/2) eta_bs,
// cap = s2 + eta_ant. The H/EH split line for SNR- vs SIR-limited behavior
// is q(rho) + tau = cap with q(rho) = alpha/(2-alpha) rho.
std::vector<RegionRow> region_rows(Operation op, double rho, double tau,
                                   const ScalingParams& p) {
    const double a = p.alpha;
    const double s2 = 0.5 * a * p.eta_bs;
    const double cap = s2 + p.eta_ant;
    const double lo = (1.0 - 0.5 * a) * p.eta_bs;  // snr/sir-limited split
    const double q = a / (2.0 - a) * rho;
    const bool ideal = (op == Operation::IF);

    std::vector<RegionRow> rows;
    rows.reserve(7);

    auto add = [&](TradeoffRegion lab, bool open, bool closed, double u) {
        rows.push_back({lab, open, closed, u});
    };

    // A: SNR limited in L.
    add(TradeoffRegion::A,
        tau < -p.eta_ant && (ideal || rho < lo),
        tau <= -p.eta_ant && (ideal || rho <= lo),
        rho - tau + s2);
    // B: SNR limited in M.
    add(TradeoffRegion::B,
        tau >= -p.eta_ant && tau < p.eta_ant && (ideal || rho < lo),
        tau >= -p.eta_ant && tau <= p.eta_ant && (ideal || rho <= lo),
        rho - 0.5 * tau + s2 + 0.5 * p.eta_ant);
    // C: SNR limited in H or EH.
    add(TradeoffRegion::C,
        tau >= p.eta_ant && (ideal || q + tau >= cap),
        tau >= p.eta_ant && (ideal || q + tau >= cap),
        rho - tau + cap);
    if (ideal) return rows;

    // D: SIR limited in L. The sir exponent there is eta_bs - eta_user,
    // independent of the power budget, so u = eta_bs - tau.
    add(TradeoffRegion::D,
        rho >= lo && rho + tau < lo - p.eta_ant,
        rho >= lo && rho + tau <= lo - p.eta_ant,
        p.eta_bs - tau);
    // E: SIR limited in M.
    add(TradeoffRegion::E,
        rho >= lo && rho + tau >= lo - p.eta_ant && rho + tau < lo + p.eta_ant,
        rho >= lo && rho + tau >= lo - p.eta_ant && rho + tau <= lo + p.eta_ant,
        0.5 * (rho - tau + (0.5 * a + 1.0) * p.eta_bs + p.eta_ant));
    if (op == Operation::MRT) {
        // F: SIR limited in H (or EH with tau below eta_ant); the MRT gap
        // does not depend on the UL power, so u has no rho term.
        add(TradeoffRegion::F,
            rho + tau >= lo + p.eta_ant && tau < p.eta_ant,
            rho + tau >= lo + p.eta_ant && tau <= p.eta_ant,
            p.eta_bs + p.eta_ant - tau);
        // G: SIR limited in EH.
        add(TradeoffRegion::G,
            tau >= p.eta_ant && q + tau < cap,
            tau >= p.eta_ant && q + tau <= cap,
            (2.0 / a) * (cap - tau));
    } else {
        // F: SIR limited in H. Bounded above by the C split line so that C
        // and F partition the tau >= eta_ant strip.
        add(TradeoffRegion::F,
            rho + tau >= lo + p.eta_ant && rho + tau < cap && q + tau < cap,
            rho + tau >= lo + p.eta_ant && rho + tau <= cap && q + tau <= cap,
            (a / (2.0 * (a - 1.0))) * ((1.0 - 2.0 / a) * rho - tau + cap));
        // G: SIR limited in EH; tau - rho < cap keeps u positive.
        add(TradeoffRegion::G,
            tau + rho > cap && tau - rho < cap,
            tau + rho >= cap && tau - rho <= cap,
            0.5 * (rho - tau + cap));
    }
    return rows;
}

double clamp01(double u) { return std::max(std::min(u, 1.0), 0.0); }

TradeoffPoint closed_form_point(Operation op, double rho, double tau,
                                const ScalingParams& p) {
    const auto rows = region_rows(op, rho, tau, p);
    const RegionRow* hit = nullptr;
    int open_hits = 0;
    for (const auto& r : rows) {
        if (r.open) {
            ++open_hits;
            hit = &r;
        }
    }
    if (open_hits > 1)
        throw std::runtime_error(
            "ambiguous tradeoff region: two region conditions hold at once");
    if (open_hits == 0) {
        // Boundary between regions: first label whose closed conditions hold.
        for (const auto& r : rows) {
            if (r.closed) {
                hit = &r;
                break;
            }
        }
    }
    TradeoffPoint out;
    out.rho = rho;
    out.tau = tau;
    if (hit == nullptr) {
        out.region = TradeoffRegion::Infeasible;
        out.zeta_user = 0.0;
        return out;
    }
    out.region = hit->label;
    out.zeta_user = clamp01(hit->u);
    return out;
}

// SINR exponent at user exponent zeta under the total-power split, with the
// pilot budget clamped so it never exceeds the user count.
double constrained_sinr(Operation op, double rho, double zeta,
                        const ScalingParams& p) {
    ScalingParams q = p;
    q.eta_user = zeta;
    q.upsilon_pr = std::min(p.upsilon_pr, zeta);
    q.rho_ul = q.rho_dl = rho - zeta;
    return exponent_report(op, q).sinr;
}

}  // namespace

TradeoffPoint supportable_users(Operation op, double rho, double tau,
                                const ScalingParams& p) {
    validate(p);
    if (!std::isfinite(rho) || !std::isfinite(tau))
        throw std::invalid_argument("rho and tau must be finite");

    // Partial association never degrades IF (it has no interference gap),
    // so only pilot reuse forces IF off the closed-form table.
    const bool constrained = op == Operation::IF
                                 ? !no_pilot_reuse(p)
                                 : !(full_association(p) && no_pilot_reuse(p));
    TradeoffPoint pt = closed_form_point(op, rho, tau, p);
    if (!constrained) return pt;

    // Partial association or pilot reuse: the table has no closed form, so
    // take the supremum of feasible eta_user by bisection. sinr is strictly
    // decreasing in eta_user under the power split.
    if (constrained_sinr(op, rho, 0.0, p) < tau) {
        // Keep the table label when the cell was already at zero; flag the
        // cells the constraint itself made unreachable.
        if (pt.zeta_user > 0.0) pt.region = TradeoffRegion::Infeasible;
        pt.zeta_user = 0.0;
        return pt;
    }
    if (constrained_sinr(op, rho, 1.0, p) >= tau) {
        pt.zeta_user = 1.0;
        return pt;
    }
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (constrained_sinr(op, rho, mid, p) >= tau)
            lo = mid;
        else
            hi = mid;
    }
    pt.zeta_user = lo;
    return pt;
}

std::vector<TradeoffPoint> tradeoff_grid(Operation op, double rho_min,
                                         double rho_max, double tau_min,
                                         double tau_max,
                                         const ScalingParams& p, int steps) {
    if (steps < 2) throw std::invalid_argument("steps must be at least 2");
    if (!(std::isfinite(rho_min) && std::isfinite(rho_max) &&
          std::isfinite(tau_min) && std::isfinite(tau_max)))
        throw std::invalid_argument("grid ranges must be finite");
    std::vector<TradeoffPoint> grid;
    grid.reserve(static_cast<std::size_t>(steps) * steps);
    for (int i = 0; i < steps; ++i) {
        const double rho =
            rho_min + (rho_max - rho_min) * i / double(steps - 1);
        for (int j = 0; j < steps; ++j) {
            const double tau =
                tau_min + (tau_max - tau_min) * j / double(steps - 1);
            grid.push_back(supportable_users(op, rho, tau, p));
        }
    }
    return grid;
}

const char* to_string(Regime r) {
    switch (r) {
        case Regime::EH: return "EH";
        case Regime::H: return "H";
        case Regime::M: return "M";
        case Regime::L: return "L";
    }
    return "?";
}

const char* to_string(Operation op) {
    switch (op) {
        case Operation::IF: return "if";
        case Operation::MRT: return "mrt";
        case Operation::ZF: return "zf";
    }
    return "?";
}

const char* to_string(TradeoffRegion r) {
    switch (r) {
        case TradeoffRegion::A: return "A";
        case TradeoffRegion::B: return "B";
        case TradeoffRegion::C: return "C";
        case TradeoffRegion::D: return "D";
        case TradeoffRegion::E: return "E";
        case TradeoffRegion::F: return "F";
        case TradeoffRegion::G: return "G";
        case TradeoffRegion::Infeasible: return "infeasible";
    }
    return "?";
}

Operation parse_operation(const std::string& s) {
    if (s == "if") return Operation::IF;
    if (s == "mrt") return Operation::MRT;
    if (s == "zf") return Operation::ZF;
    throw std::invalid_argument("unknown operation: " + s);
}

}  // namespace lscran
