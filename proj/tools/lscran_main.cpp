// SPDX-License-Identifier: Apache-2.0
//
// lscran: scaling-law laboratory for large-scale cloud radio access networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "lscran/cli_commands.hpp"
#include "lscran/errors.hpp"

namespace {

using nlohmann::json;

std::vector<lscran::Operation> parse_ops(const std::string& csv) {
    std::vector<lscran::Operation> ops;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "all") {
            return {lscran::Operation::IF, lscran::Operation::MRT,
                    lscran::Operation::ZF};
        }
        ops.push_back(lscran::parse_operation(tok));
    }
    if (ops.empty()) throw std::invalid_argument("empty operation list");
    return ops;
}

std::vector<long long> parse_grid(const std::string& csv) {
    std::vector<long long> grid;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) grid.push_back(std::stoll(tok));
    return grid;
}

// Shared parameter flags. Values from --config are applied as defaults
// first; command-line flags always win. eta_ant follows from eta_bs.
struct ParamFlags {
    double eta_bs = 0.5, eta_user = 0.5, alpha = 4.0;
    double rho_ul = 0.0, rho_dl = 0.0;
    double upsilon_pa = -1.0, upsilon_pr = -1.0;  // <0: track eta_bs/eta_user

    void add(CLI::App* cmd) {
        static std::string config_echo;  // value already consumed by pre-scan
        cmd->add_option("--config", config_echo,
                        "JSON key/value defaults; flags override");
        cmd->add_option("--alpha", alpha, "pathloss exponent (> 2)");
        cmd->add_option("--eta-bs", eta_bs, "BS-count exponent in [0,1]");
        cmd->add_option("--eta-user", eta_user, "user-count exponent in [0,1]");
        cmd->add_option("--rho-ul", rho_ul, "UL power exponent");
        cmd->add_option("--rho-dl", rho_dl, "DL power exponent");
        cmd->add_option("--upsilon-pa", upsilon_pa,
                        "associated-BS exponent (default: eta_bs)");
        cmd->add_option("--upsilon-pr", upsilon_pr,
                        "pilot-resource exponent (default: eta_user)");
    }

    void load(const json& j) {
        if (j.contains("alpha")) alpha = j["alpha"].get<double>();
        if (j.contains("eta-bs")) eta_bs = j["eta-bs"].get<double>();
        if (j.contains("eta-user")) eta_user = j["eta-user"].get<double>();
        if (j.contains("rho-ul")) rho_ul = j["rho-ul"].get<double>();
        if (j.contains("rho-dl")) rho_dl = j["rho-dl"].get<double>();
        if (j.contains("upsilon-pa")) upsilon_pa = j["upsilon-pa"].get<double>();
        if (j.contains("upsilon-pr")) upsilon_pr = j["upsilon-pr"].get<double>();
    }

    lscran::ScalingParams build() const {
        lscran::ScalingParams p;
        p.alpha = alpha;
        p.eta_bs = eta_bs;
        p.eta_ant = 1.0 - eta_bs;
        p.eta_user = eta_user;
        p.rho_ul = rho_ul;
        p.rho_dl = rho_dl;
        p.upsilon_pa = upsilon_pa < 0.0 ? eta_bs : upsilon_pa;
        p.upsilon_pr = upsilon_pr < 0.0 ? eta_user : upsilon_pr;
        return p;
    }
};

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot read config " + path);
    json j;
    is >> j;
    if (!j.is_object()) throw std::invalid_argument("config must be an object");
    return j;
}

int run_to_stream_or_file(const std::string& path,
                          const std::function<int(std::ostream&)>& fn) {
    if (path.empty() || path == "-") return fn(std::cout);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::invalid_argument("cannot write " + path);
    return fn(os);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scaling-law laboratory for large-scale cloud RAN"};
    app.require_subcommand(1);

    // --config is pre-scanned so its values become defaults everywhere.
    std::string config_path;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
    }
    app.add_option("--config", config_path,
                   "JSON key/value defaults; flags override")
        ->expected(1);

    json cfg;
    try {
        cfg = load_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return lscran::kExitValidation;
    }

    // theory
    auto* theory = app.add_subcommand("theory", "closed-form exponent report");
    ParamFlags theory_params;
    theory_params.load(cfg);
    theory_params.add(theory);
    std::string theory_ops = cfg.value("ops", std::string("all"));
    std::string theory_out = cfg.value("output", std::string());
    theory->add_option("--op,--ops", theory_ops, "if|mrt|zf|all (comma list)");
    theory->add_option("--output,-o", theory_out, "write to file instead of stdout");

    // contour
    auto* contour =
        app.add_subcommand("contour", "supportable-user tradeoff grid (CSV)");
    ParamFlags contour_params;
    contour_params.load(cfg);
    contour_params.add(contour);
    lscran::ContourOptions copt;
    std::string contour_ops = cfg.value("ops", std::string("zf"));
    std::string contour_out = cfg.value("output", std::string());
    copt.rho_min = cfg.value("rho-min", copt.rho_min);
    copt.rho_max = cfg.value("rho-max", copt.rho_max);
    copt.tau_min = cfg.value("tau-min", copt.tau_min);
    copt.tau_max = cfg.value("tau-max", copt.tau_max);
    copt.steps = cfg.value("steps", copt.steps);
    contour->add_option("--op,--ops", contour_ops, "if|mrt|zf|all (comma list)");
    contour->add_option("--rho-min", copt.rho_min, "grid minimum for rho");
    contour->add_option("--rho-max", copt.rho_max, "grid maximum for rho");
    contour->add_option("--tau-min", copt.tau_min, "grid minimum for tau");
    contour->add_option("--tau-max", copt.tau_max, "grid maximum for tau");
    contour->add_option("--steps", copt.steps, "points per axis (>= 2)");
    contour->add_option("--output,-o", contour_out, "output CSV path");

    // simulate
    auto* simulate =
        app.add_subcommand("simulate", "Monte Carlo exponent sweep (CSV)");
    ParamFlags sim_params;
    sim_params.load(cfg);
    sim_params.add(simulate);
    lscran::SimulateOptions sopt;
    std::string sim_ops = cfg.value("ops", std::string("all"));
    std::string sim_grid = cfg.value("n-grid", std::string("256,512,1024,2048,4096,8192"));
    sopt.plan.trials_per_n = cfg.value("trials", sopt.plan.trials_per_n);
    sopt.plan.master_seed = cfg.value("seed", sopt.plan.master_seed);
    sopt.plan.workers = cfg.value("workers", sopt.plan.workers);
    sopt.plan.region_radius = cfg.value("radius", sopt.plan.region_radius);
    sopt.plan.random_typical_user =
        cfg.value("random-user", sopt.plan.random_typical_user);
    sopt.output_prefix = cfg.value("output", sopt.output_prefix);
    simulate->add_option("--op,--ops", sim_ops, "if|mrt|zf|all (comma list)");
    simulate->add_option("--n-grid", sim_grid,
                         "comma list of target sizes, ascending");
    simulate->add_option("--trials", sopt.plan.trials_per_n, "trials per size");
    simulate->add_option("--seed", sopt.plan.master_seed, "master seed");
    simulate->add_option("--workers", sopt.plan.workers,
                         "worker threads (0: LSCRAN_WORKERS or hardware)");
    simulate->add_option("--radius", sopt.plan.region_radius, "region radius");
    simulate->add_flag("--random-user", sopt.plan.random_typical_user,
                       "measure a uniformly random user instead of the centroid one");
    simulate->add_option("--output,-o", sopt.output_prefix,
                         "output prefix for _trials.csv and _summary.csv");

    // verify
    auto* verify =
        app.add_subcommand("verify", "asymptotic-sum oracle checks");
    lscran::VerifyOptions vopt;
    vopt.quick = cfg.value("quick", vopt.quick);
    vopt.seed = cfg.value("seed", vopt.seed);
    double verify_alpha = cfg.value("alpha", 0.0);
    std::string config_echo2;
    verify->add_option("--config", config_echo2,
                       "JSON key/value defaults; flags override");
    verify->add_flag("--quick", vopt.quick,
                     "reduced trials, slope tolerance 0.25");
    verify->add_option("--alpha", verify_alpha,
                       "restrict the PPP pathloss-sum oracle to one alpha");
    verify->add_option("--seed", vopt.seed, "oracle seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? lscran::kExitOk : lscran::kExitValidation;
    }

    try {
        if (theory->parsed()) {
            lscran::TheoryOptions topt;
            topt.params = theory_params.build();
            topt.operations = parse_ops(theory_ops);
            return run_to_stream_or_file(theory_out, [&](std::ostream& os) {
                return lscran::cmd_theory(topt, os);
            });
        }
        if (contour->parsed()) {
            copt.params = contour_params.build();
            copt.operations = parse_ops(contour_ops);
            return run_to_stream_or_file(contour_out, [&](std::ostream& os) {
                return lscran::cmd_contour(copt, os);
            });
        }
        if (simulate->parsed()) {
            sopt.plan.params = sim_params.build();
            sopt.plan.operations = parse_ops(sim_ops);
            sopt.plan.n_grid = parse_grid(sim_grid);
            return lscran::cmd_simulate(sopt, std::cout);
        }
        if (verify->parsed()) {
            vopt.alpha_only = verify_alpha;
            return lscran::cmd_verify(vopt, std::cout);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return lscran::kExitValidation;
    } catch (const lscran::ToleranceFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return lscran::kExitTolerance;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return lscran::kExitRuntime;
    }
    return lscran::kExitOk;
}
