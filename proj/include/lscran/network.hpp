// SPDX-License-Identifier: Apache-2.0
//
// lscran: scaling-law laboratory for large-scale cloud radio access networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef LSCRAN_NETWORK_HPP
#define LSCRAN_NETWORK_HPP

#include <armadillo>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "lscran/exponent_engine.hpp"

namespace lscran {

struct NetworkConfig {
    long long n_target = 1024;  // requested network size N
    ScalingParams params;
    double region_radius = 1.0;  // nodes are uniform on this disk
    std::uint64_t seed = 1;
    // Measurement user: nearest to the region centroid by default, which
    // suppresses boundary bias in slope estimates. The uniform-random
    // alternative exists for sensitivity checks.
    bool random_typical_user = false;
};

void validate(const NetworkConfig& cfg);  // n_target >= 4, radius > 0, params

// Counts realized from n_target. l and m come from n_target; k, t and n_pa
// are recomputed from the realized size n = l*m so that N = L*M holds
// exactly downstream.
struct SizeRealization {
    long long l, m, k, t, n_pa;
    long long n_realized;
};

SizeRealization realize_sizes(const NetworkConfig& cfg);

struct Point2 {
    double x = 0.0, y = 0.0;
};

// One realized network. beta(l,k) = |X_l - U_k|^-alpha exactly; assoc lists
// the n_pa nearest BSs per user in ascending distance order; pilots are in
// {1..t}, all distinct when t >= k.
struct NetworkInstance {
    NetworkConfig config;
    long long l = 0, m = 0, k = 0, t = 0, n_pa = 0;
    long long n_realized = 0;
    std::vector<Point2> bs_positions;
    std::vector<Point2> user_positions;
    arma::mat beta;  // l x k
    std::vector<std::vector<unsigned>> assoc;      // per user, size n_pa
    std::vector<std::vector<unsigned>> users_of_bs;  // inverse association map
    std::vector<unsigned> pilot_of;  // per user, 1-based pilot index
    unsigned typical_user = 0;

    bool associated(unsigned bs, unsigned user) const;
};

// Draws positions, associates each user with its n_pa nearest BSs, computes
// pathloss, picks the typical user and assigns pilots. Throws
// DegenerateGeometry if two nodes coincide exactly after one redraw.
NetworkInstance place_and_associate(const NetworkConfig& cfg);

// Structured text snapshot (positions, association, pilots) for replay.
// Pathloss is recomputed from positions on load.
void save_snapshot(const NetworkInstance& net, std::ostream& os);
NetworkInstance load_snapshot(std::istream& is);

}  // namespace lscran

#endif  // LSCRAN_NETWORK_HPP
