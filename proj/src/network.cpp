// SPDX-License-Identifier: Apache-2.0
//
// lscran: scaling-law laboratory for large-scale cloud radio access networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "lscran/network.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "lscran/errors.hpp"
#include "lscran/rng.hpp"

namespace lscran {

void validate(const NetworkConfig& cfg) {
    validate(cfg.params);
    if (cfg.n_target < 4)
        throw std::invalid_argument("n_target must be at least 4");
    if (!(cfg.region_radius > 0.0) || !std::isfinite(cfg.region_radius))
        throw std::invalid_argument("region_radius must be positive");
}

SizeRealization realize_sizes(const NetworkConfig& cfg) {
    validate(cfg);
    const ScalingParams& p = cfg.params;
    const double n0 = static_cast<double>(cfg.n_target);
    SizeRealization s{};
    s.l = std::max(1LL, std::llround(std::pow(n0, p.eta_bs)));
    s.m = std::max(1LL, std::llround(std::pow(n0, p.eta_ant)));
    s.n_realized = s.l * s.m;
    const double n = static_cast<double>(s.n_realized);
    s.k = std::max(1LL, std::llround(std::pow(n, p.eta_user)));
    s.t = std::max(1LL,
                   std::min(s.k, std::llround(std::pow(n, p.upsilon_pr))));
    s.n_pa = std::max(1LL,
                      std::min(s.l, std::llround(std::pow(n, p.upsilon_pa))));
    return s;
}

bool NetworkInstance::associated(unsigned bs, unsigned user) const {
    const auto& a = assoc[user];
    return std::find(a.begin(), a.end(), bs) != a.end();
}

namespace {

Point2 draw_on_disk(RandomStream& rng, double radius) {
    const double r = radius * std::sqrt(rng.uniform());
    const double th = 2.0 * M_PI * rng.uniform();
    return {r * std::cos(th), r * std::sin(th)};
}

bool has_exact_coincidence(const std::vector<Point2>& bs,
                           const std::vector<Point2>& users) {
    for (std::size_t l = 0; l < bs.size(); ++l)
        for (std::size_t k = 0; k < users.size(); ++k)
            if (bs[l].x == users[k].x && bs[l].y == users[k].y) return true;
    return false;
}

double dist(const Point2& a, const Point2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace

NetworkInstance place_and_associate(const NetworkConfig& cfg) {
    const SizeRealization s = realize_sizes(cfg);

    NetworkInstance net;
    net.config = cfg;
    net.l = s.l;
    net.m = s.m;
    net.k = s.k;
    net.t = s.t;
    net.n_pa = s.n_pa;
    net.n_realized = s.n_realized;

    for (int attempt = 0; attempt < 2; ++attempt) {
        RandomStream pos(derive_seed(cfg.seed, {0, std::uint64_t(attempt)}));
        net.bs_positions.assign(s.l, {});
        net.user_positions.assign(s.k, {});
        for (auto& b : net.bs_positions) b = draw_on_disk(pos, cfg.region_radius);
        for (auto& u : net.user_positions)
            u = draw_on_disk(pos, cfg.region_radius);
        if (!has_exact_coincidence(net.bs_positions, net.user_positions)) break;
        if (attempt == 1)
            throw DegenerateGeometry("coinciding nodes after one redraw");
    }

    net.beta.set_size(s.l, s.k);
    for (long long k = 0; k < s.k; ++k)
        for (long long l = 0; l < s.l; ++l)
            net.beta(l, k) = std::pow(
                dist(net.bs_positions[l], net.user_positions[k]),
                -cfg.params.alpha);

    // n_pa nearest BSs per user, ascending distance (index breaks exact ties).
    net.assoc.assign(s.k, {});
    net.users_of_bs.assign(s.l, {});
    std::vector<unsigned> order(s.l);
    for (long long k = 0; k < s.k; ++k) {
        std::iota(order.begin(), order.end(), 0u);
        const Point2 u = net.user_positions[k];
        std::sort(order.begin(), order.end(), [&](unsigned a, unsigned b) {
            const double da = dist(net.bs_positions[a], u);
            const double db = dist(net.bs_positions[b], u);
            return da < db || (da == db && a < b);
        });
        net.assoc[k].assign(order.begin(), order.begin() + s.n_pa);
        for (unsigned l : net.assoc[k])
            net.users_of_bs[l].push_back(static_cast<unsigned>(k));
    }

    RandomStream sel(derive_seed(cfg.seed, {1}));
    if (cfg.random_typical_user) {
        net.typical_user =
            static_cast<unsigned>(sel.uniform_int(0, std::uint64_t(s.k) - 1));
    } else {
        unsigned best = 0;
        double best_d = dist(net.user_positions[0], {0.0, 0.0});
        for (long long k = 1; k < s.k; ++k) {
            const double d = dist(net.user_positions[k], {0.0, 0.0});
            if (d < best_d) {
                best_d = d;
                best = static_cast<unsigned>(k);
            }
        }
        net.typical_user = best;
    }

    RandomStream pil(derive_seed(cfg.seed, {2}));
    net.pilot_of.assign(s.k, 0);
    if (s.t >= s.k) {
        std::vector<unsigned> pool(s.t);
        std::iota(pool.begin(), pool.end(), 1u);
        std::shuffle(pool.begin(), pool.end(), pil.engine());
        for (long long k = 0; k < s.k; ++k) net.pilot_of[k] = pool[k];
    } else {
        for (long long k = 0; k < s.k; ++k)
            net.pilot_of[k] =
                static_cast<unsigned>(pil.uniform_int(1, std::uint64_t(s.t)));
    }
    return net;
}

void save_snapshot(const NetworkInstance& net, std::ostream& os) {
    char buf[64];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        os << buf;
    };
    os << "lscran-network 1\n";
    os << "sizes " << net.l << ' ' << net.m << ' ' << net.k << ' ' << net.t
       << ' ' << net.n_pa << ' ' << net.n_realized << '\n';
    os << "alpha ";
    put(net.config.params.alpha);
    os << "\nradius ";
    put(net.config.region_radius);
    os << "\ntypical " << net.typical_user << '\n';
    for (const auto& b : net.bs_positions) {
        os << "bs ";
        put(b.x);
        os << ' ';
        put(b.y);
        os << '\n';
    }
    for (const auto& u : net.user_positions) {
        os << "user ";
        put(u.x);
        os << ' ';
        put(u.y);
        os << '\n';
    }
    os << "pilots";
    for (unsigned p : net.pilot_of) os << ' ' << p;
    os << '\n';
    for (long long k = 0; k < net.k; ++k) {
        os << "assoc " << k;
        for (unsigned l : net.assoc[k]) os << ' ' << l;
        os << '\n';
    }
}

NetworkInstance load_snapshot(std::istream& is) {
    std::string tag;
    int version = 0;
    is >> tag >> version;
    if (tag != "lscran-network" || version != 1)
        throw std::invalid_argument("not a network snapshot");
    NetworkInstance net;
    is >> tag >> net.l >> net.m >> net.k >> net.t >> net.n_pa >> net.n_realized;
    is >> tag >> net.config.params.alpha;
    is >> tag >> net.config.region_radius;
    is >> tag >> net.typical_user;
    net.config.n_target = net.n_realized;
    net.bs_positions.resize(net.l);
    net.user_positions.resize(net.k);
    for (auto& b : net.bs_positions) is >> tag >> b.x >> b.y;
    for (auto& u : net.user_positions) is >> tag >> u.x >> u.y;
    is >> tag;
    net.pilot_of.resize(net.k);
    for (auto& p : net.pilot_of) is >> p;
    net.assoc.assign(net.k, {});
    net.users_of_bs.assign(net.l, {});
    for (long long k = 0; k < net.k; ++k) {
        long long idx = 0;
        is >> tag >> idx;
        net.assoc[idx].resize(net.n_pa);
        for (auto& l : net.assoc[idx]) is >> l;
        for (unsigned l : net.assoc[idx])
            net.users_of_bs[l].push_back(static_cast<unsigned>(idx));
    }
    if (!is) throw std::invalid_argument("truncated network snapshot");
    net.beta.set_size(net.l, net.k);
    for (long long k = 0; k < net.k; ++k)
        for (long long l = 0; l < net.l; ++l)
            net.beta(l, k) = std::pow(
                std::hypot(net.bs_positions[l].x - net.user_positions[k].x,
                           net.bs_positions[l].y - net.user_positions[k].y),
                -net.config.params.alpha);
    return net;
}

}  // namespace lscran
