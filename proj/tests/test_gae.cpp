#include <cmath>
#include <vector>

#include "doctest.h"
#include "soccer/gae.hpp"
#include "soccer/rng.hpp"

using namespace soccer;

namespace {

// Brute-force oracle: A_t as the exponentially weighted sum of k-step TD
// residuals, truncating at episode boundaries exactly like the recursion.
std::vector<double> gae_oracle(const std::vector<double>& r,
                               const std::vector<double>& v,
                               const std::vector<uint8_t>& done,
                               const std::vector<uint8_t>& boot, double gamma,
                               double lam) {
    size_t T = r.size();
    std::vector<double> delta(T);
    for (size_t t = 0; t < T; ++t) {
        double next_mask = (done[t] && !boot[t]) ? 0.0 : 1.0;
        delta[t] = r[t] + gamma * v[t + 1] * next_mask - v[t];
    }
    std::vector<double> adv(T);
    for (size_t t = 0; t < T; ++t) {
        double acc = 0.0;
        double w = 1.0;
        for (size_t k = t; k < T; ++k) {
            acc += w * delta[k];
            if (done[k]) break;  // the recursion resets across episode ends
            w *= gamma * lam;
        }
        adv[t] = acc;
    }
    return adv;
}

}  // namespace

TEST_CASE("single-step episode reduces to the TD residual") {
    // r=1, v=[0.5, 0], terminal without bootstrap: A = 1 - 0.5.
    auto res = compute_gae(std::vector<double>{1.0}, std::vector<double>{0.5, 0.0},
                           std::vector<uint8_t>{1}, std::vector<uint8_t>{0},
                           0.99, 0.95);
    REQUIRE(res.advantages.size() == 1);
    CHECK(res.advantages[0] == doctest::Approx(0.5));
    CHECK(res.returns[0] == doctest::Approx(1.0));
}

TEST_CASE("two-step hand example") {
    // gamma=0.9, lam=0.5, rewards [1, 2], values [1, 2, 3], no terminations.
    // delta_0 = 1 + 0.9*2 - 1 = 1.8; delta_1 = 2 + 0.9*3 - 2 = 2.7
    // A_1 = 2.7; A_0 = 1.8 + 0.45*2.7 = 3.015
    auto res = compute_gae(std::vector<double>{1.0, 2.0},
                           std::vector<double>{1.0, 2.0, 3.0},
                           std::vector<uint8_t>{0, 0}, std::vector<uint8_t>{0, 0},
                           0.9, 0.5);
    CHECK(res.advantages[1] == doctest::Approx(2.7));
    CHECK(res.advantages[0] == doctest::Approx(3.015));
    CHECK(res.returns[0] == doctest::Approx(3.015 + 1.0));
}

TEST_CASE("time-limit bootstrap keeps the next value in delta") {
    // Terminal at t=0 with bootstrap: delta uses gamma*v1, recursion resets.
    auto res = compute_gae(std::vector<double>{1.0, 0.5},
                           std::vector<double>{0.0, 2.0, 1.0},
                           std::vector<uint8_t>{1, 0}, std::vector<uint8_t>{1, 0},
                           0.9, 0.5);
    CHECK(res.advantages[0] == doctest::Approx(1.0 + 0.9 * 2.0));
    // t=1 unaffected by the earlier episode.
    CHECK(res.advantages[1] == doctest::Approx(0.5 + 0.9 * 1.0 - 2.0));
}

TEST_CASE("recursion agrees with the brute-force oracle on random sequences") {
    Rng rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        size_t T = 1 + static_cast<size_t>(rng.uniform_int(1, 40));
        std::vector<double> r(T), v(T + 1);
        std::vector<uint8_t> done(T, 0), boot(T, 0);
        for (double& x : r) x = rng.uniform(-2.0, 2.0);
        for (double& x : v) x = rng.uniform(-2.0, 2.0);
        for (size_t t = 0; t < T; ++t) {
            if (rng.uniform(0.0, 1.0) < 0.2) {
                done[t] = 1;
                if (rng.uniform(0.0, 1.0) < 0.5) boot[t] = 1;
            }
        }
        double gamma = rng.uniform(0.8, 1.0);
        double lam = rng.uniform(0.5, 1.0);

        auto res = compute_gae(r, v, done, boot, gamma, lam);
        auto oracle = gae_oracle(r, v, done, boot, gamma, lam);
        REQUIRE(res.advantages.size() == T);
        for (size_t t = 0; t < T; ++t) {
            CHECK(res.advantages[t] == doctest::Approx(oracle[t]).epsilon(1e-10));
            CHECK(res.returns[t] ==
                  doctest::Approx(oracle[t] + v[t]).epsilon(1e-10));
        }
    }
}

TEST_CASE("length mismatches are rejected") {
    CHECK_THROWS(compute_gae(std::vector<double>{1.0},
                             std::vector<double>{0.5},  // needs T+1 values
                             std::vector<uint8_t>{1}, std::vector<uint8_t>{0},
                             0.99, 0.95));
}

TEST_CASE("advantage normalization yields mean zero unit variance") {
    std::vector<double> adv = {1.0, 2.0, 3.0, 4.0, 10.0};
    normalize_advantages(adv);
    double mean = 0.0, var = 0.0;
    for (double a : adv) mean += a;
    mean /= adv.size();
    for (double a : adv) var += (a - mean) * (a - mean);
    var /= adv.size();
    CHECK(mean == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(var == doctest::Approx(1.0).epsilon(1e-9));

    std::vector<double> flat = {2.0, 2.0, 2.0};
    normalize_advantages(flat);  // degenerate std: stays finite
    for (double a : flat) CHECK(std::isfinite(a));
}
