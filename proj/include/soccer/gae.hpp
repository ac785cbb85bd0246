#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace soccer {

struct GaeResult {
    std::vector<double> advantages;
    std::vector<double> returns;  // advantages + values
};

// Generalized advantage estimation over one (env, agent) sequence.
//   delta_t = r_t + gamma * v_{t+1} * (1 - done_t or bootstrap_t) - v_t
//   A_t     = delta_t + gamma * lambda * (1 - done_t) * A_{t+1}
// `values` has length T+1 (the trailing entry bootstraps the horizon end).
// Time-limit terminations carry bootstrap = true so the value beyond the cut
// still feeds delta while the advantage recursion is reset.
GaeResult compute_gae(std::span<const double> rewards,
                      std::span<const double> values,
                      std::span<const uint8_t> dones,
                      std::span<const uint8_t> bootstraps, double gamma,
                      double lam);

// Normalizes in place to mean 0, std 1 (no-op guard for degenerate std).
void normalize_advantages(std::span<double> adv);

}  // namespace soccer
