#include "soccer/gae.hpp"

#include <cmath>
#include <stdexcept>

namespace soccer {

GaeResult compute_gae(std::span<const double> rewards,
                      std::span<const double> values,
                      std::span<const uint8_t> dones,
                      std::span<const uint8_t> bootstraps, double gamma,
                      double lam) {
    const size_t T = rewards.size();
    if (values.size() != T + 1 || dones.size() != T || bootstraps.size() != T)
        throw std::invalid_argument("compute_gae: sequence length mismatch");

    GaeResult out;
    out.advantages.assign(T, 0.0);
    out.returns.assign(T, 0.0);
    double next_adv = 0.0;
    for (size_t t = T; t-- > 0;) {
        double next_mask = (dones[t] && !bootstraps[t]) ? 0.0 : 1.0;
        double delta = rewards[t] + gamma * values[t + 1] * next_mask - values[t];
        double cont = dones[t] ? 0.0 : 1.0;
        next_adv = delta + gamma * lam * cont * next_adv;
        out.advantages[t] = next_adv;
        out.returns[t] = next_adv + values[t];
    }
    return out;
}

void normalize_advantages(std::span<double> adv) {
    if (adv.empty()) return;
    double mean = 0.0;
    for (double a : adv) mean += a;
    mean /= static_cast<double>(adv.size());
    double var = 0.0;
    for (double a : adv) var += (a - mean) * (a - mean);
    double std = std::sqrt(var / static_cast<double>(adv.size()));
    if (std < 1e-8) std = 1e-8;
    for (double& a : adv) a = (a - mean) / std;
}

}  // namespace soccer
