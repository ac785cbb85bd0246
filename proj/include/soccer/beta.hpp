#pragma once

#include <array>
#include <cstddef>

#include "soccer/rng.hpp"

namespace soccer {

double softplus(double x);
double sigmoid(double x);
double digamma(double x);
double trigamma(double x);
double log_beta(double a, double b);

// Beta(alpha, beta) on (0,1), used per action dimension with the affine map
// action = 2u - 1 onto (-1,1). Heads are parameterized alpha = 1 +
// softplus(raw) so the density is always unimodal.
struct BetaDist {
    double alpha;
    double beta;

    double sample(Rng& rng) const;            // u in (0,1)
    double mode() const;                      // (a-1)/(a+b-2), valid a,b > 1
    double log_prob(double u) const;          // density of u on (0,1)
    double entropy() const;                   // differential entropy on (0,1)
    // d log_prob / d(alpha, beta) at fixed u
    std::array<double, 2> log_prob_grad(double u) const;
    // d entropy / d(alpha, beta)
    std::array<double, 2> entropy_grad() const;
};

inline double action_from_u(double u) { return 2.0 * u - 1.0; }
inline double u_from_action(double a) { return 0.5 * (a + 1.0); }

// Per-dimension log density of the transformed action on (-1,1): the |du/da|
// = 1/2 Jacobian contributes -ln 2.
inline double action_log_prob(const BetaDist& d, double u) {
    return d.log_prob(u) - 0.693147180559945309;
}
// Entropy of the transformed action: + ln 2 per dimension.
inline double action_entropy(const BetaDist& d) {
    return d.entropy() + 0.693147180559945309;
}

}  // namespace soccer
