#include "soccer/beta.hpp"

#include <algorithm>
#include <cmath>

namespace soccer {

double softplus(double x) {
    if (x > 30.0) return x;
    if (x < -30.0) return std::exp(x);
    return std::log1p(std::exp(x));
}

double sigmoid(double x) {
    if (x >= 0.0) {
        double e = std::exp(-x);
        return 1.0 / (1.0 + e);
    }
    double e = std::exp(x);
    return e / (1.0 + e);
}

double digamma(double x) {
    // Recurrence up to x >= 10, then the asymptotic expansion through
    // 1/x^10; the truncation error is below 1e-13 everywhere we use it.
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    double inv = 1.0 / x, inv2 = inv * inv;
    double series =
        1.0 / 12.0 -
        inv2 * (1.0 / 120.0 -
                inv2 * (1.0 / 252.0 -
                        inv2 * (1.0 / 240.0 - inv2 / 132.0)));
    return acc + std::log(x) - 0.5 * inv - inv2 * series;
}

double trigamma(double x) {
    double acc = 0.0;
    while (x < 10.0) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    double inv = 1.0 / x, inv2 = inv * inv;
    double series =
        1.0 / 6.0 -
        inv2 * (1.0 / 30.0 -
                inv2 * (1.0 / 42.0 -
                        inv2 * (1.0 / 30.0 - inv2 * (5.0 / 66.0))));
    return acc + inv * (1.0 + inv * (0.5 + inv * series));
}

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double BetaDist::sample(Rng& rng) const {
    double x = rng.gamma(alpha);
    double y = rng.gamma(beta);
    double u = x / (x + y);
    return std::clamp(u, 1e-9, 1.0 - 1e-9);
}

double BetaDist::mode() const { return (alpha - 1.0) / (alpha + beta - 2.0); }

double BetaDist::log_prob(double u) const {
    return (alpha - 1.0) * std::log(u) + (beta - 1.0) * std::log1p(-u) -
           log_beta(alpha, beta);
}

double BetaDist::entropy() const {
    return log_beta(alpha, beta) - (alpha - 1.0) * digamma(alpha) -
           (beta - 1.0) * digamma(beta) +
           (alpha + beta - 2.0) * digamma(alpha + beta);
}

std::array<double, 2> BetaDist::log_prob_grad(double u) const {
    double psi_ab = digamma(alpha + beta);
    return {std::log(u) - digamma(alpha) + psi_ab,
            std::log1p(-u) - digamma(beta) + psi_ab};
}

std::array<double, 2> BetaDist::entropy_grad() const {
    double t_ab = trigamma(alpha + beta);
    double common = (alpha + beta - 2.0) * t_ab;
    return {common - (alpha - 1.0) * trigamma(alpha),
            common - (beta - 1.0) * trigamma(beta)};
}

}  // namespace soccer
