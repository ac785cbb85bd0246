#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>

namespace soccer {

// Deterministic per-instance random stream. Thin wrapper around mt19937_64 so
// stream state can be serialized into checkpoints.
class Rng {
public:
    Rng() : engine_(0x9e3779b97f4a7c15ull) {}
    explicit Rng(uint64_t seed) { this->seed(seed); }

    void seed(uint64_t s) { engine_.seed(s); }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    // Uniform in (-pi, pi].
    double angle() {
        double a = uniform(-3.14159265358979323846, 3.14159265358979323846);
        return a == -3.14159265358979323846 ? 3.14159265358979323846 : a;
    }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return std::uniform_int_distribution<int>(lo, hi)(engine_);
    }

    double normal(double mean = 0.0, double stddev = 1.0) {
        return std::normal_distribution<double>(mean, stddev)(engine_);
    }

    double gamma(double shape) {
        return std::gamma_distribution<double>(shape, 1.0)(engine_);
    }

    std::mt19937_64& engine() { return engine_; }

    std::string serialize() const {
        std::ostringstream os;
        os << engine_;
        return os.str();
    }

    void deserialize(const std::string& s) {
        std::istringstream is(s);
        is >> engine_;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace soccer
