#pragma once

#include <cmath>

namespace soccer {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
    Vec2 operator-() const { return {-x, -y}; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm_sq() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm_sq()); }

    Vec2 normalized_or_zero() const {
        double n = norm();
        return n > 1e-12 ? Vec2{x / n, y / n} : Vec2{};
    }

    // Rotate counter-clockwise by angle (radians).
    Vec2 rotated(double angle) const {
        double c = std::cos(angle), s = std::sin(angle);
        return {c * x - s * y, s * x + c * y};
    }

    bool operator==(const Vec2&) const = default;
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

// Normalize angle into (-pi, pi].
inline double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * M_PI);
    if (a <= -M_PI) a += 2.0 * M_PI;
    else if (a > M_PI) a -= 2.0 * M_PI;
    return a;
}

}  // namespace soccer
