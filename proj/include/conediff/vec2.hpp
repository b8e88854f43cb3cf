#pragma once

#include <cmath>

namespace conediff {

// Planar vector. Value type, used for node positions, tangents and normals.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double xx, double yy) : x(xx), y(yy) {}

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator*(double c) const { return {x * c, y * c}; }
    constexpr Vec2 operator/(double c) const { return {x / c, y / c}; }
    constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    constexpr Vec2& operator*=(double c) { x *= c; y *= c; return *this; }
    constexpr bool operator==(const Vec2&) const = default;

    double norm() const { return std::hypot(x, y); }
    constexpr double norm2() const { return x * x + y * y; }
};

constexpr Vec2 operator*(double c, Vec2 v) { return {c * v.x, c * v.y}; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

// Counterclockwise quarter turn.  The curve normal is J * tangent.
constexpr Vec2 jrot(Vec2 v) { return {-v.y, v.x}; }

// Reflection across the line through the origin with direction angle theta.
struct Reflection {
    double m00, m01, m10, m11;

    static Reflection across_angle(double theta) {
        const double c = std::cos(2.0 * theta);
        const double s = std::sin(2.0 * theta);
        return {c, s, s, -c};
    }

    constexpr Vec2 operator()(Vec2 v) const {
        return {m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y};
    }
};

}  // namespace conediff
