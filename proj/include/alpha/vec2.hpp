#ifndef ALPHA_VEC2_HPP
#define ALPHA_VEC2_HPP

#include <cmath>

namespace alpha {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
};

inline Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
inline Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
inline Vec2 operator*(double s, Vec2 v) { return v *= s; }
inline Vec2 operator*(Vec2 v, double s) { return v *= s; }
inline Vec2 operator-(const Vec2& v) { return {-v.x, -v.y}; }

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm2(const Vec2& v) { return v.x * v.x + v.y * v.y; }
inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }

/// Counterclockwise quarter turn; matches the segment normal convention n = rot90(t).
inline Vec2 rot90(const Vec2& v) { return {-v.y, v.x}; }

inline Vec2 rotate(const Vec2& v, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

inline Vec2 normalized(const Vec2& v) {
    const double n = norm(v);
    return {v.x / n, v.y / n};
}

inline double dist(const Vec2& a, const Vec2& b) { return norm(a - b); }

} // namespace alpha

#endif
