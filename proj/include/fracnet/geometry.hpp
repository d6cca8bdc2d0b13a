#pragma once

#include <optional>

namespace fracnet {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

struct Segment {
    Vec2 a;
    Vec2 b;
    friend bool operator==(const Segment&, const Segment&) = default;
};

/// Tolerance on the orientation determinant used by intersection tests.
inline constexpr double kOrientTol = 1e-9;

/// Intersection of two closed segments. Endpoint contact counts; collinear
/// overlap returns the midpoint of the shared part.
std::optional<Vec2> segment_intersection(const Segment& s1, const Segment& s2);

/// Euclidean distance from `p` to the closed segment `s`.
double point_segment_distance(Vec2 p, const Segment& s);

/// Clip `s` to the box [lo.x, hi.x] x [lo.y, hi.y] (Liang-Barsky).
std::optional<Segment> clip_to_box(const Segment& s, Vec2 lo, Vec2 hi);

} // namespace fracnet
