#include "fracnet/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace fracnet {

namespace {

int orientation(Vec2 p, Vec2 q, Vec2 r) {
    const double d = cross(q - p, r - p);
    if (d > kOrientTol) return 1;
    if (d < -kOrientTol) return -1;
    return 0;
}

// p is known to be collinear with s; test whether it lies within the bounding box.
bool on_segment(Vec2 p, const Segment& s) {
    return p.x <= std::max(s.a.x, s.b.x) + kOrientTol && p.x >= std::min(s.a.x, s.b.x) - kOrientTol &&
           p.y <= std::max(s.a.y, s.b.y) + kOrientTol && p.y >= std::min(s.a.y, s.b.y) - kOrientTol;
}

std::optional<Vec2> collinear_overlap(const Segment& s1, const Segment& s2) {
    const Vec2 dir = s1.b - s1.a;
    const double len2 = dot(dir, dir);
    auto param = [&](Vec2 p) { return dot(p - s1.a, dir) / len2; };
    double t0 = param(s2.a);
    double t1 = param(s2.b);
    if (t0 > t1) std::swap(t0, t1);
    const double lo = std::max(0.0, t0);
    const double hi = std::min(1.0, t1);
    const double slack = kOrientTol / std::sqrt(len2);
    if (lo > hi + slack) return std::nullopt;
    const double mid = 0.5 * (lo + std::max(lo, hi));
    return s1.a + mid * dir;
}

} // namespace

std::optional<Vec2> segment_intersection(const Segment& s1, const Segment& s2) {
    // Zero-length segments (fractures clipped down to a box corner).
    const bool p1 = s1.a == s1.b;
    const bool p2 = s2.a == s2.b;
    if (p1 || p2) {
        const Vec2 p = p1 ? s1.a : s2.a;
        const Segment& other = p1 ? s2 : s1;
        if (point_segment_distance(p, other) <= kOrientTol) return p;
        return std::nullopt;
    }

    const int o1 = orientation(s1.a, s1.b, s2.a);
    const int o2 = orientation(s1.a, s1.b, s2.b);
    const int o3 = orientation(s2.a, s2.b, s1.a);
    const int o4 = orientation(s2.a, s2.b, s1.b);

    if (o1 == 0 && o2 == 0) {
        // Both endpoints of s2 on the supporting line of s1.
        return collinear_overlap(s1, s2);
    }

    if (o1 != o2 && o3 != o4) {
        if (o1 == 0) return s2.a;
        if (o2 == 0) return s2.b;
        if (o3 == 0) return s1.a;
        if (o4 == 0) return s1.b;
        const Vec2 r = s1.b - s1.a;
        const Vec2 q = s2.b - s2.a;
        const double t = cross(s2.a - s1.a, q) / cross(r, q);
        return s1.a + t * r;
    }

    // Touching configurations where one endpoint is collinear and on the other segment.
    if (o1 == 0 && on_segment(s2.a, s1)) return s2.a;
    if (o2 == 0 && on_segment(s2.b, s1)) return s2.b;
    if (o3 == 0 && on_segment(s1.a, s2)) return s1.a;
    if (o4 == 0 && on_segment(s1.b, s2)) return s1.b;
    return std::nullopt;
}

double point_segment_distance(Vec2 p, const Segment& s) {
    const Vec2 d = s.b - s.a;
    const double len2 = dot(d, d);
    double t = 0.0;
    if (len2 > 0.0) t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
    const Vec2 c = s.a + t * d;
    return std::hypot(p.x - c.x, p.y - c.y);
}

std::optional<Segment> clip_to_box(const Segment& s, Vec2 lo, Vec2 hi) {
    const Vec2 d = s.b - s.a;
    double t0 = 0.0;
    double t1 = 1.0;
    const double p[4] = {-d.x, d.x, -d.y, d.y};
    const double q[4] = {s.a.x - lo.x, hi.x - s.a.x, s.a.y - lo.y, hi.y - s.a.y};
    for (int k = 0; k < 4; ++k) {
        if (p[k] == 0.0) {
            if (q[k] < 0.0) return std::nullopt;
            continue;
        }
        const double r = q[k] / p[k];
        if (p[k] < 0.0) {
            t0 = std::max(t0, r);
        } else {
            t1 = std::min(t1, r);
        }
    }
    if (t0 > t1) return std::nullopt;
    Segment out{s.a + t0 * d, s.a + t1 * d};
    // Pin endpoints exactly onto the box to remove round-off drift.
    for (Vec2* v : {&out.a, &out.b}) {
        v->x = std::clamp(v->x, lo.x, hi.x);
        v->y = std::clamp(v->y, lo.y, hi.y);
    }
    return out;
}

} // namespace fracnet
