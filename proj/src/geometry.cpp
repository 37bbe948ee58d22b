#include "upex/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace upex {

int orientation(const Point& a, const Point& b, const Point& c) {
    Rat cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return sign(cross);
}

int compare_tangents(const Point& d1, const Point& d2) {
    // Within one open half plane, "d1 left of d2" is exactly cross(d1,d2)<0
    // for the upper half and cross(d1,d2)>0 for the lower half.
    Rat cross = d1.x * d2.y - d1.y * d2.x;
    int s1 = sign(d1.y);
    assert(s1 != 0 && sign(d2.y) == s1);
    return s1 > 0 ? sign(cross) : -sign(cross);
}

bool on_segment(const Point& a, const Point& b, const Point& p) {
    if (orientation(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

SegIntersectResult segment_intersection(const Point& a, const Point& b,
                                        const Point& c, const Point& d) {
    SegIntersectResult res;
    // Disjoint bounding boxes settle most pairs without cross products.
    if (std::max(a.y, b.y) < std::min(c.y, d.y) || std::max(c.y, d.y) < std::min(a.y, b.y) ||
        std::max(a.x, b.x) < std::min(c.x, d.x) || std::max(c.x, d.x) < std::min(a.x, b.x))
        return res;
    int o1 = orientation(a, b, c);
    int o2 = orientation(a, b, d);
    int o3 = orientation(c, d, a);
    int o4 = orientation(c, d, b);

    if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) {
        // Proper crossing; solve for the point.
        Rat dx1 = b.x - a.x, dy1 = b.y - a.y;
        Rat dx2 = d.x - c.x, dy2 = d.y - c.y;
        Rat den = dx1 * dy2 - dy1 * dx2;
        Rat t = ((c.x - a.x) * dy2 - (c.y - a.y) * dx2) / den;
        res.kind = SegIntersection::Point;
        res.point = Point{a.x + t * dx1, a.y + t * dy1};
        return res;
    }

    if (o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0) {
        // Collinear. Project on the dominant axis.
        bool use_x = (a.x != b.x) || (c.x != d.x);
        auto key = [&](const Point& p) { return use_x ? p.x : p.y; };
        Rat lo1 = std::min(key(a), key(b)), hi1 = std::max(key(a), key(b));
        Rat lo2 = std::min(key(c), key(d)), hi2 = std::max(key(c), key(d));
        Rat lo = std::max(lo1, lo2), hi = std::min(hi1, hi2);
        if (lo > hi) return res;  // disjoint
        if (lo < hi) {
            res.kind = SegIntersection::Overlap;
            return res;
        }
        // Touch at one point.
        res.kind = SegIntersection::Point;
        for (const Point* p : {&a, &b, &c, &d}) {
            if (key(*p) == lo && on_segment(c, d, *p) && on_segment(a, b, *p)) {
                res.point = *p;
                break;
            }
        }
        assert(res.point.has_value());
        return res;
    }

    // Non-parallel but at least one orientation is zero, or parallel and
    // disjoint: intersection, if any, is an endpoint lying on the other
    // segment.
    for (const Point* p : {&c, &d}) {
        if (on_segment(a, b, *p)) {
            res.kind = SegIntersection::Point;
            res.point = *p;
            return res;
        }
    }
    for (const Point* p : {&a, &b}) {
        if (on_segment(c, d, *p)) {
            res.kind = SegIntersection::Point;
            res.point = *p;
            return res;
        }
    }
    return res;
}

bool strictly_y_increasing(const Polyline& pl) {
    if (pl.size() < 2) return false;
    for (size_t i = 1; i < pl.size(); ++i)
        if (!(pl[i - 1].y < pl[i].y)) return false;
    return true;
}

Rat polyline_x_at(const Polyline& pl, const Rat& y) {
    assert(pl.size() >= 2);
    if (!(pl.front().y <= y && y <= pl.back().y))
        throw std::invalid_argument("polyline_x_at: height outside route span");
    for (size_t i = 1; i < pl.size(); ++i) {
        const Point& p = pl[i - 1];
        const Point& q = pl[i];
        if (p.y <= y && y <= q.y) {
            if (p.y == q.y) return p.x;  // cannot happen on valid routes
            Rat t = (y - p.y) / (q.y - p.y);
            return p.x + t * (q.x - p.x);
        }
    }
    return pl.back().x;
}

}  // namespace upex
