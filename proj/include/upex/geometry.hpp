#pragma once

#include "upex/rational.hpp"

#include <optional>
#include <vector>

namespace upex {

struct Point {
    Rat x, y;

    bool operator==(const Point& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Point& o) const { return !(*this == o); }
    bool operator<(const Point& o) const { return x != o.x ? x < o.x : y < o.y; }
};

// Sign of the cross product (b-a) x (c-a): >0 left turn, <0 right turn.
int orientation(const Point& a, const Point& b, const Point& c);

// Left-to-right comparison of two direction vectors attached to the same
// vertex. Directions must lie strictly in the open upper half plane
// (outgoing first segments) or strictly in the open lower half plane
// (incoming first segments); mixing halves is a caller bug.
//
// Returns <0 if d1 is left of d2, >0 if right, 0 if parallel.
int compare_tangents(const Point& d1, const Point& d2);

enum class SegIntersection {
    None,
    Point,    // single common point
    Overlap,  // collinear segments sharing more than one point
};

struct SegIntersectResult {
    SegIntersection kind = SegIntersection::None;
    // Populated when kind == Point.
    std::optional<Point> point;
};

// Exact closed-segment intersection of [a,b] and [c,d].
SegIntersectResult segment_intersection(const Point& a, const Point& b,
                                        const Point& c, const Point& d);

// True iff p lies on the closed segment [a,b].
bool on_segment(const Point& a, const Point& b, const Point& p);

// A polyline route, ordered tail to head. Valid routes are strictly
// y-increasing and have at least 2 points.
using Polyline = std::vector<Point>;

bool strictly_y_increasing(const Polyline& pl);

// x-coordinate of the unique crossing of a strictly y-increasing polyline
// with the horizontal line at height y. Requires first.y <= y <= last.y;
// if y coincides with an interior bend the bend's x is returned.
Rat polyline_x_at(const Polyline& pl, const Rat& y);

}  // namespace upex
