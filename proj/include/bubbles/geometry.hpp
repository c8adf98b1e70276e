#pragma once

#include <array>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "bubbles/errors.hpp"

namespace bubbles {

// Exact rational point; fractions are kept canonical (reduced, positive den).
struct Point2 {
    mpq_class x, y;

    Point2() = default;
    Point2(mpq_class x_, mpq_class y_) : x(std::move(x_)), y(std::move(y_)) {
        x.canonicalize();
        y.canonicalize();
    }

    bool operator==(const Point2& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Point2& o) const { return !(*this == o); }
    bool operator<(const Point2& o) const { return x != o.x ? x < o.x : y < o.y; }
};

enum class PointLabel { good, bad };

struct LabeledPoint {
    Point2 point;
    PointLabel label = PointLabel::good;
};

// Circle as exact center plus squared radius r2 > 0.
struct Circle {
    Point2 center;
    mpq_class r2;
};

// Delaunay triangulation of the distinct input points (sorted order).
// triangles are ccw index triples; neighbors[t][i] faces the edge opposite
// vertex i of triangle t (-1 on the hull). No vertex lies strictly inside any
// triangle's circumcircle.
struct Triangulation {
    std::vector<Point2> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<std::array<int, 3>> neighbors;
};

// Exact incremental construction; all-collinear input raises collinear_error.
Triangulation delaunay(const std::vector<Point2>& points);

// Exact circumcircle; collinear input raises collinear_error.
Circle circumcircle(const Point2& a, const Point2& b, const Point2& c);

// Eight rational points exactly on the circle of radius 2 (angle-ascending
// order), with maximum angular gap below 2*arccos(7/8): the rational stand-in
// for a regular polygon ring.
std::vector<Point2> ring_points();

struct GoodCircleResult {
    Circle circle;
    std::vector<Point2> contained_good; // goods strictly inside, sorted
    long long good_in_frame = 0;        // g: goods strictly inside the frame
    long long bad_in_3frame = 0;        // b: bads strictly inside the scaled 3-disk
};

// The certified extractor: scales the frame radius up to the next exact
// rational s (never reaching twice the radius), triangulates the bad points in
// the open 3s-disk together with the ring scaled by s, and returns the
// circumcircle meeting the open s-disk that contains the most good points
// (ties: smaller r2, then lexicographic center). Guarantees, both exact:
// no bad point of the whole input lies strictly inside the returned circle,
// and the count exceeds g/(2b+14).
GoodCircleResult good_circle(const std::vector<LabeledPoint>& points, const Point2& frame_center,
                             const mpq_class& frame_r2);

// Exhaustive oracle (<= 200 points): candidate centers are the good points,
// all pair midpoints, all triple circumcenters, and samples of every pair's
// bisector line between and just beside the good-bad tie parameters (a
// winning region may hug a tie when the cap, not another tie, bounds its far
// side); at each center
// the optimal squared radius is swept exactly (just past the k-th good
// distance, short of the nearest bad), restricted to the closed 3s-disk at
// the scaled frame radius s -- the same family the extractor draws from.
// Points the family cannot reach are discarded up front.
// Returns a bad-free circle with the maximum good count (count 0 witness when
// nothing better exists). An optimal circle is pinned by points or tied along
// a bisector, so its center is enumerated or bracketed and its count realized.
std::pair<Circle, long long> brute_force_best_circle(const std::vector<LabeledPoint>& points,
                                                     const Point2& frame_center, const mpq_class& frame_r2);

} // namespace bubbles
