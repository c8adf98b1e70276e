#include "bubbles/geometry.hpp"

#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

using namespace bubbles;

namespace {

mpq_class dist2(const Point2& a, const Point2& b) {
    mpq_class dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

std::vector<LabeledPoint> random_instance(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> num(-32, 32);
    std::uniform_int_distribution<int> den_pick(0, 2);
    std::uniform_int_distribution<int> label(0, 9);
    const int dens[3] = {1, 2, 4};
    std::set<Point2> used;
    std::vector<LabeledPoint> pts;
    // One good strictly inside the frame disk keeps good_circle applicable.
    pts.push_back({Point2(mpq_class(1, 3), mpq_class(-1, 5)), PointLabel::good});
    used.insert(pts.back().point);
    while (static_cast<int>(pts.size()) < n) {
        Point2 p(mpq_class(num(rng), dens[den_pick(rng)]), mpq_class(num(rng), dens[den_pick(rng)]));
        if (!used.insert(p).second) continue;
        pts.push_back({p, label(rng) < 7 ? PointLabel::good : PointLabel::bad});
    }
    return pts;
}

void check_good_circle_contract(const std::vector<LabeledPoint>& pts, const Point2& fc,
                                const mpq_class& fr2, const GoodCircleResult& res) {
    long long g = 0, inside = 0;
    for (const auto& lp : pts) {
        if (lp.label == PointLabel::bad) {
            CHECK(dist2(lp.point, res.circle.center) >= res.circle.r2);
        } else {
            if (dist2(lp.point, fc) < fr2) ++g;
            if (dist2(lp.point, res.circle.center) < res.circle.r2) ++inside;
        }
    }
    CHECK(res.circle.r2 > 0);
    CHECK(g == res.good_in_frame);
    CHECK(inside == static_cast<long long>(res.contained_good.size()));
    CHECK(std::is_sorted(res.contained_good.begin(), res.contained_good.end()));
    // count * (2b + 14) > g, exactly (all quantities are small integers)
    CHECK(inside * (2 * res.bad_in_3frame + 14) > g);
}

} // namespace

TEST_CASE("circumcircle is exact") {
    Circle c = circumcircle(Point2(0, 0), Point2(2, 0), Point2(0, 2));
    CHECK(c.center == Point2(1, 1));
    CHECK(c.r2 == 2);
    CHECK(dist2(Point2(2, 0), c.center) == c.r2);

    Circle t = circumcircle(Point2(mpq_class(1, 2), 0), Point2(0, mpq_class(1, 3)), Point2(1, 1));
    for (const Point2& p : {Point2(mpq_class(1, 2), 0), Point2(0, mpq_class(1, 3)), Point2(1, 1)})
        CHECK(dist2(p, t.center) == t.r2);

    CHECK_THROWS_AS(circumcircle(Point2(0, 0), Point2(1, 1), Point2(2, 2)), collinear_error);
}

TEST_CASE("delaunay handles degenerate inputs") {
    CHECK_THROWS_AS(delaunay({Point2(0, 0), Point2(1, 0), Point2(0, 0)}), invalid_argument_error);
    CHECK_THROWS_AS(delaunay({Point2(0, 0), Point2(1, 0), Point2(2, 0), Point2(3, 0)}), collinear_error);
}

TEST_CASE("delaunay of cocircular square with center") {
    Triangulation tri =
        delaunay({Point2(0, 0), Point2(2, 0), Point2(2, 2), Point2(0, 2), Point2(1, 1)});
    CHECK(tri.vertices.size() == 5);
    CHECK(tri.triangles.size() == 4); // 2*5 - 2 - 4
    // Every triangle uses the center point; corners are cocircular.
    Point2 center(1, 1);
    for (const auto& t : tri.triangles) {
        bool has_center = false;
        for (int v : t) has_center |= tri.vertices[static_cast<size_t>(v)] == center;
        CHECK(has_center);
    }
}

TEST_CASE("delaunay battery: empty circumcircles, Euler count, mutual neighbors") {
    std::mt19937 rng(20260819);
    std::uniform_int_distribution<int> size_dist(3, 40);
    int built = 0;
    for (int inst = 0; inst < 30; ++inst) {
        int n = size_dist(rng);
        std::uniform_int_distribution<int> num(-20, 20);
        std::uniform_int_distribution<int> den_pick(0, 2);
        const int dens[3] = {1, 2, 3};
        std::vector<Point2> pts;
        for (int i = 0; i < n; ++i)
            pts.emplace_back(mpq_class(num(rng), dens[den_pick(rng)]),
                             mpq_class(num(rng), dens[den_pick(rng)]));
        std::set<Point2> distinct(pts.begin(), pts.end());
        if (distinct.size() < 3) continue;

        Triangulation tri;
        try {
            tri = delaunay(pts);
        } catch (const collinear_error&) {
            continue;
        }
        ++built;

        // Vertices are the distinct inputs, sorted.
        REQUIRE(tri.vertices.size() == distinct.size());
        CHECK(std::is_sorted(tri.vertices.begin(), tri.vertices.end()));

        long long hull_edges = 0;
        for (size_t t = 0; t < tri.triangles.size(); ++t) {
            const auto& tr = tri.triangles[t];
            const Point2& a = tri.vertices[static_cast<size_t>(tr[0])];
            const Point2& b = tri.vertices[static_cast<size_t>(tr[1])];
            const Point2& c = tri.vertices[static_cast<size_t>(tr[2])];
            // Strictly ccw.
            mpq_class orient = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
            CHECK(orient > 0);
            // Empty circumcircle, exactly.
            Circle cc = circumcircle(a, b, c);
            for (const Point2& v : tri.vertices)
                CHECK(dist2(v, cc.center) >= cc.r2);
            // Neighbor links are mutual and share the opposite edge.
            for (int i = 0; i < 3; ++i) {
                int u = tri.neighbors[t][i];
                if (u < 0) {
                    ++hull_edges;
                    continue;
                }
                const auto& other = tri.triangles[static_cast<size_t>(u)];
                int shared = 0, back = -1;
                for (int j = 0; j < 3; ++j) {
                    bool onedge = other[j] == tr[(i + 1) % 3] || other[j] == tr[(i + 2) % 3];
                    if (onedge)
                        ++shared;
                    else
                        back = j;
                }
                CHECK(shared == 2);
                REQUIRE(back >= 0);
                CHECK(tri.neighbors[static_cast<size_t>(u)][static_cast<size_t>(back)] ==
                      static_cast<int>(t));
            }
        }
        long long n_pts = static_cast<long long>(tri.vertices.size());
        CHECK(static_cast<long long>(tri.triangles.size()) == 2 * n_pts - 2 - hull_edges);
    }
    CHECK(built >= 25);
}

TEST_CASE("ring_points sit exactly on radius 2 with tight gaps") {
    std::vector<Point2> ring = ring_points();
    REQUIRE(ring.size() == 8);
    for (const Point2& p : ring)
        CHECK(p.x * p.x + p.y * p.y == 4);
    for (size_t i = 0; i < ring.size(); ++i) {
        const Point2& a = ring[i];
        const Point2& b = ring[(i + 1) % ring.size()];
        mpq_class cross = a.x * b.y - a.y * b.x;
        CHECK(cross > 0); // angle-ascending
        mpq_class dot = a.x * b.x + a.y * b.y;
        CHECK(dot > mpq_class(17, 8)); // cos(gap) > 17/32, i.e. gap < 2*arccos(7/8)
    }
}

TEST_CASE("good_circle on a lone good point") {
    std::vector<LabeledPoint> pts = {{Point2(0, 0), PointLabel::good}};
    GoodCircleResult res = good_circle(pts, Point2(0, 0), 4);
    CHECK(res.contained_good.size() == 1);
    CHECK(res.contained_good[0] == Point2(0, 0));
    CHECK(res.good_in_frame == 1);
    CHECK(res.bad_in_3frame == 0);
    check_good_circle_contract(pts, Point2(0, 0), 4, res);
}

TEST_CASE("good_circle on a dense grid dodging one bad point") {
    std::vector<LabeledPoint> pts;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            pts.push_back({Point2(mpq_class(2 * i + 1, 16), mpq_class(2 * j + 1, 16)), PointLabel::good});
    pts.push_back({Point2(0, 0), PointLabel::bad});
    GoodCircleResult res = good_circle(pts, Point2(0, 0), 4);
    CHECK(res.good_in_frame == 100);
    CHECK(res.bad_in_3frame == 1);
    CHECK(static_cast<long long>(res.contained_good.size()) > 100 / (2 * 1 + 14));
    check_good_circle_contract(pts, Point2(0, 0), 4, res);
}

TEST_CASE("good_circle preconditions") {
    std::vector<LabeledPoint> far = {{Point2(10, 10), PointLabel::good}};
    CHECK_THROWS_AS(good_circle(far, Point2(0, 0), 1), invalid_argument_error);
    CHECK_THROWS_AS(good_circle(far, Point2(0, 0), 0), invalid_argument_error);
    CHECK_THROWS_AS(good_circle(far, Point2(0, 0), -2), invalid_argument_error);
    std::vector<LabeledPoint> conflict = {{Point2(0, 0), PointLabel::good},
                                          {Point2(0, 0), PointLabel::bad}};
    CHECK_THROWS_AS(good_circle(conflict, Point2(0, 0), 4), invalid_argument_error);
}

TEST_CASE("good_circle battery with oracle dominance") {
    std::mt19937 rng(97531);
    std::uniform_int_distribution<int> size_dist(4, 22);
    Point2 fc(0, 0);
    mpq_class fr2 = 4;
    for (int inst = 0; inst < 50; ++inst) {
        std::vector<LabeledPoint> pts = random_instance(rng, size_dist(rng));
        GoodCircleResult res = good_circle(pts, fc, fr2);
        check_good_circle_contract(pts, fc, fr2, res);

        auto [best, best_count] = brute_force_best_circle(pts, fc, fr2);
        // The oracle's circle honors the same emptiness contract...
        long long recount = 0;
        for (const auto& lp : pts) {
            if (lp.label == PointLabel::bad)
                CHECK(dist2(lp.point, best.center) >= best.r2);
            else if (dist2(lp.point, best.center) < best.r2)
                ++recount;
        }
        CHECK(recount == best_count);
        // ...and never contradicts the extractor: whatever good_circle found,
        // an exhaustive search finds at least as much.
        CHECK(best_count >= static_cast<long long>(res.contained_good.size()));
    }
}

TEST_CASE("oracle finds optimal counts in hand-checkable configurations") {
    Point2 fc(0, 0);
    mpq_class fr2 = 4;

    std::vector<LabeledPoint> apart = {{Point2(0, 0), PointLabel::good},
                                       {Point2(1, 0), PointLabel::good},
                                       {Point2(3, 0), PointLabel::bad}};
    CHECK(brute_force_best_circle(apart, fc, fr2).second == 2);

    // A bad between two goods: any circle strictly containing both goods
    // contains the midpoint, so the best bad-free count is 1.
    std::vector<LabeledPoint> blocked = {{Point2(-1, 0), PointLabel::good},
                                         {Point2(1, 0), PointLabel::good},
                                         {Point2(0, 0), PointLabel::bad}};
    CHECK(brute_force_best_circle(blocked, fc, fr2).second == 1);

    // A bad exactly on the boundary of the only enclosing circle is legal:
    // containment is strict, so both goods are reachable.
    std::vector<LabeledPoint> boundary = {{Point2(mpq_class(-1, 2), 0), PointLabel::good},
                                          {Point2(mpq_class(1, 2), 0), PointLabel::good},
                                          {Point2(0, 1), PointLabel::bad}};
    CHECK(brute_force_best_circle(boundary, fc, fr2).second == 2);
}

TEST_CASE("oracle caps its input size") {
    std::vector<LabeledPoint> many;
    for (int i = 0; i <= 200; ++i)
        many.push_back({Point2(i, 0), PointLabel::good});
    CHECK_THROWS_AS(brute_force_best_circle(many, Point2(0, 0), 4), capacity_error);
}
