#include "bubbles/geometry.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <tuple>

namespace bubbles {

namespace {

int sign_of(const mpz_class& v) { return sgn(v); }

// Orientation of (a, b, c): >0 ccw, 0 collinear, <0 cw. Integer coordinates.
int orient_z(const mpz_class& ax, const mpz_class& ay, const mpz_class& bx, const mpz_class& by,
             const mpz_class& cx, const mpz_class& cy) {
    mpz_class det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    return sign_of(det);
}

// Incircle test: >0 iff p lies strictly inside the circumcircle of the ccw
// triangle (a, b, c). Integer coordinates keep the determinant exact.
int incircle_z(const mpz_class& ax, const mpz_class& ay, const mpz_class& bx, const mpz_class& by,
               const mpz_class& cx, const mpz_class& cy, const mpz_class& px, const mpz_class& py) {
    mpz_class adx = ax - px, ady = ay - py;
    mpz_class bdx = bx - px, bdy = by - py;
    mpz_class cdx = cx - px, cdy = cy - py;
    mpz_class ad = adx * adx + ady * ady;
    mpz_class bd = bdx * bdx + bdy * bdy;
    mpz_class cd = cdx * cdx + cdy * cdy;
    mpz_class det = ad * (bdx * cdy - bdy * cdx) - bd * (adx * cdy - ady * cdx) + cd * (adx * bdy - ady * bdx);
    return sign_of(det);
}

mpq_class dist2(const Point2& a, const Point2& b) {
    mpq_class dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// Incremental construction over integer-scaled copies of the points. The hull
// is closed off by ghost faces carrying the marker vertex -1 in slot 2; a
// ghost (u, v, -1) claims the closed half plane left of u->v.
struct Builder {
    std::vector<mpz_class> xs, ys;

    struct Face {
        std::array<int, 3> v;
    };
    std::vector<Face> faces;
    std::vector<char> alive;

    bool lex_less(int a, int b) const { return xs[a] != xs[b] ? xs[a] < xs[b] : ys[a] < ys[b]; }

    bool conflicts(const Face& f, int p) const {
        if (f.v[2] < 0) {
            int u = f.v[0], v = f.v[1];
            int o = orient_z(xs[u], ys[u], xs[v], ys[v], xs[p], ys[p]);
            if (o != 0)
                return o > 0;
            // Collinear with the hull edge: the ghost yields only when the
            // point splits the edge; beyond the endpoints a neighboring ghost
            // sees the point strictly.
            return (lex_less(u, p) && lex_less(p, v)) || (lex_less(v, p) && lex_less(p, u));
        }
        return incircle_z(xs[f.v[0]], ys[f.v[0]], xs[f.v[1]], ys[f.v[1]], xs[f.v[2]], ys[f.v[2]], xs[p],
                          ys[p]) > 0;
    }

    void add_face(int a, int b, int c) {
        // Rotate a ghost so the marker sits in slot 2 (rotation keeps order).
        if (a < 0)
            faces.push_back({{b, c, a}});
        else if (b < 0)
            faces.push_back({{c, a, b}});
        else
            faces.push_back({{a, b, c}});
        alive.push_back(1);
    }

    void insert(int p) {
        std::vector<std::size_t> conf;
        for (std::size_t i = 0; i < faces.size(); ++i)
            if (alive[i] && conflicts(faces[i], p))
                conf.push_back(i);
        if (conf.empty())
            throw error("triangulation insertion found no conflicting face");
        // Cavity boundary: directed edges whose reverse is not in the cavity.
        std::set<std::pair<int, int>> edges;
        for (std::size_t i : conf) {
            const auto& v = faces[i].v;
            edges.insert({v[0], v[1]});
            edges.insert({v[1], v[2]});
            edges.insert({v[2], v[0]});
        }
        for (std::size_t i : conf)
            alive[i] = 0;
        for (const auto& e : edges)
            if (!edges.count({e.second, e.first}))
                add_face(e.first, e.second, p);
    }
};

// Scale all coordinates by the common denominator: exact integer predicates.
void scale_points(const std::vector<Point2>& pts, std::vector<mpz_class>& xs, std::vector<mpz_class>& ys) {
    mpz_class l = 1;
    for (const auto& p : pts) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p.x.get_den().get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p.y.get_den().get_mpz_t());
    }
    xs.reserve(pts.size());
    ys.reserve(pts.size());
    for (const auto& p : pts) {
        xs.push_back(p.x.get_num() * (l / p.x.get_den()));
        ys.push_back(p.y.get_num() * (l / p.y.get_den()));
    }
}

// Deduplicate labeled points; a location carrying both labels is rejected.
void split_labeled(const std::vector<LabeledPoint>& points, std::vector<Point2>& goods,
                   std::vector<Point2>& bads) {
    std::map<Point2, PointLabel> seen;
    for (const auto& lp : points) {
        auto [it, fresh] = seen.emplace(lp.point, lp.label);
        if (!fresh && it->second != lp.label)
            throw invalid_argument_error("point carries both good and bad labels");
    }
    for (const auto& [p, label] : seen)
        (label == PointLabel::good ? goods : bads).push_back(p);
}

// Smallest rational n/den with n integral and (n/den)^2 >= r2 where r2 =
// num/den: n = ceil(sqrt(num*den)). Stays below twice the frame radius.
mpq_class frame_scale(const mpq_class& frame_r2) {
    mpz_class num = frame_r2.get_num(), den = frame_r2.get_den();
    mpz_class prod = num * den, root;
    mpz_sqrt(root.get_mpz_t(), prod.get_mpz_t());
    if (root * root != prod)
        root += 1;
    mpq_class s(root, den);
    s.canonicalize();
    return s;
}

// Exact test for |center_dist| < r + s given squared quantities.
bool circles_overlap(const mpq_class& u2, const mpq_class& r2, const mpq_class& s2) {
    mpq_class t = u2 - r2 - s2;
    if (t < 0)
        return true;
    return t * t < 4 * r2 * s2;
}

// Exact test for "disk(center, r2) lies inside disk(frame_center, R2)":
// |center_dist| + r <= R.
bool disk_inside(const mpq_class& u2, const mpq_class& r2, const mpq_class& R2) {
    if (r2 > R2)
        return false;
    mpq_class t = R2 + r2 - u2;
    if (t < 0)
        return false;
    return t * t >= 4 * R2 * r2;
}

bool circle_less(const Circle& a, const Circle& b) {
    if (a.r2 != b.r2)
        return a.r2 < b.r2;
    if (a.center.x != b.center.x)
        return a.center.x < b.center.x;
    return a.center.y < b.center.y;
}

} // namespace

Triangulation delaunay(const std::vector<Point2>& points) {
    std::vector<Point2> pts = points;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3)
        throw invalid_argument_error("triangulation needs at least 3 distinct points");

    Builder bw;
    scale_points(pts, bw.xs, bw.ys);

    // Initial triangle: the first two points plus the first non-collinear one.
    std::size_t k = 2;
    int ori = 0;
    for (; k < pts.size(); ++k) {
        ori = orient_z(bw.xs[0], bw.ys[0], bw.xs[1], bw.ys[1], bw.xs[k], bw.ys[k]);
        if (ori != 0)
            break;
    }
    if (k == pts.size())
        throw collinear_error("all points are collinear");
    int a = 0, b = 1, c = static_cast<int>(k);
    if (ori < 0)
        std::swap(b, c);
    bw.add_face(a, b, c);
    bw.add_face(b, a, -1);
    bw.add_face(c, b, -1);
    bw.add_face(a, c, -1);

    for (std::size_t i = 2; i < pts.size(); ++i)
        if (i != k)
            bw.insert(static_cast<int>(i));

    Triangulation t;
    t.vertices = std::move(pts);
    std::map<std::pair<int, int>, int> by_edge;
    for (std::size_t i = 0; i < bw.faces.size(); ++i) {
        if (!bw.alive[i] || bw.faces[i].v[2] < 0)
            continue;
        int idx = static_cast<int>(t.triangles.size());
        const auto& v = bw.faces[i].v;
        t.triangles.push_back(v);
        by_edge[{v[0], v[1]}] = idx;
        by_edge[{v[1], v[2]}] = idx;
        by_edge[{v[2], v[0]}] = idx;
    }
    t.neighbors.resize(t.triangles.size());
    for (std::size_t i = 0; i < t.triangles.size(); ++i) {
        const auto& v = t.triangles[i];
        for (int j = 0; j < 3; ++j) {
            auto it = by_edge.find({v[(j + 2) % 3], v[(j + 1) % 3]});
            t.neighbors[i][j] = it == by_edge.end() ? -1 : it->second;
        }
    }
    return t;
}

Circle circumcircle(const Point2& a, const Point2& b, const Point2& c) {
    mpq_class d = 2 * ((a.x * (b.y - c.y)) + (b.x * (c.y - a.y)) + (c.x * (a.y - b.y)));
    if (d == 0)
        throw collinear_error("circumcircle of collinear points");
    mpq_class a2 = a.x * a.x + a.y * a.y;
    mpq_class b2 = b.x * b.x + b.y * b.y;
    mpq_class c2 = c.x * c.x + c.y * c.y;
    mpq_class ux = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d;
    mpq_class uy = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d;
    Circle k;
    k.center = Point2(ux, uy);
    k.r2 = dist2(k.center, a);
    k.r2.canonicalize();
    return k;
}

std::vector<Point2> ring_points() {
    auto q = [](long n, long d) { return mpq_class(n, d); };
    return {
        Point2(q(2, 1), q(0, 1)),   Point2(q(6, 5), q(8, 5)),   Point2(q(0, 1), q(2, 1)),
        Point2(q(-6, 5), q(8, 5)),  Point2(q(-2, 1), q(0, 1)),  Point2(q(-6, 5), q(-8, 5)),
        Point2(q(0, 1), q(-2, 1)),  Point2(q(6, 5), q(-8, 5)),
    };
}

GoodCircleResult good_circle(const std::vector<LabeledPoint>& points, const Point2& frame_center,
                             const mpq_class& frame_r2) {
    mpq_class r2 = frame_r2;
    r2.canonicalize();
    if (r2 <= 0)
        throw invalid_argument_error("frame squared radius must be positive");
    std::vector<Point2> goods, bads;
    split_labeled(points, goods, bads);

    GoodCircleResult out;
    for (const auto& p : goods)
        if (dist2(p, frame_center) < r2)
            ++out.good_in_frame;
    if (out.good_in_frame == 0)
        throw invalid_argument_error("no good point strictly inside the frame");

    mpq_class s = frame_scale(r2);
    mpq_class s2 = s * s;
    mpq_class nine_s2 = 9 * s2;

    std::set<Point2> vertex_set;
    for (const auto& p : bads)
        if (dist2(p, frame_center) < nine_s2) {
            ++out.bad_in_3frame;
            vertex_set.insert(p);
        }
    for (const auto& rp : ring_points())
        vertex_set.insert(Point2(frame_center.x + s * rp.x, frame_center.y + s * rp.y));
    std::vector<Point2> verts(vertex_set.begin(), vertex_set.end());

    Triangulation tri = delaunay(verts);

    // Double images for the cheap prefilter; borderline cases go exact.
    std::vector<std::pair<double, double>> goods_d;
    goods_d.reserve(goods.size());
    for (const auto& p : goods)
        goods_d.emplace_back(p.x.get_d(), p.y.get_d());

    bool have = false;
    Circle best;
    long long best_count = -1;
    std::vector<Point2> best_goods;
    for (const auto& tr : tri.triangles) {
        Circle k = circumcircle(tri.vertices[tr[0]], tri.vertices[tr[1]], tri.vertices[tr[2]]);
        if (!circles_overlap(dist2(k.center, frame_center), k.r2, s2))
            continue;
        double cx = k.center.x.get_d(), cy = k.center.y.get_d(), kr2 = k.r2.get_d();
        std::vector<Point2> inside;
        for (std::size_t i = 0; i < goods.size(); ++i) {
            double dx = goods_d[i].first - cx, dy = goods_d[i].second - cy;
            double d2 = dx * dx + dy * dy;
            double eps = 1e-9 * std::max({d2, kr2, 1.0});
            bool in;
            if (d2 < kr2 - eps)
                in = true;
            else if (d2 > kr2 + eps)
                in = false;
            else
                in = dist2(goods[i], k.center) < k.r2;
            if (in)
                inside.push_back(goods[i]);
        }
        long long count = static_cast<long long>(inside.size());
        if (!have || count > best_count || (count == best_count && circle_less(k, best))) {
            have = true;
            best = k;
            best_count = count;
            best_goods = std::move(inside);
        }
    }
    if (!have)
        throw error("no circumcircle met the frame disk");
    std::sort(best_goods.begin(), best_goods.end());
    out.circle = best;
    out.contained_good = std::move(best_goods);
    return out;
}

std::pair<Circle, long long> brute_force_best_circle(const std::vector<LabeledPoint>& points,
                                                     const Point2& frame_center, const mpq_class& frame_r2) {
    if (points.size() > 200)
        throw capacity_error("oracle limited to 200 points");
    mpq_class r2 = frame_r2;
    r2.canonicalize();
    if (r2 <= 0)
        throw invalid_argument_error("frame squared radius must be positive");
    std::vector<Point2> goods, bads;
    split_labeled(points, goods, bads);
    // Same family the extractor draws from: the 3s-disk at the scaled radius.
    // Every admissible disk lies inside it, so goods at or beyond its boundary
    // can never be contained and bads there can never be violated: drop both.
    mpq_class s = frame_scale(r2);
    mpq_class big_r2 = 9 * s * s;
    auto reachable = [&](const Point2& p) { return dist2(p, frame_center) < big_r2; };
    std::erase_if(goods, [&](const Point2& p) { return !reachable(p); });
    std::erase_if(bads, [&](const Point2& p) { return !reachable(p); });
    std::vector<Point2> all = goods;
    all.insert(all.end(), bads.begin(), bads.end());
    std::size_t ng = goods.size();

    bool have = false;
    Circle best;
    long long best_count = -1;

    auto consider = [&](const Circle& k, long long count) {
        if (!have || count > best_count || (count == best_count && circle_less(k, best))) {
            have = true;
            best = k;
            best_count = count;
        }
    };

    // Best circle anchored at `center`: at a fixed center the optimal squared
    // radius sits strictly between the k-th good distance and the next
    // obstacle (the (k+1)-th good or the nearest bad), so only those gaps need
    // realizing. The shrink ladder probes radii ever closer to the contained
    // set, so the 3x frame cap costs as little count as it has to.
    auto evaluate = [&](const Point2& center) {
        mpq_class near_bad = -1;
        for (std::size_t i = ng; i < all.size(); ++i) {
            mpq_class d = dist2(all[i], center);
            if (near_bad < 0 || d < near_bad)
                near_bad = d;
        }
        std::vector<mpq_class> gd;
        for (std::size_t i = 0; i < ng; ++i) {
            mpq_class d = dist2(all[i], center);
            if (near_bad < 0 || d < near_bad)
                gd.push_back(d);
        }
        std::sort(gd.begin(), gd.end());
        mpq_class u2 = dist2(center, frame_center);
        for (std::size_t j = gd.size(); j-- > 0;) {
            mpq_class lo = gd[j];
            mpq_class hi = j + 1 < gd.size() ? gd[j + 1] : near_bad;
            if (hi < 0)
                hi = lo + 1; // no bad anywhere: any radius beyond lo works
            if (hi <= lo)
                continue; // tied distance, counted at the larger level
            mpq_class delta = hi - lo;
            for (int t : {1, 4, 16, 40}) {
                mpq_class r2real = lo + delta / (mpz_class(1) << t);
                if (!disk_inside(u2, r2real, big_r2))
                    continue;
                Circle k;
                k.center = center;
                k.r2 = r2real;
                k.r2.canonicalize();
                consider(k, static_cast<long long>(j) + 1);
                return;
            }
        }
    };

    // Count-0 baseline: one of n+1 spaced centers misses every point, and a
    // small enough circle there contains nothing at all.
    {
        mpq_class step = frame_scale(r2) / 1000;
        for (std::size_t j = 0; j <= all.size(); ++j) {
            Point2 center(frame_center.x + mpq_class(static_cast<long>(j)) * step, frame_center.y);
            mpq_class least = step * step;
            bool occupied = false;
            for (const auto& p : all) {
                mpq_class d = dist2(p, center);
                if (d == 0) {
                    occupied = true;
                    break;
                }
                if (d < least)
                    least = d;
            }
            if (occupied)
                continue;
            Circle k;
            k.center = center;
            k.r2 = least / 4;
            k.r2.canonicalize();
            if (!disk_inside(dist2(center, frame_center), k.r2, big_r2))
                continue;
            consider(k, 0);
            break;
        }
    }

    for (const auto& p : goods)
        evaluate(p);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            Point2 mid((all[i].x + all[j].x) / 2, (all[i].y + all[j].y) / 2);
            evaluate(mid);
        }
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            for (std::size_t k = j + 1; k < all.size(); ++k) {
                Circle kc;
                try {
                    kc = circumcircle(all[i], all[j], all[k]);
                } catch (const collinear_error&) {
                    continue;
                }
                evaluate(kc.center);
            }

    // Bisector lines of every pair: along such a line the count only changes
    // where some good ties some bad, a linear condition in the line parameter.
    // Sampling each gap between consecutive ties (and past the extremes)
    // realizes every count the line sees; this reaches optima pinned by two
    // tied goods and two tied bads, whose centers are no triple's circumcenter.
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            Point2 pm((all[i].x + all[j].x) / 2, (all[i].y + all[j].y) / 2);
            mpq_class dx = -(all[j].y - all[i].y), dy = all[j].x - all[i].x;
            std::vector<mpq_class> ts;
            for (std::size_t gi = 0; gi < ng; ++gi)
                for (std::size_t bi = ng; bi < all.size(); ++bi) {
                    const Point2& g = all[gi];
                    const Point2& b = all[bi];
                    mpq_class ex = b.x - g.x, ey = b.y - g.y;
                    mpq_class coef = 2 * (dx * ex + dy * ey);
                    if (coef == 0)
                        continue;
                    mpq_class rhs =
                        b.x * b.x + b.y * b.y - g.x * g.x - g.y * g.y - 2 * (pm.x * ex + pm.y * ey);
                    mpq_class t = rhs / coef;
                    t.canonicalize();
                    ts.push_back(t);
                }
            std::sort(ts.begin(), ts.end());
            ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
            std::vector<mpq_class> samples;
            if (ts.empty()) {
                samples.push_back(1);
            } else {
                samples.push_back(ts.front() - 1);
                for (std::size_t k = 0; k + 1 < ts.size(); ++k)
                    samples.push_back((ts[k] + ts[k + 1]) / 2);
                samples.push_back(ts.back() + 1);
                // A winning region can hug one of its tie boundaries (the far
                // side may be cut off by the cap, not by another tie), so the
                // gap midpoint and the +-1 extremes overshoot it. Straddle
                // every tie at two step sizes to land inside such slivers.
                for (const mpq_class& t0 : ts)
                    for (int denom : {64, 4096}) {
                        samples.push_back(t0 - mpq_class(1, denom));
                        samples.push_back(t0 + mpq_class(1, denom));
                    }
            }
            for (const mpq_class& t : samples) {
                Point2 c(pm.x + t * dx, pm.y + t * dy);
                c.x.canonicalize();
                c.y.canonicalize();
                evaluate(c);
            }
        }

    if (!have)
        throw error("oracle found no admissible circle");
    return {best, best_count};
}

} // namespace bubbles
