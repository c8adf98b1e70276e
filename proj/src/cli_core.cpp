#include "bubbles/cli_core.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "bubbles/geometry.hpp"
#include "bubbles/primes.hpp"

namespace bubbles {

namespace {

// Squared distance in the embedding frame: the true plane point of (X, Y) is
// X + Y*sqrt(|d|)*i, so the metric is dx^2 + |d| dy^2 on frame coordinates.
mpq_class frame_dist2(const mpq_class& ax, const mpq_class& ay, const mpq_class& bx, const mpq_class& by,
                      long long absd) {
    mpq_class dx = ax - bx, dy = ay - by;
    mpq_class out = dx * dx + mpq_class(static_cast<long>(absd)) * dy * dy;
    out.canonicalize();
    return out;
}

struct SievedPrime {
    AlgebraicInt element;
    mpq_class x, y; // embedding frame coordinates
    bool good = false;
};

} // namespace

BubbleReport verify_bubble(const FieldDescriptor& field, const AlgebraicInt& q, const AlgebraicInt& a,
                           const mpq_class& cx, const mpq_class& cy, const mpq_class& r2) {
    ResidueSystem rs = residue_group(q, field);
    if (!rs.distinct_units)
        throw invalid_argument_error("units are not distinct mod q; congruence up to units is ambiguous");
    if (!rs.coprime(a))
        throw invalid_argument_error("residue a must be coprime to the modulus");

    BubbleReport report;
    report.d = field.d;
    report.q = q;
    report.a = a;
    report.cx = cx;
    report.cy = cy;
    report.r2 = r2;
    for (const AlgebraicInt& p : primes_in_disk(cx, cy, r2, field)) {
        BubblePrime bp;
        bp.prime = p;
        bp.unit = congruent_up_to_unit(p, a, rs);
        report.primes.push_back(std::move(bp));
    }
    report.count = static_cast<long long>(report.primes.size());
    report.all_congruent = std::all_of(report.primes.begin(), report.primes.end(),
                                       [](const BubblePrime& bp) { return bp.unit.has_value(); });
    return report;
}

std::vector<BubbleReport> search_bubbles(const FieldDescriptor& field, const AlgebraicInt& q,
                                         const AlgebraicInt& a, const mpq_class& cx, const mpq_class& cy,
                                         const mpq_class& radius, long long k, long long budget) {
    if (k < 1)
        throw invalid_argument_error("need k >= 1");
    if (radius <= 0)
        throw invalid_argument_error("region radius must be positive");
    if (budget < 1)
        throw invalid_argument_error("need a positive budget");
    ResidueSystem rs = residue_group(q, field);
    if (!rs.distinct_units)
        throw invalid_argument_error("units are not distinct mod q; congruence up to units is ambiguous");
    if (!rs.coprime(a))
        throw invalid_argument_error("residue a must be coprime to the modulus");

    long long absd = -field.d;
    mpq_class region_r2 = radius * radius;
    region_r2.canonicalize();

    // Sieve twice the region so every candidate disk (centered inside the
    // region, squared radius capped by region_r2) sees all of its primes.
    mpq_class sieve_r2 = 4 * region_r2;
    std::vector<SievedPrime> sieved;
    for (const AlgebraicInt& p : primes_in_disk(cx, cy, sieve_r2, field)) {
        SievedPrime sp;
        sp.element = p;
        EmbedCoords e = embed(p);
        sp.x = e.re;
        sp.y = e.im_coeff;
        sp.good = congruent_up_to_unit(p, a, rs).has_value();
        sieved.push_back(std::move(sp));
    }

    // Frame centers: a grid of quarter-radius steps across the region plus an
    // anchor at every good prime inside the region.
    mpq_class frame_r = radius / 4;
    frame_r.canonicalize();
    mpq_class frame_r2 = frame_r * frame_r;
    frame_r2.canonicalize();
    std::vector<std::pair<mpq_class, mpq_class>> frames;
    for (int i = -4; i <= 4; ++i)
        for (int j = -4; j <= 4; ++j)
            frames.push_back({cx + i * frame_r, cy + j * frame_r});
    for (const SievedPrime& sp : sieved)
        if (sp.good && frame_dist2(sp.x, sp.y, cx, cy, absd) < region_r2)
            frames.push_back({sp.x, sp.y});

    // Candidate disks, deduplicated on exact (center, r2).
    std::vector<std::tuple<mpq_class, mpq_class, mpq_class>> candidates;
    auto propose = [&](const mpq_class& px, const mpq_class& py, const mpq_class& pr2) {
        if (pr2 <= 0 || pr2 > region_r2)
            return;
        candidates.push_back({px, py, pr2});
    };

    // Largest bad-free disk at a fixed center: radius halfway between the
    // farthest good before the nearest bad and that bad (or the region cap).
    auto sweep_center = [&](const mpq_class& px, const mpq_class& py) {
        mpq_class cap = region_r2;
        for (const SievedPrime& sp : sieved) {
            if (sp.good)
                continue;
            mpq_class d2 = frame_dist2(sp.x, sp.y, px, py, absd);
            if (d2 < cap)
                cap = d2;
        }
        bool any = false;
        mpq_class far2 = 0;
        for (const SievedPrime& sp : sieved) {
            if (!sp.good)
                continue;
            mpq_class d2 = frame_dist2(sp.x, sp.y, px, py, absd);
            if (d2 < cap && (!any || d2 > far2)) {
                far2 = d2;
                any = true;
            }
        }
        if (any)
            propose(px, py, (far2 + cap) / 2);
    };

    for (const auto& fc : frames) {
        bool good_inside = false;
        for (const SievedPrime& sp : sieved)
            if (sp.good && frame_dist2(sp.x, sp.y, fc.first, fc.second, absd) < frame_r2) {
                good_inside = true;
                break;
            }
        if (!good_inside)
            continue;
        sweep_center(fc.first, fc.second);
        if (absd != 1)
            continue; // plane geometry below assumes the Euclidean embedding
        std::vector<LabeledPoint> pts;
        mpq_class nine = 9 * frame_r2;
        for (const SievedPrime& sp : sieved) {
            if (frame_dist2(sp.x, sp.y, fc.first, fc.second, absd) < nine)
                pts.push_back({Point2(sp.x, sp.y), sp.good ? PointLabel::good : PointLabel::bad});
        }
        Point2 center(fc.first, fc.second);
        try {
            GoodCircleResult res = good_circle(pts, center, frame_r2);
            propose(res.circle.center.x, res.circle.center.y, res.circle.r2);
        } catch (const error&) {
        }
        if (pts.size() <= 48) {
            try {
                auto [circle, count] = brute_force_best_circle(pts, center, frame_r2);
                if (count > 0)
                    propose(circle.center.x, circle.center.y, circle.r2);
            } catch (const error&) {
            }
        }
    }

    std::map<std::tuple<std::string, std::string, std::string>, bool> seen;
    std::vector<BubbleReport> reports;
    long long verified = 0;
    for (const auto& [px, py, pr2] : candidates) {
        if (verified >= budget)
            break;
        auto key = std::make_tuple(px.get_str(), py.get_str(), pr2.get_str());
        if (seen.count(key))
            continue;
        seen[key] = true;
        ++verified;
        BubbleReport report = verify_bubble(field, q, a, px, py, pr2);
        if (report.all_congruent && report.count >= k)
            reports.push_back(std::move(report));
    }

    std::sort(reports.begin(), reports.end(), [](const BubbleReport& l, const BubbleReport& r) {
        if (l.count != r.count)
            return l.count > r.count;
        if (l.r2 != r.r2)
            return l.r2 < r.r2;
        if (l.cx != r.cx)
            return l.cx < r.cx;
        return l.cy < r.cy;
    });
    return reports;
}

} // namespace bubbles
