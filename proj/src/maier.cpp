#include "bubbles/maier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace bubbles {

namespace {

using std::uint64_t;

// Roots of the minimal polynomial of w mod p: w^2 = d, or w^2 = w - (1-d)/4.
std::vector<uint64_t> w_roots_mod(uint64_t p, const FieldDescriptor& field) {
    std::vector<uint64_t> roots;
    long long pp = static_cast<long long>(p);
    long long m = field.basis_kind == BasisKind::sqrt_d ? 0 : (1 - field.d) / 4;
    if (p <= 3) {
        for (long long r = 0; r < pp; ++r) {
            long long val;
            if (field.basis_kind == BasisKind::sqrt_d)
                val = r * r - field.d;
            else
                val = r * r - r + m;
            if (((val % pp) + pp) % pp == 0)
                roots.push_back(static_cast<uint64_t>(r));
        }
        return roots;
    }
    uint64_t dmod = static_cast<uint64_t>(((field.d % pp) + pp) % pp);
    auto s = sqrt_mod(dmod, p);
    if (!s)
        return roots;
    if (field.basis_kind == BasisKind::sqrt_d) {
        roots.push_back(*s);
        if (*s != (p - *s) % p)
            roots.push_back(p - *s);
    } else {
        // w = (1 + sqrt(d))/2, so the roots are (1 +- s) / 2 mod p.
        auto mulmod = [&](uint64_t a, uint64_t b) {
            return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
        };
        uint64_t inv2 = (p + 1) / 2;
        roots.push_back(mulmod((1 + *s) % p, inv2));
        uint64_t other = mulmod((1 + p - *s) % p, inv2);
        if (other != roots[0])
            roots.push_back(other);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// Does the prime ideal divide (alpha)?  x + y*w = x + y*root mod the ideal.
bool factor_divides(const IdealFactor& f, const AlgebraicInt& alpha) {
    mpz_class p(static_cast<unsigned long>(f.rec.p));
    if (f.rec.split_type == SplitType::inert)
        return alpha.x % p == 0 && alpha.y % p == 0;
    mpz_class v = alpha.x + alpha.y * mpz_class(static_cast<unsigned long>(f.root));
    return v % p == 0;
}

bool same_factor(const IdealFactor& a, const IdealFactor& b) {
    return a.rec.p == b.rec.p && a.root == b.root && a.rec.split_type == b.rec.split_type;
}

QuadraticForm principal_form_of(const FieldDescriptor& field) {
    QuadraticForm f;
    f.a = 1;
    if (field.basis_kind == BasisKind::sqrt_d) {
        f.b = 0;
        f.c = mpz_class(static_cast<long>(-field.d));
    } else {
        f.b = 1;
        f.c = mpz_class(static_cast<long>((1 - field.d) / 4));
    }
    return f;
}

// --- Exact ideal lattices: column span of (a, 0) and (b, c) in the (1, w)
// basis, upper-triangular HNF with 0 <= b < a. The ideal's norm is a * c.

struct IdealLat {
    mpz_class a, b, c;
};

IdealLat hnf_from_columns(std::vector<std::pair<mpz_class, mpz_class>> cols) {
    // Fold the second rows into one gcd column, pushing the eliminated
    // remainders back as second-row-zero columns, then gcd the first rows.
    mpz_class cx = 0, cy = 0;
    for (size_t i = 0; i < cols.size(); ++i) {
        mpz_class x = cols[i].first, y = cols[i].second;
        if (y == 0)
            continue;
        if (cy == 0) {
            cx = x;
            cy = y;
            continue;
        }
        mpz_class g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), cy.get_mpz_t(), y.get_mpz_t());
        mpz_class u = cy / g, v = y / g;
        mpz_class rx = u * x - v * cx; // combination with zero second row
        cx = s * cx + t * x;
        cy = g;
        cols.push_back({rx, mpz_class(0)});
    }
    if (cy < 0) {
        cy = -cy;
        cx = -cx;
    }
    mpz_class A = 0;
    for (const auto& col : cols) {
        if (col.second != 0)
            continue;
        mpz_class v = abs(col.first);
        mpz_gcd(A.get_mpz_t(), A.get_mpz_t(), v.get_mpz_t());
    }
    if (A == 0 || cy == 0)
        throw error("ideal lattice is degenerate");
    mpz_class B;
    mpz_fdiv_r(B.get_mpz_t(), cx.get_mpz_t(), A.get_mpz_t());
    return IdealLat{A, B, cy};
}

IdealLat lat_from_element(const AlgebraicInt& g, const FieldDescriptor& field) {
    AlgebraicInt w = field.element(0, 1);
    AlgebraicInt gw = mul(g, w);
    return hnf_from_columns({{g.x, g.y}, {gw.x, gw.y}});
}

IdealLat lat_from_factor(const IdealFactor& f, const FieldDescriptor& field) {
    mpz_class p(static_cast<unsigned long>(f.rec.p));
    if (f.rec.split_type == SplitType::inert)
        return IdealLat{p, 0, p};
    // Ideal (p, w - r): columns p, p*w, (-r, 1), and w*(w - r).
    mpz_class r(static_cast<unsigned long>(f.root));
    std::vector<std::pair<mpz_class, mpz_class>> cols = {{p, 0}, {0, p}, {-r, 1}};
    if (field.basis_kind == BasisKind::sqrt_d)
        cols.push_back({mpz_class(static_cast<long>(field.d)), -r});
    else
        cols.push_back({mpz_class(static_cast<long>(-(1 - field.d) / 4)), 1 - r});
    return hnf_from_columns(cols);
}

IdealLat lat_mul(const IdealLat& l, const IdealLat& m, const FieldDescriptor& field) {
    AlgebraicInt l1 = field.element(l.a, 0), l2 = field.element(l.b, l.c);
    AlgebraicInt m1 = field.element(m.a, 0), m2 = field.element(m.b, m.c);
    std::vector<std::pair<mpz_class, mpz_class>> cols;
    for (const AlgebraicInt* u : {&l1, &l2})
        for (const AlgebraicInt* v : {&m1, &m2}) {
            AlgebraicInt prod = mul(*u, *v);
            cols.push_back({prod.x, prod.y});
        }
    return hnf_from_columns(cols);
}

// Lagrange-Gauss reduction under the norm form; returns a shortest nonzero
// vector of the lattice.
AlgebraicInt shortest_vector(const IdealLat& lat, const FieldDescriptor& field) {
    AlgebraicInt u = field.element(lat.a, 0), v = field.element(lat.b, lat.c);
    mpz_class nu = norm(u), nv = norm(v);
    if (nv < nu) {
        std::swap(u, v);
        std::swap(nu, nv);
    }
    while (true) {
        // 2B(u,v) = N(u+v) - N(u) - N(v); shift v by round(B/N(u)) copies of u.
        mpz_class twob = norm(add(u, v)) - nu - nv;
        mpz_class m, rem, den = 2 * nu;
        mpz_class num = twob + nu;
        mpz_fdiv_qr(m.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (m != 0) {
            AlgebraicInt mu = u;
            mu.x *= m;
            mu.y *= m;
            v = sub(v, mu);
            nv = norm(v);
        }
        if (nv >= nu)
            return u;
        std::swap(u, v);
        std::swap(nu, nv);
    }
}

bool lat_principal(const IdealLat& lat, const FieldDescriptor& field, AlgebraicInt* gen) {
    AlgebraicInt s = shortest_vector(lat, field);
    if (norm(s) != lat.a * lat.c)
        return false;
    if (gen)
        *gen = s;
    return true;
}

// Reduced binary quadratic form of the lattice's ideal class.
QuadraticForm lat_class_form(const IdealLat& lat, const FieldDescriptor& field) {
    AlgebraicInt u = field.element(lat.a, 0), v = field.element(lat.b, lat.c);
    mpz_class n = lat.a * lat.c;
    mpz_class a = norm(u) / n;
    mpz_class c = norm(v) / n;
    mpz_class b = (norm(add(u, v)) - norm(u) - norm(v)) / n;
    while (true) {
        if (a > c) {
            std::swap(a, c);
            b = -b;
            continue;
        }
        mpz_class k, r, twoa = 2 * a;
        mpz_class num = b + a;
        mpz_fdiv_qr(k.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), twoa.get_mpz_t());
        if (k != 0) {
            c += a * k * k - b * k;
            b -= twoa * k;
            continue;
        }
        break;
    }
    if (b < 0 && (a == c || -b == a))
        b = -b;
    return QuadraticForm{a, b, c};
}

std::string form_text(const QuadraticForm& f) {
    return "(" + f.a.get_str() + ", " + f.b.get_str() + ", " + f.c.get_str() + ")";
}

IdealFactor make_inert_factor(uint64_t p, const FieldDescriptor& field) {
    IdealFactor f;
    f.rec.p = p;
    f.rec.norm = mpz_class(static_cast<unsigned long>(p)) * static_cast<long>(p);
    f.rec.split_type = SplitType::inert;
    f.rec.principal = true;
    f.rec.generator = canonical_associate(field.element(static_cast<long>(p), 0), field);
    return f;
}

// Distinct prime ideal factors of (alpha); norm(alpha) must fit 64 bits.
std::vector<IdealFactor> element_factors(const AlgebraicInt& alpha, const FieldDescriptor& field) {
    mpz_class n = norm(alpha);
    if (!n.fits_ulong_p())
        throw capacity_error("norm too large to factor");
    uint64_t rem = n.get_ui();
    std::vector<uint64_t> primes;
    for (uint64_t p = 2; p * p <= rem; p += (p == 2 ? 1 : 2)) {
        if (rem % p != 0)
            continue;
        primes.push_back(p);
        while (rem % p == 0)
            rem /= p;
    }
    if (rem > 1)
        primes.push_back(rem);
    std::vector<IdealFactor> out;
    for (uint64_t p : primes) {
        SplitType st = splitting_type(p, field);
        if (st == SplitType::inert) {
            out.push_back(make_inert_factor(p, field));
            continue;
        }
        for (uint64_t r : w_roots_mod(p, field)) {
            IdealFactor f;
            f.rec.p = p;
            f.rec.norm = static_cast<unsigned long>(p);
            f.rec.split_type = st;
            f.root = r;
            if (factor_divides(f, alpha))
                out.push_back(f);
        }
    }
    return out;
}

// Scan all nonzero lattice elements of norm < bound.
template <typename Fn>
void scan_norm_less(uint64_t bound, const FieldDescriptor& field, Fn&& fn) {
    if (bound <= 1)
        return;
    unsigned long long absd = static_cast<unsigned long long>(-field.d);
    auto isqrt = [](unsigned __int128 n) {
        long long r = static_cast<long long>(sqrtl(static_cast<long double>(n)));
        if (r < 0)
            r = 0;
        while (r > 0 && static_cast<unsigned __int128>(r) * static_cast<unsigned __int128>(r) > n)
            --r;
        while (static_cast<unsigned __int128>(r + 1) * static_cast<unsigned __int128>(r + 1) <= n)
            ++r;
        return r;
    };
    if (field.basis_kind == BasisKind::sqrt_d) {
        long long ymax = isqrt((static_cast<unsigned __int128>(bound) - 1) / absd);
        for (long long y = -ymax; y <= ymax; ++y) {
            unsigned __int128 yy = static_cast<unsigned __int128>(y < 0 ? -y : y);
            unsigned __int128 rest = static_cast<unsigned __int128>(bound) - absd * yy * yy;
            long long xmax = isqrt(rest - 1);
            for (long long x = -xmax; x <= xmax; ++x) {
                if (x == 0 && y == 0)
                    continue;
                uint64_t n = static_cast<uint64_t>(static_cast<unsigned __int128>(x < 0 ? -x : x) *
                                                       static_cast<unsigned __int128>(x < 0 ? -x : x) +
                                                   absd * yy * yy);
                fn(x, y, n);
            }
        }
    } else {
        long long m = (1 - field.d) / 4;
        // 4*norm = (2x + y)^2 + |d| y^2.
        unsigned __int128 bound4 = static_cast<unsigned __int128>(bound) * 4;
        long long ymax = isqrt((bound4 - 1) / absd);
        for (long long y = -ymax; y <= ymax; ++y) {
            unsigned __int128 yy = static_cast<unsigned __int128>(y < 0 ? -y : y);
            unsigned __int128 rest = bound4 - absd * yy * yy;
            long long umax = isqrt(rest - 1);
            long long xlo = -((umax + y) >> 1); // ceil((-umax - y) / 2)
            for (long long x = xlo;; ++x) {
                long long u = 2 * x + y;
                if (u > umax)
                    break;
                if (x == 0 && y == 0)
                    continue;
                __int128 nn = static_cast<__int128>(x) * x + static_cast<__int128>(x) * y +
                              static_cast<__int128>(m) * y * y;
                if (nn > 0 && static_cast<unsigned __int128>(nn) < bound)
                    fn(x, y, static_cast<uint64_t>(nn));
            }
        }
    }
}

// Orbit of a principal factor's generator; -1 for nonprincipal factors.
int classify_orbit(const IdealFactor& f, const ResidueSystem& rs) {
    if (!f.rec.principal || !f.rec.generator)
        return -1;
    return rs.orbit_of(*f.rec.generator);
}

} // namespace

double t_choice(uint64_t y) {
    if (y < 100)
        throw invalid_argument_error("iterated logarithms need y >= 100");
    double ly = std::log(static_cast<double>(y));
    double ll = std::log(ly);
    double lll = std::log(ll);
    return std::exp(ly * lll / (4 * ll));
}

std::pair<bool, std::vector<IdealFactor>> build_P(const FieldDescriptor& field, const ResidueSystem& rs,
                                                  const AlgebraicInt& a, uint64_t y, double t, uint64_t z) {
    if (a.d != field.d || rs.field.d != field.d)
        throw invalid_argument_error("field mismatch");
    if (z < 1 || z >= y)
        throw invalid_argument_error("need z < y");
    double yz = static_cast<double>(y) * static_cast<double>(z);
    if (!(t > 0) || t * t >= yz)
        throw invalid_argument_error("need 0 < t < sqrt(yz)");
    if (!rs.coprime(a))
        throw invalid_argument_error("residue a must be coprime to the modulus");

    int orbit_one = rs.orbit_of(field.one());
    int orbit_a = rs.orbit_of(a);
    bool unit_case = orbit_a == orbit_one;

    double outer = yz / t;
    uint64_t limit = y;
    if (outer > static_cast<double>(limit))
        limit = static_cast<uint64_t>(outer) + 1;

    QuadraticForm pf = principal_form_of(field);
    std::vector<IdealFactor> pool;
    for (uint64_t p = 2; p <= limit; p += (p == 2 ? 1 : 2)) {
        if (!is_prime_u64(p))
            continue;
        SplitType st = splitting_type(p, field);
        std::vector<IdealFactor> tags;
        if (st == SplitType::inert) {
            if (static_cast<unsigned __int128>(p) * p > limit)
                continue;
            tags.push_back(make_inert_factor(p, field));
        } else {
            std::optional<AlgebraicInt> gen;
            uint64_t gen_root = 0;
            if (auto rep = cornacchia_represent(pf, p)) {
                AlgebraicInt g = field.element(rep->first, rep->second);
                // The root the generator lies over: x + y*r = 0 mod p.
                mpz_class pz(static_cast<unsigned long>(p));
                mpz_class inv;
                mpz_invert(inv.get_mpz_t(), g.y.get_mpz_t(), pz.get_mpz_t());
                mpz_class r = (-g.x * inv) % pz;
                if (r < 0)
                    r += pz;
                gen = g;
                gen_root = r.get_ui();
            }
            for (uint64_t r : w_roots_mod(p, field)) {
                IdealFactor f;
                f.rec.p = p;
                f.rec.norm = static_cast<unsigned long>(p);
                f.rec.split_type = st;
                f.root = r;
                f.rec.principal = gen.has_value();
                if (gen)
                    f.rec.generator = canonical_associate(r == gen_root ? *gen : conj(*gen), field);
                tags.push_back(f);
            }
        }
        for (auto& f : tags) {
            if (factor_divides(f, rs.q))
                continue;
            double nd = f.rec.norm.get_d();
            int cls = classify_orbit(f, rs);
            bool is_one = cls >= 0 && cls == orbit_one;
            bool is_a = cls >= 0 && cls == orbit_a;
            bool in_y = f.rec.norm <= static_cast<unsigned long>(y);
            bool keep;
            if (unit_case)
                keep = (!is_one && in_y) || (is_one && nd >= t && nd * t <= yz);
            else
                keep = (!is_one && !is_a && in_y) || (is_one && nd >= t && in_y) || (is_a && nd * t <= yz);
            if (keep)
                pool.push_back(f);
        }
    }
    std::sort(pool.begin(), pool.end(), [&](const IdealFactor& l, const IdealFactor& r) {
        if (l.rec.norm != r.rec.norm)
            return l.rec.norm < r.rec.norm;
        if (l.rec.generator && r.rec.generator)
            return angle_less(*l.rec.generator, *r.rec.generator);
        return l.root < r.root;
    });
    return {unit_case, pool};
}

std::pair<IdealFactor, IdealFactor> select_p0_p1(const FieldDescriptor& field, const ResidueSystem& rs,
                                                 const std::vector<IdealFactor>& candidates, uint64_t y) {
    double ly = std::log(static_cast<double>(y));
    const IdealFactor* p0 = nullptr;
    for (const auto& f : candidates)
        if (f.rec.norm.get_d() >= ly) {
            p0 = &f;
            break;
        }
    if (!p0)
        throw invalid_argument_error("no candidate prime of norm at least log y");

    auto in_range = [&](const IdealFactor& f) {
        return f.rec.norm.get_d() > ly && f.rec.norm <= static_cast<unsigned long>(y);
    };

    if (field.class_number == 1) {
        for (const auto& f : candidates)
            if (!same_factor(f, *p0) && in_range(f))
                return {*p0, f};
        throw invalid_argument_error("no removable prime of norm in (log y, y] has ideal class " +
                                     form_text(principal_form_of(field)));
    }

    // Removing p1 must leave (q) * prod(candidates minus p0, p1) principal,
    // i.e. p1's ideal class must equal the class of the full product.
    for (const auto& f : candidates) {
        if (same_factor(f, *p0) || !in_range(f))
            continue;
        IdealLat prod = lat_from_element(rs.q, field);
        for (const auto& g : candidates) {
            if (same_factor(g, *p0) || same_factor(g, f))
                continue;
            prod = lat_mul(prod, lat_from_factor(g, field), field);
        }
        if (lat_principal(prod, field, nullptr))
            return {*p0, f};
    }
    IdealLat full = lat_from_element(rs.q, field);
    for (const auto& g : candidates)
        if (!same_factor(g, *p0))
            full = lat_mul(full, lat_from_factor(g, field), field);
    throw invalid_argument_error("no removable prime of norm in (log y, y] has ideal class " +
                                 form_text(lat_class_form(full, field)));
}

AlgebraicInt build_Q(MaierContext& ctx) {
    std::vector<IdealFactor> factors = element_factors(ctx.rs.q, ctx.field);
    bool all_principal = true;
    for (const auto& f : ctx.P) {
        if (same_factor(f, ctx.p1))
            continue;
        factors.push_back(f);
        if (!f.rec.principal)
            all_principal = false;
    }
    AlgebraicInt g;
    if (all_principal) {
        g = ctx.rs.q;
        for (const auto& f : ctx.P) {
            if (same_factor(f, ctx.p1))
                continue;
            g = mul(g, *f.rec.generator);
        }
    } else {
        IdealLat prod = lat_from_element(ctx.rs.q, ctx.field);
        for (const auto& f : ctx.P) {
            if (same_factor(f, ctx.p1))
                continue;
            prod = lat_mul(prod, lat_from_factor(f, ctx.field), ctx.field);
        }
        if (!lat_principal(prod, ctx.field, &g))
            throw error("product ideal is not principal after removing the restoring prime");
    }
    ctx.Q = canonical_associate(g, ctx.field);
    ctx.Q_factors = std::move(factors);
    return ctx.Q;
}

MaierContext make_context(const FieldDescriptor& field, const AlgebraicInt& q, const AlgebraicInt& a,
                          uint64_t y, uint64_t z, double t) {
    MaierContext ctx;
    ctx.field = field;
    ctx.rs = residue_group(q, field);
    ctx.a = a;
    ctx.y = y;
    ctx.z = z;
    ctx.t = t;
    auto [unit_case, pool] = build_P(field, ctx.rs, a, y, t, z);
    ctx.unit_case = unit_case;
    auto [p0, p1] = select_p0_p1(field, ctx.rs, pool, y);
    ctx.p0 = p0;
    ctx.p1 = p1;
    for (const auto& f : pool)
        if (!same_factor(f, p0))
            ctx.P.push_back(f);
    unsigned __int128 yz = static_cast<unsigned __int128>(y) * z;
    if (yz * 9 > static_cast<unsigned __int128>(UINT64_MAX))
        throw capacity_error("yz out of range");
    ctx.B_r2 = static_cast<uint64_t>(yz);
    ctx.Bprime_r2 = 9 * ctx.B_r2;
    build_Q(ctx);
    return ctx;
}

STCounts count_S_T(const MaierContext& ctx) {
    if (ctx.B_r2 > 100000000ull)
        throw capacity_error("scan needs yz <= 1e8");
    if (ctx.z < 2)
        throw invalid_argument_error("ratio prediction needs z >= 2");
    int target = ctx.rs.orbit_of(ctx.a);
    if (target < 0)
        throw invalid_argument_error("residue a must be coprime to the modulus");

    STCounts out;
    std::vector<std::pair<uint64_t, bool>> heavy_cache; // prime -> ideal norm above y
    auto prime_makes_heavy = [&](uint64_t p) {
        for (const auto& e : heavy_cache)
            if (e.first == p)
                return e.second;
        unsigned __int128 ideal_norm = p;
        if (splitting_type(p, ctx.field) == SplitType::inert)
            ideal_norm = static_cast<unsigned __int128>(p) * p;
        bool heavy = ideal_norm > ctx.y;
        heavy_cache.push_back({p, heavy});
        return heavy;
    };

    scan_norm_less(ctx.Bprime_r2, ctx.field, [&](long long x, long long y, uint64_t n) {
        for (const auto& f : ctx.Q_factors) {
            long long p = static_cast<long long>(f.rec.p);
            if (f.rec.split_type == SplitType::inert) {
                if (x % p == 0 && y % p == 0)
                    return;
            } else {
                long long v = ((x % p) + (y % p) * static_cast<long long>(f.root)) % p;
                if ((v + p) % p == 0)
                    return;
            }
        }
        AlgebraicInt b = ctx.field.element(static_cast<long>(x), static_cast<long>(y));
        int orbit = ctx.rs.orbit_of(b);
        if (orbit == target) {
            if (n < ctx.B_r2)
                ++out.s_count;
            return;
        }
        ++out.t_count;
        if (factor_divides(ctx.p0, b) || factor_divides(ctx.p1, b)) {
            ++out.t_multiples;
            return;
        }
        uint64_t rem = n;
        bool heavy = false;
        for (uint64_t p = 2; p * p <= rem && !heavy; p += (p == 2 ? 1 : 2)) {
            if (rem % p != 0)
                continue;
            while (rem % p == 0)
                rem /= p;
            heavy = prime_makes_heavy(p);
        }
        if (!heavy && rem > 1)
            heavy = prime_makes_heavy(rem);
        if (heavy)
            ++out.t_heavy;
        else
            ++out.t_smooth;
    });

    double h_q = static_cast<double>(ctx.field.class_number) * static_cast<double>(ctx.rs.phi) /
                 static_cast<double>(ctx.field.unit_count);
    out.predicted_ratio = (1.0 / static_cast<double>(ctx.rs.phi)) *
                          std::pow(std::log(ctx.t) / std::log(static_cast<double>(ctx.z)), 1.0 / h_q);
    double mertens = 1.0;
    for (const auto& f : ctx.Q_factors) {
        double nn = f.rec.norm.get_d();
        mertens *= nn / (nn - 1.0);
    }
    out.mertens_ratio = mertens;
    return out;
}

void matrix_cells(const MaierContext& ctx, uint64_t lo, uint64_t hi, bool toy,
                  const std::function<void(const AlgebraicInt&, const AlgebraicInt&, const AlgebraicInt&)>& emit) {
    if (!toy) {
        mpz_class nq = norm(ctx.Q);
        mpz_class cube = nq * nq * nq;
        mpz_class top = 2 * cube;
        if (!top.fits_ulong_p() || top.get_ui() > static_cast<uint64_t>(INT64_MAX))
            throw capacity_error("row norms would exceed 2^63 - 1");
        lo = cube.get_ui();
        hi = top.get_ui();
    }
    if (lo >= hi)
        throw invalid_argument_error("empty row norm range");
    if (hi >= UINT64_MAX)
        throw capacity_error("row norms would exceed the scanner");

    std::vector<AlgebraicInt> cells_b;
    scan_norm_less(ctx.B_r2, ctx.field, [&](long long x, long long y, uint64_t) {
        AlgebraicInt b = ctx.field.element(static_cast<long>(x), static_cast<long>(y));
        for (const auto& f : ctx.Q_factors)
            if (factor_divides(f, b))
                return;
        cells_b.push_back(b);
    });

    scan_norm_less(hi + 1, ctx.field, [&](long long x, long long y, uint64_t n) {
        if (n <= lo)
            return;
        AlgebraicInt i = ctx.field.element(static_cast<long>(x), static_cast<long>(y));
        AlgebraicInt iq = mul(i, ctx.Q);
        for (const AlgebraicInt& b : cells_b)
            emit(i, b, add(iq, b));
    });
}

} // namespace bubbles
