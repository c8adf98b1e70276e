#include "bubbles/congruence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <set>
#include <unordered_map>

namespace bubbles {

namespace {

long long floordiv_ll(long long a, long long b) {
    long long q = a / b, r = a % b;
    return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}

// Internal arithmetic over the parallelepiped representatives (x, y) with
// 0 <= x < A, 0 <= y < C. Coordinates always fit int64; products fall back to
// mpz when |d| is large.
struct RingCtx {
    const FieldDescriptor* f = nullptr;
    long long A = 0, B = 0, C = 0, N = 0;
    bool kindB = false;
    bool fast = false;        // int64 products safe (|d| small)
    long long d = 0, mulm = 0, normm = 0;

    std::pair<long long, long long> reduce(long long x, long long y) const {
        long long k = floordiv_ll(y, C);
        y -= k * C;
        x -= k * B;
        x %= A;
        if (x < 0) x += A;
        return {x, y};
    }

    std::pair<long long, long long> mulr(long long x1, long long y1, long long x2, long long y2) const {
        if (fast) {
            long long x, y;
            if (kindB) {
                x = x1 * x2 + mulm * y1 * y2;
                y = x1 * y2 + y1 * x2 + y1 * y2;
            } else {
                x = x1 * x2 + d * y1 * y2;
                y = x1 * y2 + y1 * x2;
            }
            return reduce(x, y);
        }
        AlgebraicInt p = mul(f->element(x1, y1), f->element(x2, y2));
        mpz_class k, yr, xr;
        mpz_fdiv_qr(k.get_mpz_t(), yr.get_mpz_t(), p.y.get_mpz_t(), mpz_class(static_cast<long>(C)).get_mpz_t());
        xr = p.x - k * static_cast<long>(B);
        mpz_fdiv_r(xr.get_mpz_t(), xr.get_mpz_t(), mpz_class(static_cast<long>(A)).get_mpz_t());
        return {xr.get_si(), yr.get_si()};
    }

    long long norm_mod_N(long long x, long long y) const {
        if (fast) {
            long long n;
            if (kindB)
                n = x * x + x * y + normm * y * y;
            else
                n = x * x - d * y * y;
            return n % N;
        }
        mpz_class n = norm(f->element(x, y)) % static_cast<long>(N);
        return n.get_si();
    }
};

template <class I> I abs_i(const I& v) {
    if constexpr (std::is_same_v<I, long long>)
        return v < 0 ? -v : v;
    else
        return abs(v);
}

template <class I> I gcd_i(const I& a, const I& b) {
    if constexpr (std::is_same_v<I, long long>)
        return std::gcd(a, b);
    else
        return gcd(a, b);
}

// True iff the lattice spanned by r, w*r and the modulus lattice is all of Z^2,
// i.e. the ideal (r) + (q) is the unit ideal.
template <class I> bool spans_unit_lattice(std::pair<I, I> cols[4]) {
    while (true) {
        int j = -1, nonzero = 0;
        for (int i = 0; i < 4; ++i) {
            if (cols[i].second != 0) {
                ++nonzero;
                if (j < 0 || abs_i(cols[i].second) < abs_i(cols[j].second)) j = i;
            }
        }
        if (nonzero <= 1) break;
        for (int i = 0; i < 4; ++i) {
            if (i == j || cols[i].second == 0) continue;
            I k = cols[i].second / cols[j].second;
            cols[i].first = cols[i].first - k * cols[j].first;
            cols[i].second = cols[i].second - k * cols[j].second;
        }
    }
    I c{}, a{};
    for (int i = 0; i < 4; ++i) {
        if (cols[i].second != 0)
            c = abs_i(cols[i].second);
        else
            a = gcd_i(a, abs_i(cols[i].first));
    }
    return c == 1 && a == 1;
}

bool coprime_residue(const RingCtx& c, long long x, long long y) {
    if (x == 0 && y == 0) return false;
    long long nm = c.norm_mod_N(x, y);
    if (std::gcd(nm, c.N) == 1) return true;
    auto [wx, wy] = c.mulr(0, 1, x, y);
    if (c.fast) {
        std::pair<long long, long long> cols[4] = {{x, y}, {wx, wy}, {c.A, 0}, {c.B, c.C}};
        return spans_unit_lattice(cols);
    }
    std::pair<mpz_class, mpz_class> cols[4] = {{static_cast<long>(x), static_cast<long>(y)},
                                               {static_cast<long>(wx), static_cast<long>(wy)},
                                               {static_cast<long>(c.A), 0},
                                               {static_cast<long>(c.B), static_cast<long>(c.C)}};
    return spans_unit_lattice(cols);
}

RingCtx make_ctx(const ResidueSystem& rs) {
    RingCtx c;
    c.f = &rs.field;
    c.A = rs.ideal_basis[0][0].get_si();
    c.B = rs.ideal_basis[0][1].get_si();
    c.C = rs.ideal_basis[1][1].get_si();
    c.N = c.A * c.C;
    c.kindB = rs.field.basis_kind == BasisKind::half_plus_sqrt_d;
    c.d = rs.field.d;
    c.fast = rs.field.d >= -1000;
    if (c.kindB) {
        c.mulm = (c.d - 1) / 4;
        c.normm = (1 - c.d) / 4;
    }
    return c;
}

} // namespace

AlgebraicInt reduce_mod(const AlgebraicInt& alpha, const ResidueSystem& rs) {
    if (alpha.d != rs.field.d) throw invalid_argument_error("reduce_mod: element not in the modulus field");
    const mpz_class& A = rs.ideal_basis[0][0];
    const mpz_class& B = rs.ideal_basis[0][1];
    const mpz_class& C = rs.ideal_basis[1][1];
    mpz_class k, y, x;
    mpz_fdiv_qr(k.get_mpz_t(), y.get_mpz_t(), alpha.y.get_mpz_t(), C.get_mpz_t());
    x = alpha.x - k * B;
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), A.get_mpz_t());
    return rs.field.element(x, y);
}

bool ResidueSystem::coprime(const AlgebraicInt& alpha) const { return orbit_of(alpha) >= 0; }

int ResidueSystem::orbit_of(const AlgebraicInt& alpha) const {
    AlgebraicInt r = reduce_mod(alpha, *this);
    long long A = ideal_basis[0][0].get_si();
    size_t idx = static_cast<size_t>(r.y.get_si()) * static_cast<size_t>(A) + static_cast<size_t>(r.x.get_si());
    return residue_orbit_ids[idx];
}

ResidueSystem residue_group(const AlgebraicInt& q, const FieldDescriptor& field) {
    if (q.d != field.d) throw invalid_argument_error("residue_group: modulus not in field");
    mpz_class N = norm(q);
    if (N == 0) throw invalid_argument_error("residue_group: modulus must be nonzero");
    if (N == 1) throw invalid_argument_error("residue_group: modulus must not be a unit");
    if (N > 100000) throw capacity_error("residue_group: norm(q) exceeds the 1e5 support bound");

    ResidueSystem rs;
    rs.field = field;
    rs.q = q;
    AlgebraicInt wq = mul(field.element(0, 1), q);
    mpz_class g, u, v;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), q.y.get_mpz_t(), wq.y.get_mpz_t());
    mpz_class bx = u * q.x + v * wq.x;
    mpz_class ax = (wq.y / g) * q.x - (q.y / g) * wq.x;
    mpz_class A = abs(ax), C = g, B;
    mpz_fdiv_r(B.get_mpz_t(), bx.get_mpz_t(), A.get_mpz_t());
    if (A * C != N) throw error("residue_group: lattice determinant mismatch (internal)");
    rs.ideal_basis[0][0] = A;
    rs.ideal_basis[0][1] = B;
    rs.ideal_basis[1][0] = 0;
    rs.ideal_basis[1][1] = C;

    RingCtx c = make_ctx(rs);
    size_t size = static_cast<size_t>(c.N);
    rs.residue_orbit_ids.assign(size, -1);
    auto idx_of = [&](long long x, long long y) { return static_cast<size_t>(y) * c.A + x; };

    // Pass 1: mark coprime residues (-2 = coprime, orbit not yet assigned).
    long long phi = 0;
    for (long long y = 0; y < c.C; ++y)
        for (long long x = 0; x < c.A; ++x)
            if (coprime_residue(c, x, y)) {
                rs.residue_orbit_ids[idx_of(x, y)] = -2;
                ++phi;
            }
    rs.phi = phi;

    // Unit images and distinctness.
    std::set<size_t> unit_idx;
    std::vector<std::pair<long long, long long>> units_ll;
    for (const AlgebraicInt& un : field.units) {
        auto r = c.reduce(un.x.get_si(), un.y.get_si());
        units_ll.push_back(r);
        rs.unit_images.push_back(field.element(r.first, r.second));
        unit_idx.insert(idx_of(r.first, r.second));
    }
    rs.distinct_units = unit_idx.size() == field.units.size();

    // Orbits under unit multiplication; label = least member by (x, y).
    std::vector<std::vector<std::pair<long long, long long>>> orbs;
    for (long long y = 0; y < c.C; ++y)
        for (long long x = 0; x < c.A; ++x) {
            if (rs.residue_orbit_ids[idx_of(x, y)] != -2) continue;
            std::vector<std::pair<long long, long long>> members;
            for (const auto& un : units_ll) {
                auto m = c.mulr(un.first, un.second, x, y);
                if (rs.residue_orbit_ids[idx_of(m.first, m.second)] == -2) {
                    rs.residue_orbit_ids[idx_of(m.first, m.second)] = static_cast<int32_t>(orbs.size());
                    members.push_back(m);
                }
            }
            std::sort(members.begin(), members.end());
            orbs.push_back(std::move(members));
        }
    // Sort orbits by label and remap ids.
    std::vector<size_t> order(orbs.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t i, size_t j) { return orbs[i].front() < orbs[j].front(); });
    std::vector<int32_t> remap(orbs.size());
    for (size_t pos = 0; pos < order.size(); ++pos) remap[order[pos]] = static_cast<int32_t>(pos);
    for (auto& id : rs.residue_orbit_ids)
        if (id >= 0) id = remap[static_cast<size_t>(id)];
    for (size_t pos = 0; pos < order.size(); ++pos) {
        std::vector<AlgebraicInt> orb;
        for (const auto& m : orbs[order[pos]]) orb.push_back(field.element(m.first, m.second));
        rs.orbits.push_back(std::move(orb));
    }

    // Greedy generators of the full unit group of the quotient.
    auto id_res = c.reduce(1, 0);
    std::vector<char> in_span(size, 0);
    in_span[idx_of(id_res.first, id_res.second)] = 1;
    std::vector<std::pair<long long, long long>> span_list = {id_res};
    if (phi > 1) {
        for (long long x = 0; x < c.A && static_cast<long long>(span_list.size()) < phi; ++x)
            for (long long y = 0; y < c.C && static_cast<long long>(span_list.size()) < phi; ++y) {
                size_t idx = idx_of(x, y);
                if (rs.residue_orbit_ids[idx] < 0 || in_span[idx]) continue;
                // Relative order: least r > 0 with g^r inside the current span.
                // The span then grows by exactly a factor of r, so the orders
                // recorded along the chain multiply out to phi.
                long long r = 1;
                auto t = std::make_pair(x, y);
                while (!in_span[idx_of(t.first, t.second)]) {
                    t = c.mulr(t.first, t.second, x, y);
                    ++r;
                }
                rs.group_structure.emplace_back(field.element(x, y), r);
                auto snapshot = span_list;
                auto gp = std::make_pair(x, y);
                for (long long j = 1; j < r; ++j) {
                    for (const auto& s : snapshot) {
                        auto cur = c.mulr(s.first, s.second, gp.first, gp.second);
                        size_t ci = idx_of(cur.first, cur.second);
                        if (!in_span[ci]) {
                            in_span[ci] = 1;
                            span_list.push_back(cur);
                        }
                    }
                    gp = c.mulr(gp.first, gp.second, x, y);
                }
            }
    }
    return rs;
}

std::optional<AlgebraicInt> congruent_up_to_unit(const AlgebraicInt& alpha, const AlgebraicInt& a,
                                                 const ResidueSystem& rs) {
    if (!rs.distinct_units) return std::nullopt;
    if (!rs.coprime(alpha) || !rs.coprime(a)) return std::nullopt;
    AlgebraicInt ra = reduce_mod(alpha, rs);
    for (const AlgebraicInt& u : rs.field.units)
        if (reduce_mod(mul(u, a), rs) == ra) return u;
    return std::nullopt;
}

CharacterTable character_table(const ResidueSystem& rs) {
    if (!rs.distinct_units) throw invalid_argument_error("character_table: units must be distinct mod q");
    if (rs.field.class_number != 1)
        throw capacity_error("character_table: supported only for class number one fields");
    const size_t m = rs.orbits.size();
    CharacterTable table;
    for (const auto& orb : rs.orbits) table.orbit_labels.push_back(orb.front());

    // Group ops on orbit indices (the quotient (O/q)^x / units).
    auto omul = [&](int i, int j) {
        return rs.orbit_of(mul(rs.orbit_label(i), rs.orbit_label(j)));
    };
    int ident = rs.orbit_of(rs.field.one());
    auto opow = [&](int g, long long e) {
        int r = ident;
        while (e > 0) {
            if (e & 1) r = omul(r, g);
            g = omul(g, g);
            e >>= 1;
        }
        return r;
    };

    // Factor m and build a direct basis per p-primary component.
    std::vector<std::pair<long long, int>> pf;
    long long mm = static_cast<long long>(m);
    for (long long p = 2; p * p <= mm; ++p)
        if (mm % p == 0) {
            int a = 0;
            while (mm % p == 0) {
                mm /= p;
                ++a;
            }
            pf.emplace_back(p, a);
        }
    if (mm > 1) pf.emplace_back(mm, 1);

    std::vector<int> basis;
    std::vector<long long> orders;
    for (auto [p, a] : pf) {
        long long pa = 1;
        for (int i = 0; i < a; ++i) pa *= p;
        long long proj = static_cast<long long>(m) / pa;
        std::set<int> comp;
        for (size_t i = 0; i < m; ++i) comp.insert(opow(static_cast<int>(i), proj));
        // Greedy basis of the p-group: max quotient order, corrected to a direct summand.
        std::unordered_map<int, std::vector<long long>> H;
        H[ident] = {};
        std::vector<int> lb;
        std::vector<long long> lo;
        while (H.size() < comp.size()) {
            int best = -1;
            long long besto = 0;
            for (int e : comp) {
                if (H.count(e)) continue;
                long long k = 1;
                int cur = e;
                while (!H.count(cur)) {
                    cur = opow(cur, p);
                    k *= p;
                }
                if (k > besto) {
                    besto = k;
                    best = e;
                }
            }
            int h = opow(best, besto);
            std::vector<long long> cvec = H.at(h);
            int adj = best;
            for (size_t i = 0; i < lb.size(); ++i) {
                long long ci = cvec[i];
                if (ci % besto != 0) throw error("character_table: basis correction failed (internal)");
                long long corr = ((lo[i] - (ci / besto) % lo[i]) % lo[i]);
                adj = omul(adj, opow(lb[i], corr));
            }
            std::unordered_map<int, std::vector<long long>> H2;
            for (const auto& [el, vec] : H) {
                int cur = el;
                for (long long j = 0; j < besto; ++j) {
                    auto v2 = vec;
                    v2.push_back(j);
                    H2[cur] = std::move(v2);
                    cur = omul(cur, adj);
                }
            }
            H = std::move(H2);
            lb.push_back(adj);
            lo.push_back(besto);
        }
        for (size_t i = 0; i < lb.size(); ++i) {
            basis.push_back(lb[i]);
            orders.push_back(lo[i]);
        }
    }

    // Discrete logs of every orbit in the direct basis.
    std::unordered_map<int, std::vector<long long>> dlog;
    std::vector<long long> evec(basis.size(), 0);
    while (true) {
        int el = ident;
        for (size_t j = 0; j < basis.size(); ++j) el = omul(el, opow(basis[j], evec[j]));
        dlog[el] = evec;
        size_t j = 0;
        for (; j < evec.size(); ++j) {
            if (++evec[j] < orders[j]) break;
            evec[j] = 0;
        }
        if (j == evec.size()) break;
    }
    if (dlog.size() != m) throw error("character_table: dlog enumeration incomplete (internal)");

    // One character per exponent tuple; row 0 (all zero) is principal.
    const double twopi = 8.0 * std::atan(1.0);
    std::vector<long long> tv(basis.size(), 0);
    while (true) {
        std::vector<std::complex<double>> row(m);
        for (size_t orb = 0; orb < m; ++orb) {
            const auto& ev = dlog.at(static_cast<int>(orb));
            double arg = 0;
            for (size_t j = 0; j < basis.size(); ++j)
                arg += static_cast<double>(tv[j]) * static_cast<double>(ev[j]) / static_cast<double>(orders[j]);
            row[orb] = std::polar(1.0, twopi * arg);
        }
        table.rows.push_back(std::move(row));
        size_t j = 0;
        for (; j < tv.size(); ++j) {
            if (++tv[j] < orders[j]) break;
            tv[j] = 0;
        }
        if (j == tv.size()) break;
    }
    if (table.rows.size() != m) throw error("character_table: table not square (internal)");
    return table;
}

RayClassGroup ray_class_count(const AlgebraicInt& q, const FieldDescriptor& field) {
    ResidueSystem rs = residue_group(q, field);
    AlgebraicInt cq = canonical_associate(q, field);
    if (cq == field.element(2, 0))
        throw excluded_modulus_error("ray_class_count: modulus (2) is excluded: units collapse mod 2");
    if (field.d == -3 && cq == field.element(1, 1))
        throw excluded_modulus_error(
            "ray_class_count: the ramified modulus above 3 is excluded: units cover every reduced residue class");
    if (!rs.distinct_units)
        throw invalid_argument_error("ray_class_count: units must represent distinct residue classes mod q");
    if (rs.phi == field.unit_count)
        throw invalid_argument_error("ray_class_count: units cover every reduced residue class mod q");
    RayClassGroup g;
    g.h_q = field.class_number * (rs.phi / field.unit_count);
    for (const auto& orb : rs.orbits) g.principal_part_orbits.push_back(orb.front());
    if (field.class_number == 1) g.characters = character_table(rs);
    return g;
}

} // namespace bubbles
