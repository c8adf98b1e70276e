#include "bubbles/maier.hpp"

#include "doctest.h"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

using namespace bubbles;

namespace {

std::vector<std::uint64_t> norms(const std::vector<IdealFactor>& v) {
    std::vector<std::uint64_t> out;
    for (const auto& f : v) out.push_back(f.rec.norm.get_ui());
    return out;
}

} // namespace

TEST_CASE("t_choice evaluates the iterated-log exponent") {
    CHECK(t_choice(10000) == doctest::Approx(2.2865).epsilon(1e-3));
    CHECK(t_choice(1000000) == doctest::Approx(3.5600).epsilon(1e-3));
    CHECK_THROWS_AS(t_choice(99), invalid_argument_error);
}

TEST_CASE("build_P assembles the banded prime pool") {
    FieldDescriptor f = make_field(-1);
    ResidueSystem rs = residue_group(f.element(5, 1), f);

    auto [unit_case, pool] = build_P(f, rs, f.one(), 10, 3.0, 2);
    CHECK(unit_case);
    REQUIRE(pool.size() == 3);
    CHECK(pool[0].rec.generator == f.element(2, 1));
    CHECK(pool[1].rec.generator == f.element(1, 2));
    CHECK(pool[2].rec.generator == f.element(3, 0));
    CHECK(norms(pool) == std::vector<std::uint64_t>{5, 5, 9});
    // Split entries carry the root identifying the conjugate: x + y*root = 0 (mod p).
    for (const auto& fac : pool)
        if (fac.rec.split_type == SplitType::split) {
            mpz_class v = fac.rec.generator->x + fac.rec.generator->y * mpz_class(static_cast<unsigned long>(fac.root));
            CHECK(v % fac.rec.p == 0);
        }

    auto [unit3, pool3] = build_P(f, rs, f.element(3, 0), 10, 3.0, 2);
    CHECK_FALSE(unit3);
    REQUIRE(pool3.size() == 2);
    CHECK(pool3[0].rec.generator == f.element(2, 1)); // congruent to a = 3
    CHECK(pool3[1].rec.generator == f.element(1, 2)); // incongruent to 1 and 3

    CHECK_THROWS_AS(build_P(f, rs, f.one(), 10, 3.0, 10), invalid_argument_error); // z >= y
    CHECK_THROWS_AS(build_P(f, rs, f.one(), 10, 5.0, 2), invalid_argument_error);  // t^2 >= yz
    CHECK_THROWS_AS(build_P(f, rs, f.element(1, 1), 10, 3.0, 2), invalid_argument_error);
}

TEST_CASE("select_p0_p1 picks by norm thresholds") {
    FieldDescriptor f = make_field(-1);
    ResidueSystem rs = residue_group(f.element(5, 1), f);
    auto [uc, pool] = build_P(f, rs, f.one(), 10, 3.0, 2);
    CHECK(uc);
    auto [p0, p1] = select_p0_p1(f, rs, pool, 10);
    CHECK(p0.rec.generator == f.element(2, 1));
    CHECK(p1.rec.generator == f.element(1, 2));
}

TEST_CASE("select_p0_p1 reports the obstructing ideal class as a form") {
    FieldDescriptor f5 = make_field(-5);

    // (14+7w) = p7 p7' p3^2; the leftover pool {p2, p3', p5} has no removable
    // prime in class (2,2,3).
    ResidueSystem r441 = residue_group(f5.element(14, 7), f5);
    auto [uc1, cands1] = build_P(f5, r441, f5.one(), 8, 3.0, 2);
    CHECK(uc1);
    CHECK(norms(cands1) == std::vector<std::uint64_t>{2, 3, 5});
    try {
        select_p0_p1(f5, r441, cands1, 8);
        FAIL("expected invalid_argument_error");
    } catch (const invalid_argument_error& e) {
        CHECK(std::string(e.what()).find("(2, 2, 3)") != std::string::npos);
    }

    // Modulus sqrt(-5): every candidate is nonprincipal but the full product
    // is principal, so the wanted class is (1,0,5) and nothing matches.
    ResidueSystem r5 = residue_group(f5.element(0, 1), f5);
    auto [uc2, cands2] = build_P(f5, r5, f5.one(), 10, 3.0, 2);
    CHECK(uc2);
    CHECK(norms(cands2) == std::vector<std::uint64_t>{2, 3, 3, 7, 7});
    try {
        select_p0_p1(f5, r5, cands2, 10);
        FAIL("expected invalid_argument_error");
    } catch (const invalid_argument_error& e) {
        CHECK(std::string(e.what()).find("(1, 0, 5)") != std::string::npos);
    }
}

TEST_CASE("make_context assembles the worked class-number-one instance") {
    FieldDescriptor f = make_field(-1);
    MaierContext ctx = make_context(f, f.element(5, 1), f.one(), 10, 2, 3.0);
    CHECK(ctx.unit_case);
    CHECK(ctx.p0.rec.generator == f.element(2, 1));
    CHECK(ctx.p1.rec.generator == f.element(1, 2));
    REQUIRE(ctx.P.size() == 2);
    CHECK(ctx.P[0].rec.generator == f.element(1, 2));
    CHECK(ctx.P[1].rec.generator == f.element(3, 0));
    CHECK(ctx.Q == f.element(15, 3));
    CHECK(ctx.B_r2 == 20);
    CHECK(ctx.Bprime_r2 == 180);
    std::vector<std::uint64_t> qn = norms(ctx.Q_factors);
    std::multiset<std::uint64_t> qf(qn.begin(), qn.end());
    CHECK(qf == std::multiset<std::uint64_t>{2, 9, 13});

    STCounts st = count_S_T(ctx);
    CHECK(st.s_count == 8);
    CHECK(st.t_count == 152);
    CHECK(st.t_multiples == 52);
    CHECK(st.t_heavy == 100);
    CHECK(st.t_smooth == 0);
    CHECK(st.t_count == st.t_multiples + st.t_heavy + st.t_smooth);
    CHECK(st.predicted_ratio == doctest::Approx(0.09715).epsilon(1e-3));
    CHECK(st.mertens_ratio == doctest::Approx(2.4375).epsilon(1e-12));
}

TEST_CASE("make_context handles a class-number-two instance end to end") {
    FieldDescriptor f5 = make_field(-5);
    MaierContext ctx = make_context(f5, f5.element(3, 0), f5.one(), 10, 2, 3.0);
    CHECK(ctx.unit_case);
    // Pool {p2, p5, p7, p7'}: p0 is the principal ramified prime above 5;
    // p1 must carry the class of the remaining product, the root-3 prime above 7.
    CHECK(ctx.p0.rec.norm == 5);
    CHECK(ctx.p0.rec.principal);
    CHECK(ctx.p0.rec.generator == f5.element(0, 1));
    CHECK(ctx.p1.rec.norm == 7);
    CHECK_FALSE(ctx.p1.rec.principal);
    CHECK(ctx.p1.root == 3);
    // (3) * p2 * p7' is principal with shortest generator 3(3+w) = 9+3w.
    CHECK(ctx.Q == f5.element(9, 3));
    std::vector<std::uint64_t> qn = norms(ctx.Q_factors);
    std::multiset<std::uint64_t> qf(qn.begin(), qn.end());
    CHECK(qf == std::multiset<std::uint64_t>{2, 3, 3, 7});

    STCounts st = count_S_T(ctx);
    CHECK(st.s_count == 2); // only +-1 survive below norm 20
    CHECK(st.t_count == st.t_multiples + st.t_heavy + st.t_smooth);
    CHECK(st.mertens_ratio == doctest::Approx(5.25).epsilon(1e-12));
    CHECK(st.predicted_ratio == doctest::Approx(0.25 * std::pow(std::log(3.0) / std::log(2.0), 0.25)).epsilon(1e-9));
}

TEST_CASE("count_S_T validates its ranges") {
    FieldDescriptor f = make_field(-1);
    MaierContext ctx = make_context(f, f.element(5, 1), f.one(), 10, 2, 3.0);

    MaierContext big = ctx;
    big.B_r2 = 120000000ull; // scan radius past the 1e8 support bound
    CHECK_THROWS_AS(count_S_T(big), capacity_error);

    MaierContext flat = ctx;
    flat.z = 1;
    CHECK_THROWS_AS(count_S_T(flat), invalid_argument_error);
}

TEST_CASE("matrix_cells emits iQ+b over the toy range") {
    FieldDescriptor f = make_field(-1);
    MaierContext ctx = make_context(f, f.element(5, 1), f.one(), 10, 2, 3.0);

    std::set<std::pair<long, long>> is, bs;
    std::map<std::uint64_t, int> b_norms;
    long long cells = 0;
    matrix_cells(ctx, 4, 9, true, [&](const AlgebraicInt& i, const AlgebraicInt& b, const AlgebraicInt& cell) {
        ++cells;
        CHECK(cell == add(mul(i, ctx.Q), b));
        mpz_class ni = norm(i);
        CHECK(ni > 4);
        CHECK(ni <= 9);
        CHECK(norm(b) < 20);
        is.insert({i.x.get_si(), i.y.get_si()});
        if (bs.insert({b.x.get_si(), b.y.get_si()}).second) ++b_norms[norm(b).get_ui()];
    });
    CHECK(cells == 384);
    CHECK(is.size() == 16); // 8 of norm 5, 4 of norm 8, 4 of norm 9
    CHECK(bs.size() == 24);
    CHECK(b_norms[1] == 4);
    CHECK(b_norms[5] == 8);
    CHECK(b_norms[13] == 4); // only the 3+2i associates are coprime to Q
    CHECK(b_norms[17] == 8);

    CHECK_THROWS_AS(matrix_cells(ctx, 9, 9, true, [](const AlgebraicInt&, const AlgebraicInt&, const AlgebraicInt&) {}),
                    invalid_argument_error);
    CHECK_THROWS_AS(matrix_cells(ctx, 4, UINT64_MAX, true,
                                 [](const AlgebraicInt&, const AlgebraicInt&, const AlgebraicInt&) {}),
                    capacity_error);

    MaierContext wide = ctx;
    wide.Q = f.element(1 << 22, 0); // norm^3 = 2^132 rows
    CHECK_THROWS_AS(matrix_cells(wide, 0, 0, false,
                                 [](const AlgebraicInt&, const AlgebraicInt&, const AlgebraicInt&) {}),
                    capacity_error);
}
