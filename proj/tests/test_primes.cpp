#include "bubbles/primes.hpp"

#include "doctest.h"

#include <cstdint>
#include <vector>

using namespace bubbles;

TEST_CASE("is_prime_u64 agrees with references across the range") {
    CHECK_FALSE(is_prime_u64(0));
    CHECK_FALSE(is_prime_u64(1));
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(3));
    CHECK_FALSE(is_prime_u64(4));
    CHECK(is_prime_u64(97));
    CHECK_FALSE(is_prime_u64(341));  // 2-pseudoprime
    CHECK_FALSE(is_prime_u64(561));  // Carmichael
    CHECK(is_prime_u64((1ull << 31) - 1));
    CHECK_FALSE(is_prime_u64((1ull << 32) + 1));
    CHECK(is_prime_u64(18446744073709551557ull)); // largest 64-bit prime
    CHECK_FALSE(is_prime_u64(18446744073709551556ull));

    // Cross-check a block against trial division.
    for (std::uint64_t n = 2; n < 500; ++n) {
        bool ref = n >= 2;
        for (std::uint64_t p = 2; p * p <= n; ++p)
            if (n % p == 0) {
                ref = false;
                break;
            }
        CHECK(is_prime_u64(n) == ref);
    }
}

TEST_CASE("sqrt_mod inverts squares and rejects non-residues") {
    for (std::uint64_t p : {3ull, 5ull, 7ull, 13ull, 17ull, 10007ull, 1000003ull}) {
        CHECK(sqrt_mod(0, p) == 0);
        for (std::uint64_t a = 1; a < 30 && a < p; ++a) {
            auto r = sqrt_mod(a % p, p);
            // Euler criterion as the reference.
            std::uint64_t e = (p - 1) / 2, base = a % p, pow = 1;
            while (e) {
                if (e & 1)
                    pow = pow * base % p;
                base = base * base % p;
                e >>= 1;
            }
            if (pow == 1) {
                REQUIRE(r.has_value());
                CHECK(*r % p * *r % p == a % p);
            } else {
                CHECK_FALSE(r.has_value());
            }
        }
    }
}

TEST_CASE("splitting_type follows the discriminant") {
    FieldDescriptor f1 = make_field(-1);
    CHECK(splitting_type(2, f1) == SplitType::ramified);
    CHECK(splitting_type(5, f1) == SplitType::split);
    CHECK(splitting_type(3, f1) == SplitType::inert);
    CHECK(splitting_type(13, f1) == SplitType::split);

    FieldDescriptor f7 = make_field(-7);
    CHECK(splitting_type(2, f7) == SplitType::split);
    CHECK(splitting_type(7, f7) == SplitType::ramified);
    CHECK(splitting_type(3, f7) == SplitType::inert);

    FieldDescriptor f3 = make_field(-3);
    CHECK(splitting_type(3, f3) == SplitType::ramified);
    CHECK(splitting_type(7, f3) == SplitType::split);
    CHECK(splitting_type(2, f3) == SplitType::inert);

    CHECK_THROWS_AS(splitting_type(6, f1), invalid_argument_error);
}

TEST_CASE("is_prime_element checks ideal primality") {
    FieldDescriptor f1 = make_field(-1);
    CHECK(is_prime_element(f1.element(1, 1), f1));
    CHECK(is_prime_element(f1.element(2, 1), f1));
    CHECK(is_prime_element(f1.element(3, 0), f1));  // inert: norm 9
    CHECK(is_prime_element(f1.element(0, 7), f1));
    CHECK_FALSE(is_prime_element(f1.element(5, 0), f1)); // splits
    CHECK_FALSE(is_prime_element(f1.element(3, 1), f1)); // norm 10
    CHECK_THROWS_AS(is_prime_element(f1.zero(), f1), invalid_argument_error);
    CHECK_THROWS_AS(is_prime_element(f1.element(0, 1), f1), invalid_argument_error);

    FieldDescriptor f5 = make_field(-5);
    CHECK(is_prime_element(f5.element(0, 1), f5));       // ramified: norm 5
    CHECK_FALSE(is_prime_element(f5.element(2, 0), f5)); // (2) ramifies: norm 4 but 2 not inert
    CHECK(is_prime_element(f5.element(11, 0), f5));      // inert
}

TEST_CASE("cornacchia represents primes by the principal form") {
    QuadraticForm disk{1, 0, 1};
    auto r5 = cornacchia_represent(disk, 5);
    REQUIRE(r5.has_value());
    CHECK(r5->first == 1);
    CHECK(r5->second == 2); // smaller coordinate first for x^2 + y^2
    auto r13 = cornacchia_represent(disk, 13);
    REQUIRE(r13.has_value());
    CHECK(r13->first == 2);
    CHECK(r13->second == 3);
    auto r2 = cornacchia_represent(disk, 2);
    REQUIRE(r2.has_value());
    CHECK(r2->first == 1);
    CHECK(r2->second == 1);
    CHECK_FALSE(cornacchia_represent(disk, 3).has_value());
    CHECK_FALSE(cornacchia_represent(disk, 7).has_value());

    QuadraticForm pent{1, 0, 5};
    auto r29 = cornacchia_represent(pent, 29);
    REQUIRE(r29.has_value());
    CHECK(r29->first * r29->first + 5 * r29->second * r29->second == 29);
    CHECK_FALSE(cornacchia_represent(pent, 3).has_value());
    auto r41 = cornacchia_represent(pent, 41);
    REQUIRE(r41.has_value());
    CHECK(r41->first * r41->first + 5 * r41->second * r41->second == 41);

    QuadraticForm odd{1, 1, 6}; // principal form of discriminant -23
    auto r59 = cornacchia_represent(odd, 59);
    REQUIRE(r59.has_value());
    CHECK(r59->first * r59->first + r59->first * r59->second + 6 * r59->second * r59->second == 59);

    QuadraticForm nonprincipal{2, 2, 3};
    CHECK_THROWS_AS(cornacchia_represent(nonprincipal, 29), invalid_argument_error);
    CHECK_THROWS_AS(cornacchia_represent(disk, 10), invalid_argument_error);
}

TEST_CASE("primes_in_disk enumerates the example bubbles") {
    FieldDescriptor f1 = make_field(-1);
    auto b1 = primes_in_disk(2, 17, mpq_class(15, 2), f1);
    REQUIRE(b1.size() == 3);
    CHECK(b1[0] == f1.element(2, 15));
    CHECK(b1[1] == f1.element(1, 16));
    CHECK(b1[2] == f1.element(2, 17));

    auto b2 = primes_in_disk(59, 779, mpq_class(47, 2), f1);
    CHECK(b2.size() == 6);
    for (const auto& p : b2) {
        CHECK(is_prime_element(p, f1));
        mpq_class dx = mpq_class(p.x) - 59, dy = mpq_class(p.y) - 779;
        CHECK(dx * dx + dy * dy < mpq_class(47, 2));
    }

    CHECK(primes_in_disk(0, 0, 2, f1).empty()); // norm < 2 holds no primes

    FieldDescriptor f5 = make_field(-5);
    // Embedding metric: |x + y*sqrt(-5)|^2 = x^2 + 5 y^2.
    auto small = primes_in_disk(0, 0, 6, f5);
    REQUIRE(small.size() == 2);
    CHECK(small[0] == f5.element(0, -1));
    CHECK(small[1] == f5.element(0, 1));

    CHECK_THROWS_AS(primes_in_disk(0, 0, 0, f1), invalid_argument_error);
    CHECK_THROWS_AS(primes_in_disk(0, 0, mpq_class(2000000000), f1), capacity_error);
}

TEST_CASE("prime_ideals_up_to streams ideals in norm-angle order") {
    FieldDescriptor f1 = make_field(-1);
    auto v1 = prime_ideals_up_to(10, f1);
    REQUIRE(v1.size() == 4);
    CHECK(v1[0].p == 2);
    CHECK(v1[0].norm == 2);
    CHECK(v1[0].split_type == SplitType::ramified);
    CHECK(v1[0].principal);
    CHECK(*v1[0].generator == f1.element(1, 1));
    CHECK(v1[1].norm == 5);
    CHECK(*v1[1].generator == f1.element(2, 1));
    CHECK(v1[2].norm == 5);
    CHECK(*v1[2].generator == f1.element(1, 2));
    CHECK(v1[3].norm == 9);
    CHECK(v1[3].split_type == SplitType::inert);
    CHECK(*v1[3].generator == f1.element(3, 0));

    FieldDescriptor f5 = make_field(-5);
    auto v5 = prime_ideals_up_to(10, f5);
    REQUIRE(v5.size() == 6);
    CHECK(v5[0].norm == 2);
    CHECK_FALSE(v5[0].principal);
    CHECK(v5[1].norm == 3);
    CHECK_FALSE(v5[1].principal);
    CHECK(v5[2].norm == 3);
    CHECK(v5[3].norm == 5);
    CHECK(v5[3].principal);
    CHECK(*v5[3].generator == f5.element(0, 1));
    CHECK(v5[4].norm == 7);
    CHECK_FALSE(v5[4].principal);
    CHECK(v5[5].norm == 7);

    // The callback form streams the same records in the same order.
    std::vector<PrimeIdealRec> streamed;
    prime_ideals_up_to(10, f5, [&](const PrimeIdealRec& r) { streamed.push_back(r); });
    REQUIRE(streamed.size() == v5.size());
    for (size_t i = 0; i < streamed.size(); ++i) {
        CHECK(streamed[i].p == v5[i].p);
        CHECK(streamed[i].norm == v5[i].norm);
        CHECK(streamed[i].principal == v5[i].principal);
    }

    CHECK_THROWS_AS(prime_ideals_up_to(1, f1), invalid_argument_error);
}
