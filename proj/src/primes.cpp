#include "bubbles/primes.hpp"

#include <algorithm>
#include <cmath>

namespace bubbles {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t isqrt_u64(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

} // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This base set decides primality exactly below 2^64.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    // Tonelli-Shanks: p - 1 = q * 2^s with q odd.
    std::uint64_t q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    std::uint64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    std::uint64_t m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        std::uint64_t i = 0, t2 = t;
        while (t2 != 1) {
            t2 = mulmod(t2, t2, p);
            ++i;
        }
        std::uint64_t b = powmod(c, 1ull << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

SplitType splitting_type(std::uint64_t p, const FieldDescriptor& field) {
    if (!is_prime_u64(p)) throw invalid_argument_error("splitting_type: p must be a rational prime, got " + std::to_string(p));
    mpz_class disc(static_cast<long>(field.discriminant));
    mpz_class pz(static_cast<unsigned long>(p));
    if (disc % pz == 0) return SplitType::ramified;
    int k = mpz_kronecker(disc.get_mpz_t(), pz.get_mpz_t());
    return k == 1 ? SplitType::split : SplitType::inert;
}

bool is_prime_element(const AlgebraicInt& alpha, const FieldDescriptor& field) {
    if (alpha.d != field.d) throw invalid_argument_error("is_prime_element: element not in field");
    mpz_class n = norm(alpha);
    if (n == 0) throw invalid_argument_error("is_prime_element: zero input");
    if (n == 1) throw invalid_argument_error("is_prime_element: unit input");
    if (!n.fits_ulong_p()) throw capacity_error("is_prime_element: norm exceeds 2^64");
    std::uint64_t nu = mpz_get_ui(n.get_mpz_t());
    if (is_prime_u64(nu)) return true;
    std::uint64_t r = isqrt_u64(nu);
    if (r * r == nu && is_prime_u64(r)) return splitting_type(r, field) == SplitType::inert;
    return false;
}

std::optional<std::pair<mpz_class, mpz_class>> cornacchia_represent(const QuadraticForm& form, std::uint64_t p) {
    if (!(form.a == 1 && (form.b == 0 || form.b == 1)))
        throw invalid_argument_error("cornacchia_represent: form must be the principal form (1, 0 or 1, c)");
    mpz_class D = form.discriminant();
    if (D >= 0) throw invalid_argument_error("cornacchia_represent: form must be positive definite");
    if (!is_prime_u64(p)) throw invalid_argument_error("cornacchia_represent: p must be prime");
    mpz_class absD = -D;
    mpz_class fourp = 4 * mpz_class(static_cast<unsigned long>(p));

    // Solve u^2 + |D| v^2 = 4p, then convert to form coordinates.
    std::optional<std::pair<mpz_class, mpz_class>> uv;
    bool small_case = (p == 2) || absD >= fourp || absD % mpz_class(static_cast<unsigned long>(p)) == 0;
    if (small_case) {
        for (mpz_class v = 0; absD * v * v <= fourp; ++v) {
            mpz_class rem = fourp - absD * v * v;
            mpz_class u = sqrt(rem);
            if (u * u == rem) {
                uv = {u, v};
                break;
            }
        }
    } else {
        // p odd, p coprime to D, |D| < 4p: modified Cornacchia.
        std::uint64_t dmod = mpz_class(((D % mpz_class(static_cast<unsigned long>(p))) + mpz_class(static_cast<unsigned long>(p))) %
                                       mpz_class(static_cast<unsigned long>(p)))
                                 .get_ui();
        auto x0 = sqrt_mod(dmod, p);
        if (x0) {
            mpz_class b(static_cast<unsigned long>(*x0));
            // Force b = D (mod 2) so b^2 = D (mod 4p).
            if (((b - D) % 2) != 0) b = mpz_class(static_cast<unsigned long>(p)) - b;
            mpz_class a = 2 * mpz_class(static_cast<unsigned long>(p));
            while (b * b > fourp) {
                mpz_class t = a % b;
                a = b;
                b = t;
            }
            mpz_class rem = fourp - b * b;
            if (rem % absD == 0) {
                mpz_class v2 = rem / absD;
                mpz_class v = sqrt(v2);
                if (v * v == v2) uv = {b, v};
            }
        }
    }
    if (!uv) return std::nullopt;
    mpz_class u = uv->first, v = uv->second;
    mpz_class x, y;
    if (form.b == 0) {
        // u even here: u^2 = 4p - |D|v^2 with |D| = 0 (mod 4).
        x = u / 2;
        y = v;
    } else {
        // |D| odd: u and v share parity.
        x = (u - v) / 2;
        y = v;
    }
    // The Gaussian form is symmetric; normalize to the smaller coordinate first.
    if (form.b == 0 && form.c == 1 && x > y) std::swap(x, y);
    return std::make_pair(x, y);
}

namespace {

QuadraticForm principal_form(const FieldDescriptor& field) {
    if (field.basis_kind == BasisKind::half_plus_sqrt_d)
        return QuadraticForm{1, 1, mpz_class(static_cast<long>((1 - field.d) / 4))};
    return QuadraticForm{1, 0, mpz_class(static_cast<long>(-field.d))};
}

// Element with norm p from a principal-form representation, if any.
std::optional<AlgebraicInt> norm_p_generator(std::uint64_t p, const FieldDescriptor& field) {
    auto rep = cornacchia_represent(principal_form(field), p);
    if (!rep) return std::nullopt;
    return field.element(rep->first, rep->second);
}

} // namespace

std::vector<AlgebraicInt> primes_in_disk(const mpq_class& cx, const mpq_class& cy, const mpq_class& r2,
                                         const FieldDescriptor& field) {
    if (r2 <= 0) throw invalid_argument_error("primes_in_disk: r2 must be positive");
    if (r2 > 1000000000) throw capacity_error("primes_in_disk: r2 too large");
    double cxd = cx.get_d(), cyd = cy.get_d();
    double s = std::sqrt(r2.get_d());
    double ad = std::sqrt(static_cast<double>(-field.d));
    std::vector<AlgebraicInt> out;
    mpq_class adq(static_cast<long>(-field.d)); // |d|, weight of the im coordinate
    auto try_candidate = [&](long long xi, long long yi) {
        AlgebraicInt a = field.element(xi, yi);
        EmbedCoords e = embed(a);
        mpq_class dist2 = (e.re - cx) * (e.re - cx) + adq * (e.im_coeff - cy) * (e.im_coeff - cy);
        dist2.canonicalize();
        if (dist2 >= r2) return;
        mpz_class n = norm(a);
        if (n == 0 || n == 1) return;
        if (is_prime_element(a, field)) out.push_back(a);
    };
    if (field.basis_kind == BasisKind::sqrt_d) {
        long long ylo = static_cast<long long>(std::floor(cyd - s / ad)) - 1;
        long long yhi = static_cast<long long>(std::ceil(cyd + s / ad)) + 1;
        long long xlo = static_cast<long long>(std::floor(cxd - s)) - 1;
        long long xhi = static_cast<long long>(std::ceil(cxd + s)) + 1;
        for (long long y = ylo; y <= yhi; ++y)
            for (long long x = xlo; x <= xhi; ++x) try_candidate(x, y);
    } else {
        // im_coeff = y/2, re = x + y/2
        long long ylo = static_cast<long long>(std::floor(2 * (cyd - s / ad))) - 1;
        long long yhi = static_cast<long long>(std::ceil(2 * (cyd + s / ad))) + 1;
        for (long long y = ylo; y <= yhi; ++y) {
            long long xlo = static_cast<long long>(std::floor(cxd - s - y / 2.0)) - 1;
            long long xhi = static_cast<long long>(std::ceil(cxd + s - y / 2.0)) + 1;
            for (long long x = xlo; x <= xhi; ++x) try_candidate(x, y);
        }
    }
    std::sort(out.begin(), out.end(), [](const AlgebraicInt& a, const AlgebraicInt& b) {
        mpz_class na = norm(a), nb = norm(b);
        if (na != nb) return na < nb;
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });
    return out;
}

void prime_ideals_up_to(std::uint64_t x, const FieldDescriptor& field,
                        const std::function<void(const PrimeIdealRec&)>& emit) {
    if (x < 2) throw invalid_argument_error("prime_ideals_up_to: bound must be at least 2");
    if (x > 200000000ull) throw capacity_error("prime_ideals_up_to: bound too large");
    // Odd-only sieve over [2, x]; norms are emitted in ascending order, so a
    // norm n contributes when n is prime (split/ramified) or n = p^2, p inert.
    std::vector<bool> composite(x + 1, false);
    for (std::uint64_t i = 3; i * i <= x; i += 2) {
        if (!composite[i])
            for (std::uint64_t j = i * i; j <= x; j += 2 * i) composite[j] = true;
    }
    auto sieved_prime = [&](std::uint64_t n) {
        if (n < 2) return false;
        if (n % 2 == 0) return n == 2;
        return !composite[n];
    };
    for (std::uint64_t n = 2; n <= x; ++n) {
        if (sieved_prime(n)) {
            std::uint64_t p = n;
            SplitType st = splitting_type(p, field);
            if (st == SplitType::inert) continue; // its ideal has norm p^2
            auto gen = norm_p_generator(p, field);
            PrimeIdealRec rec;
            rec.p = p;
            rec.norm = mpz_class(static_cast<unsigned long>(p));
            rec.split_type = st;
            rec.principal = gen.has_value();
            if (gen) rec.generator = canonical_associate(*gen, field);
            if (st == SplitType::ramified) {
                emit(rec);
            } else {
                PrimeIdealRec rec2 = rec;
                if (gen) {
                    AlgebraicInt g1 = canonical_associate(*gen, field);
                    AlgebraicInt g2 = canonical_associate(conj(*gen), field);
                    if (angle_less(g2, g1)) std::swap(g1, g2);
                    rec.generator = g1;
                    rec2.generator = g2;
                }
                emit(rec);
                emit(rec2);
            }
        } else {
            std::uint64_t r = isqrt_u64(n);
            if (r * r == n && sieved_prime(r) && splitting_type(r, field) == SplitType::inert) {
                PrimeIdealRec rec;
                rec.p = r;
                rec.norm = mpz_class(static_cast<unsigned long>(n));
                rec.split_type = SplitType::inert;
                rec.principal = true;
                rec.generator = canonical_associate(field.element(r, 0), field);
                emit(rec);
            }
        }
    }
}

std::vector<PrimeIdealRec> prime_ideals_up_to(std::uint64_t x, const FieldDescriptor& field) {
    std::vector<PrimeIdealRec> out;
    prime_ideals_up_to(x, field, [&](const PrimeIdealRec& r) { out.push_back(r); });
    return out;
}

} // namespace bubbles
