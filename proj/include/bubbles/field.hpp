#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "bubbles/errors.hpp"

namespace bubbles {

// Element x + y*w of the ring of integers of Q(sqrt(d)), d < 0 squarefree.
// w = sqrt(d) when d = 2,3 (mod 4), w = (1+sqrt(d))/2 when d = 1 (mod 4).
// Carries d so cross-field operations can be rejected.
struct AlgebraicInt {
    mpz_class x;
    mpz_class y;
    long long d = -1;

    AlgebraicInt() = default;
    AlgebraicInt(mpz_class x_, mpz_class y_, long long d_) : x(std::move(x_)), y(std::move(y_)), d(d_) {}

    bool operator==(const AlgebraicInt& o) const { return d == o.d && x == o.x && y == o.y; }
    bool operator!=(const AlgebraicInt& o) const { return !(*this == o); }
};

// Binary quadratic form a*X^2 + b*X*Y + c*Y^2 of discriminant b^2 - 4ac.
struct QuadraticForm {
    mpz_class a, b, c;

    mpz_class discriminant() const { return b * b - 4 * a * c; }
    bool operator==(const QuadraticForm& o) const { return a == o.a && b == o.b && c == o.c; }
};

// Integral basis flavor: whether w = sqrt(d) or (1+sqrt(d))/2.
enum class BasisKind { sqrt_d, half_plus_sqrt_d };

// An imaginary quadratic field K = Q(sqrt(d)) with its ring of integers.
// Immutable after make_field; safe to share across threads.
class FieldDescriptor {
public:
    long long d = 0;
    long long discriminant = 0; // d if d = 1 (mod 4), else 4d
    BasisKind basis_kind = BasisKind::sqrt_d;
    int unit_count = 0; // omega: 4 iff d=-1, 6 iff d=-3, else 2
    std::vector<AlgebraicInt> units;
    long long class_number = 0;

    AlgebraicInt element(mpz_class x, mpz_class y) const { return AlgebraicInt(std::move(x), std::move(y), d); }
    AlgebraicInt element(long long x, long long y) const {
        return AlgebraicInt(mpz_class(static_cast<long>(x)), mpz_class(static_cast<long>(y)), d);
    }
    AlgebraicInt zero() const { return element(0, 0); }
    AlgebraicInt one() const { return element(1, 0); }
};

FieldDescriptor make_field(long long d);

// --- element arithmetic (exact; field mismatch raises invalid_argument_error) ---

AlgebraicInt add(const AlgebraicInt& a, const AlgebraicInt& b);
AlgebraicInt sub(const AlgebraicInt& a, const AlgebraicInt& b);
AlgebraicInt mul(const AlgebraicInt& a, const AlgebraicInt& b);
AlgebraicInt conj(const AlgebraicInt& a);
AlgebraicInt neg(const AlgebraicInt& a);
mpz_class norm(const AlgebraicInt& a);

// Complex embedding a -> re + im_coeff * sqrt(|d|) * i, both parts exact rationals.
struct EmbedCoords {
    mpq_class re;
    mpq_class im_coeff;
};
EmbedCoords embed(const AlgebraicInt& a);

bool is_unit(const AlgebraicInt& a);

// The associate of a whose embedding angle lies in [0, 2*pi/omega); identity for 0.
AlgebraicInt canonical_associate(const AlgebraicInt& a, const FieldDescriptor& field);

// Ascending embedding-angle order for nonzero elements in the canonical sector
// (exact: sign of the cross product x_a*y_b - y_a*x_b, basis-independent).
bool angle_less(const AlgebraicInt& a, const AlgebraicInt& b);

// All reduced primitive forms of discriminant D < 0, D = 0 or 1 (mod 4),
// ordered by (a, b, c); length = class number.
std::vector<QuadraticForm> class_group(const mpz_class& D);

// Elements print as "x+y*w" ("5+1*w"); y = 0 prints as plain "x".
// The parser also accepts "i" for "w" when d = -1, and plain integers.
std::string format_element(const AlgebraicInt& a);
AlgebraicInt parse_element(const std::string& text, const FieldDescriptor& field);

} // namespace bubbles
