#include "bubbles/field.hpp"

#include <cctype>
#include <utility>

namespace bubbles {

namespace {

bool mod4_is_1(long long d) {
    long long m = ((d % 4) + 4) % 4;
    return m == 1;
}

void check_same_field(const AlgebraicInt& a, const AlgebraicInt& b) {
    if (a.d != b.d)
        throw invalid_argument_error("element field mismatch: d=" + std::to_string(a.d) + " vs d=" + std::to_string(b.d));
}

bool is_squarefree(long long v) {
    // v > 0. Trial divide; any residual square factor is caught by the final check.
    long long m = v;
    for (long long p = 2; p * p <= m && p <= 1000000; ++p) {
        if (m % p == 0) {
            m /= p;
            if (m % p == 0) return false;
        }
    }
    mpz_class rest(static_cast<long>(m));
    return m == 1 || !mpz_perfect_square_p(rest.get_mpz_t());
}

// Rotation generator of the unit group: multiplication by it advances the
// embedding angle by 2*pi/omega.
AlgebraicInt rotation_unit(long long d) {
    if (d == -1) return AlgebraicInt(0, 1, d);
    if (d == -3) return AlgebraicInt(0, 1, d);
    return AlgebraicInt(-1, 0, d);
}

int omega_of(long long d) { return d == -1 ? 4 : (d == -3 ? 6 : 2); }

// True iff the embedding angle of nonzero a lies in [0, 2*pi/omega).
bool in_sector(const AlgebraicInt& a) {
    int w = omega_of(a.d);
    if (w == 2) return a.y > 0 || (a.y == 0 && a.x > 0);
    return a.x > 0 && a.y >= 0;
}

} // namespace

FieldDescriptor make_field(long long d) {
    if (d >= 0) throw invalid_argument_error("field parameter d must be negative, got " + std::to_string(d));
    if (!is_squarefree(-d)) throw invalid_argument_error("field parameter d must be squarefree, got " + std::to_string(d));
    FieldDescriptor f;
    f.d = d;
    f.basis_kind = mod4_is_1(d) ? BasisKind::half_plus_sqrt_d : BasisKind::sqrt_d;
    f.discriminant = f.basis_kind == BasisKind::half_plus_sqrt_d ? d : 4 * d;
    f.unit_count = omega_of(d);
    AlgebraicInt u = f.one();
    AlgebraicInt rot = rotation_unit(d);
    for (int i = 0; i < f.unit_count; ++i) {
        f.units.push_back(u);
        u = mul(u, rot);
    }
    f.class_number = static_cast<long long>(class_group(mpz_class(static_cast<long>(f.discriminant))).size());
    return f;
}

AlgebraicInt add(const AlgebraicInt& a, const AlgebraicInt& b) {
    check_same_field(a, b);
    return AlgebraicInt(a.x + b.x, a.y + b.y, a.d);
}

AlgebraicInt sub(const AlgebraicInt& a, const AlgebraicInt& b) {
    check_same_field(a, b);
    return AlgebraicInt(a.x - b.x, a.y - b.y, a.d);
}

AlgebraicInt mul(const AlgebraicInt& a, const AlgebraicInt& b) {
    check_same_field(a, b);
    if (mod4_is_1(a.d)) {
        // w^2 = w + (d-1)/4
        mpz_class m(static_cast<long>((a.d - 1) / 4));
        return AlgebraicInt(a.x * b.x + m * a.y * b.y, a.x * b.y + a.y * b.x + a.y * b.y, a.d);
    }
    // w^2 = d
    return AlgebraicInt(a.x * b.x + mpz_class(static_cast<long>(a.d)) * a.y * b.y, a.x * b.y + a.y * b.x, a.d);
}

AlgebraicInt conj(const AlgebraicInt& a) {
    if (mod4_is_1(a.d)) return AlgebraicInt(a.x + a.y, -a.y, a.d);
    return AlgebraicInt(a.x, -a.y, a.d);
}

AlgebraicInt neg(const AlgebraicInt& a) { return AlgebraicInt(-a.x, -a.y, a.d); }

mpz_class norm(const AlgebraicInt& a) {
    if (mod4_is_1(a.d)) {
        mpz_class m(static_cast<long>((1 - a.d) / 4));
        return a.x * a.x + a.x * a.y + m * a.y * a.y;
    }
    return a.x * a.x - mpz_class(static_cast<long>(a.d)) * a.y * a.y;
}

EmbedCoords embed(const AlgebraicInt& a) {
    EmbedCoords e;
    if (mod4_is_1(a.d)) {
        e.re = mpq_class(2 * a.x + a.y, 2);
        e.im_coeff = mpq_class(a.y, 2);
    } else {
        e.re = mpq_class(a.x);
        e.im_coeff = mpq_class(a.y);
    }
    e.re.canonicalize();
    e.im_coeff.canonicalize();
    return e;
}

bool is_unit(const AlgebraicInt& a) { return norm(a) == 1; }

AlgebraicInt canonical_associate(const AlgebraicInt& a, const FieldDescriptor& field) {
    if (a.d != field.d) throw invalid_argument_error("canonical_associate: element not in field");
    if (a.x == 0 && a.y == 0) return a;
    AlgebraicInt r = a;
    AlgebraicInt rot = rotation_unit(a.d);
    for (int i = 0; i < field.unit_count; ++i) {
        if (in_sector(r)) return r;
        r = mul(r, rot);
    }
    throw error("canonical_associate: no associate in sector (unreachable)");
}

bool angle_less(const AlgebraicInt& a, const AlgebraicInt& b) {
    check_same_field(a, b);
    return a.x * b.y - a.y * b.x > 0;
}

std::vector<QuadraticForm> class_group(const mpz_class& D) {
    if (D >= 0) throw invalid_argument_error("class_group: discriminant must be negative");
    mpz_class m = D % 4; // GMP: sign follows dividend; D<0 gives m in {-3,-2,-1,0}
    long r = mpz_class((m + 4) % 4).get_si();
    if (r != 0 && r != 1) throw invalid_argument_error("class_group: discriminant must be 0 or 1 mod 4");
    std::vector<QuadraticForm> forms;
    mpz_class absD = -D;
    for (mpz_class a = 1; 3 * a * a <= absD; ++a) {
        for (mpz_class b = -a; b <= a; ++b) {
            if (((b - D) % 2) != 0) continue;
            mpz_class num = b * b - D;
            if (num % (4 * a) != 0) continue;
            mpz_class c = num / (4 * a);
            if (c < a) continue;
            if ((b < 0) && (-b == a || a == c)) continue;
            mpz_class g = gcd(gcd(a, abs(b)), c);
            if (g != 1) continue;
            forms.push_back(QuadraticForm{a, b, c});
        }
    }
    return forms;
}

std::string format_element(const AlgebraicInt& a) {
    if (a.y == 0) return a.x.get_str();
    std::string s = a.x.get_str();
    s += a.y < 0 ? "-" : "+";
    s += mpz_class(abs(a.y)).get_str();
    s += "*w";
    return s;
}

AlgebraicInt parse_element(const std::string& text, const FieldDescriptor& field) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw invalid_argument_error("empty element text");

    mpz_class x = 0, y = 0;
    size_t pos = 0;
    auto is_w = [&](char c) { return c == 'w' || (field.d == -1 && c == 'i'); };
    int terms = 0;
    while (pos < s.size()) {
        if (++terms > 2) throw invalid_argument_error("malformed element text: " + text);
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (terms > 1) {
            throw invalid_argument_error("malformed element text: " + text);
        }
        if (pos >= s.size()) throw invalid_argument_error("malformed element text: " + text);
        if (is_w(s[pos])) {
            y += sign;
            ++pos;
            continue;
        }
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw invalid_argument_error("malformed element text: " + text);
        mpz_class v(s.substr(start, pos - start));
        if (pos < s.size() && s[pos] == '*') {
            ++pos;
            if (pos >= s.size() || !is_w(s[pos])) throw invalid_argument_error("malformed element text: " + text);
            y += sign * v;
            ++pos;
        } else if (pos < s.size() && is_w(s[pos])) {
            y += sign * v;
            ++pos;
        } else {
            x += sign * v;
        }
    }
    return field.element(x, y);
}

} // namespace bubbles
