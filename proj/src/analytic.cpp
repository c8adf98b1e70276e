#include "bubbles/analytic.hpp"

#include <algorithm>
#include <cmath>

namespace bubbles {

namespace {

// Number of monic roots of the minimal polynomial of w mod p: the prime
// ideals above p are (p, w - r) for those roots r (split: two, ramified: one).
std::vector<std::uint64_t> w_roots_mod(std::uint64_t p, const FieldDescriptor& field) {
    std::vector<std::uint64_t> roots;
    for (std::uint64_t r = 0; r < p; ++r) {
        unsigned __int128 v;
        if (field.basis_kind == BasisKind::sqrt_d) {
            long long dm = field.d % static_cast<long long>(p);
            if (dm < 0) dm += static_cast<long long>(p);
            v = (static_cast<unsigned __int128>(r) * r + p - static_cast<std::uint64_t>(dm)) % p;
            v = (v + p) % p;
        } else {
            long long mm = ((field.d - 1) / 4) % static_cast<long long>(p);
            if (mm < 0) mm += static_cast<long long>(p);
            v = (static_cast<unsigned __int128>(r) * r + p * 2 - r - static_cast<std::uint64_t>(mm)) % p;
        }
        if (v % p == 0) roots.push_back(r);
    }
    return roots;
}

// How many prime ideals above p divide (q): roots r with q.x + q.y*r = 0 mod p
// for non-inert p, or p | q for inert p.
int ideals_above_dividing_q(std::uint64_t p, SplitType st, const ResidueSystem& rs) {
    mpz_class pz(static_cast<unsigned long>(p));
    if (st == SplitType::inert) return (rs.q.x % pz == 0 && rs.q.y % pz == 0) ? 1 : 0;
    int n = 0;
    for (std::uint64_t r : w_roots_mod(p, rs.field)) {
        mpz_class v = rs.q.x + rs.q.y * mpz_class(static_cast<unsigned long>(r));
        if (v % pz == 0) ++n;
    }
    return n;
}

} // namespace

OrbitCounts pi1_counts(std::uint64_t x_lo, std::uint64_t x_hi, const ResidueSystem& rs) {
    if (x_lo < 2 || x_lo >= x_hi) throw invalid_argument_error("pi1_counts: need 2 <= x_lo < x_hi");
    OrbitCounts oc;
    oc.q = rs.q;
    oc.x_lo = x_lo;
    oc.x_hi = x_hi;
    std::vector<std::uint64_t> per_orbit(rs.orbits.size(), 0);
    mpz_class nq = norm(rs.q);
    // Nonprincipal split pairs arrive as two identical recs; resolve their
    // coprimality to (q) once per residue characteristic.
    std::uint64_t handled_np_p = 0;
    prime_ideals_up_to(x_hi - 1, rs.field, [&](const PrimeIdealRec& rec) {
        if (rec.norm < mpz_class(static_cast<unsigned long>(x_lo))) return;
        if (rec.principal) {
            int orb = rs.orbit_of(*rec.generator);
            if (orb >= 0) ++per_orbit[static_cast<size_t>(orb)];
            return;
        }
        mpz_class pz(static_cast<unsigned long>(rec.p));
        if (nq % pz != 0) {
            ++oc.nonprincipal;
            return;
        }
        // p divides norm(q): of the ideals above p, only those not dividing
        // (q) count; the two split recs are indistinguishable, so add the
        // whole contribution on the first and skip the second.
        int total = rec.split_type == SplitType::split ? 2 : 1;
        if (total == 2) {
            if (handled_np_p == rec.p) return;
            handled_np_p = rec.p;
        }
        int dividing = ideals_above_dividing_q(rec.p, rec.split_type, rs);
        if (total > dividing) oc.nonprincipal += static_cast<std::uint64_t>(total - dividing);
    });
    for (size_t i = 0; i < rs.orbits.size(); ++i) oc.counts.emplace_back(rs.orbit_label(static_cast<int>(i)), per_orbit[i]);
    oc.expected = static_cast<double>(rs.field.unit_count) * static_cast<double>(x_hi - x_lo) /
                  (static_cast<double>(rs.field.class_number) * static_cast<double>(rs.phi) *
                   std::log(static_cast<double>(x_lo)));
    return oc;
}

std::pair<std::complex<double>, double> char_prime_sum(const std::vector<std::complex<double>>& chi,
                                                       std::uint64_t x, const ResidueSystem& rs) {
    if (rs.field.class_number != 1)
        throw invalid_argument_error("char_prime_sum: supported only for class number one fields");
    if (chi.size() != rs.orbits.size())
        throw invalid_argument_error("char_prime_sum: character length does not match orbit count");
    if (x < 2) throw invalid_argument_error("char_prime_sum: x must be at least 2");
    std::complex<double> value(0.0, 0.0);
    double reference = 0.0;
    prime_ideals_up_to(2 * x, rs.field, [&](const PrimeIdealRec& rec) {
        if (rec.norm < mpz_class(static_cast<unsigned long>(x))) return;
        if (!rec.principal) return;
        int orb = rs.orbit_of(*rec.generator);
        if (orb < 0) return;
        double ln = std::log(rec.norm.get_d());
        value += chi[static_cast<size_t>(orb)] * ln;
        reference += ln;
    });
    return {value, reference};
}

namespace {

// Multisets over the sorted norms list with product <= cap; counts the empty
// product. Classic nondecreasing-index DFS.
std::uint64_t count_products(const std::vector<std::uint64_t>& norms, std::uint64_t cap) {
    struct Rec {
        const std::vector<std::uint64_t>& ns;
        std::uint64_t operator()(size_t i, std::uint64_t rem) const {
            std::uint64_t total = 1;
            for (size_t j = i; j < ns.size() && ns[j] <= rem; ++j) total += (*this)(j, rem / ns[j]);
            return total;
        }
    } rec{norms};
    return rec(0, cap);
}

// Norms of the prime ideals that are principal, coprime to q, and whose
// generator is congruent to a unit mod q, up to bound (inclusive).
std::vector<std::uint64_t> unit_congruent_prime_norms(std::uint64_t bound, const ResidueSystem& rs) {
    std::vector<std::uint64_t> norms;
    if (bound < 2) return norms;
    int unit_orbit = rs.orbit_of(rs.field.one());
    prime_ideals_up_to(bound, rs.field, [&](const PrimeIdealRec& rec) {
        if (!rec.principal) return;
        if (rs.orbit_of(*rec.generator) != unit_orbit) return;
        norms.push_back(mpz_get_ui(rec.norm.get_mpz_t()));
    });
    std::sort(norms.begin(), norms.end());
    return norms;
}

} // namespace

std::uint64_t count_S(std::uint64_t x, const ResidueSystem& rs) {
    if (x < 1) throw invalid_argument_error("count_S: x must be at least 1");
    return count_products(unit_congruent_prime_norms(x, rs), x);
}

double c_q_estimate(const ResidueSystem& rs, std::uint64_t cutoff) {
    if (cutoff < 3) throw invalid_argument_error("c_q_estimate: cutoff too small");
    double hq = static_cast<double>(rs.field.class_number) * static_cast<double>(rs.phi) /
                static_cast<double>(rs.field.unit_count);
    double s = 1.0 + 1.0 / std::log(static_cast<double>(cutoff));
    double prod = 1.0;
    for (std::uint64_t n : unit_congruent_prime_norms(cutoff, rs))
        prod /= 1.0 - std::pow(static_cast<double>(n), -s);
    return std::pow(s - 1.0, 1.0 / hq) * prod / std::tgamma(1.0 / hq);
}

std::uint64_t count_smooth(std::uint64_t x, std::uint64_t y, const FieldDescriptor& field) {
    if (y < 2) throw invalid_argument_error("count_smooth: y must be at least 2");
    if (x < 1) throw invalid_argument_error("count_smooth: x must be at least 1");
    std::uint64_t bound = std::min(x, y - 1);
    std::vector<std::uint64_t> norms;
    if (bound >= 2)
        prime_ideals_up_to(bound, field, [&](const PrimeIdealRec& rec) {
            norms.push_back(mpz_get_ui(rec.norm.get_mpz_t()));
        });
    std::sort(norms.begin(), norms.end());
    return count_products(norms, x);
}

namespace {

// rho on the grid u = j*h: 1 below u=1, 1-ln(u) up to u=2, then the two-back
// Simpson recurrence rho[j] = rho[j-2] - (h/3)(f(j-2) + 4f(j-1) + f(j)) with
// f(j) = rho(u_j - 1)/u_j.
std::vector<double> rho_grid(double target, double h) {
    size_t one = static_cast<size_t>(std::llround(1.0 / h));
    size_t last = static_cast<size_t>(std::ceil(target / h)) + 4;
    std::vector<double> rho(last + 1);
    for (size_t j = 0; j <= last; ++j) {
        double u = static_cast<double>(j) * h;
        if (j <= one)
            rho[j] = 1.0;
        else if (j <= 2 * one)
            rho[j] = 1.0 - std::log(u);
        else
            rho[j] = 0.0;
    }
    auto f = [&](size_t j) { return rho[j - one] / (static_cast<double>(j) * h); };
    for (size_t j = 2 * one + 1; j <= last; ++j)
        rho[j] = rho[j - 2] - h / 3.0 * (f(j - 2) + 4.0 * f(j - 1) + f(j));
    return rho;
}

} // namespace

double dickman_rho(double u, double step) {
    if (u < 0) throw invalid_argument_error("dickman_rho: u must be nonnegative");
    if (!(step > 0) || std::abs(1.0 / step - std::llround(1.0 / step)) > 1e-9)
        throw invalid_argument_error("dickman_rho: step must evenly divide 1");
    if (u <= 1.0) return 1.0;
    if (u <= 2.0) return 1.0 - std::log(u);
    std::vector<double> rho = rho_grid(u, step);
    // 4-point Lagrange interpolation around u.
    size_t j1 = static_cast<size_t>(u / step);
    if (j1 < 1) j1 = 1;
    if (j1 + 2 >= rho.size()) j1 = rho.size() - 3;
    size_t j0 = j1 - 1;
    double result = 0.0;
    for (size_t k = 0; k < 4; ++k) {
        double term = rho[j0 + k];
        double uk = static_cast<double>(j0 + k) * step;
        for (size_t l = 0; l < 4; ++l) {
            if (l == k) continue;
            double ul = static_cast<double>(j0 + l) * step;
            term *= (u - ul) / (uk - ul);
        }
        result += term;
    }
    return result;
}

double dickman_rho(double u) { return dickman_rho(u, 1.0 / 1024.0); }

double zeta_residue(const FieldDescriptor& field) {
    const double pi = 4.0 * std::atan(1.0);
    return 2.0 * pi * static_cast<double>(field.class_number) /
           (static_cast<double>(field.unit_count) * std::sqrt(static_cast<double>(-field.discriminant)));
}

namespace {

std::uint64_t euler_phi_u64(std::uint64_t n) {
    std::uint64_t result = n;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    if (n > 1) result -= result / n;
    return result;
}

} // namespace

double shiu_bound(double x0_abs, const ResidueSystem& rs, BoundVariant variant) {
    double l1 = std::log(x0_abs);
    if (!(l1 > 0)) throw invalid_argument_error("shiu_bound: log(|x0|) must be positive");
    double l2 = std::log(l1);
    if (!(l2 > 0)) throw invalid_argument_error("shiu_bound: log log |x0| must be positive");
    double l3 = std::log(l2);
    if (!(l3 > 0)) throw invalid_argument_error("shiu_bound: log log log |x0| must be positive");
    double l4 = std::log(l3);
    if (!(l4 > 0)) throw invalid_argument_error("shiu_bound: log log log log |x0| must be positive");
    double ratio = l2 * l4 / (l3 * l3);
    if (variant == BoundVariant::quadratic) {
        double phi = static_cast<double>(rs.phi);
        double expo = static_cast<double>(rs.field.unit_count) /
                      (static_cast<double>(rs.field.class_number) * phi);
        return std::pow(ratio, expo) / phi;
    }
    if (rs.q.y != 0)
        throw invalid_argument_error("shiu_bound: the rational variant needs a rational integer modulus");
    mpz_class aq = abs(rs.q.x);
    if (!aq.fits_ulong_p()) throw capacity_error("shiu_bound: modulus too large");
    double phi = static_cast<double>(euler_phi_u64(mpz_get_ui(aq.get_mpz_t())));
    return std::pow(ratio, 1.0 / phi) / phi;
}

} // namespace bubbles
