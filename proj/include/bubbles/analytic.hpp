#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "bubbles/congruence.hpp"
#include "bubbles/primes.hpp"

namespace bubbles {

// Per-orbit counts of principal prime ideals with norm in [x_lo, x_hi) whose
// generators are coprime to q, plus a bucket for nonprincipal prime ideals
// coprime to q (they are congruent to no ua). expected is the main-term value
// omega * (x_hi - x_lo) / (h_K * phi * log x_lo) shared by every orbit.
struct OrbitCounts {
    AlgebraicInt q;
    std::uint64_t x_lo = 0;
    std::uint64_t x_hi = 0;
    std::vector<std::pair<AlgebraicInt, std::uint64_t>> counts; // (orbit label, count)
    std::uint64_t nonprincipal = 0;
    double expected = 0.0;
};

OrbitCounts pi1_counts(std::uint64_t x_lo, std::uint64_t x_hi, const ResidueSystem& rs);

// Sum of chi(orbit of generator) * log(norm) over principal prime ideals with
// norm in [x, 2x] (closed) coprime to q; prime powers of ideals are not summed.
// chi is a row of character_table(rs). Second component: the reference
// magnitude sum of log(norm) over the same ideals.
std::pair<std::complex<double>, double> char_prime_sum(const std::vector<std::complex<double>>& chi,
                                                       std::uint64_t x, const ResidueSystem& rs);

// Number of ideals of norm <= x (unit ideal included) whose prime ideal
// factors are all principal, coprime to q, and congruent to a unit mod q.
std::uint64_t count_S(std::uint64_t x, const ResidueSystem& rs);

// Truncated Euler-product estimate of the S(x) constant:
// (s-1)^(1/h_q) * prod_{N(p) <= cutoff} (1 - N(p)^-s)^-1 / Gamma(1/h_q)
// at s = 1 + 1/log(cutoff), over the same qualifying prime ideals as count_S.
double c_q_estimate(const ResidueSystem& rs, std::uint64_t cutoff);

// Number of ideals of norm <= x all of whose prime ideal factors have norm
// strictly below y (unit ideal included).
std::uint64_t count_smooth(std::uint64_t x, std::uint64_t y, const FieldDescriptor& field);

// Dickman rho via the delay equation u rho'(u) = -rho(u-1): closed form on
// [0, 2], then a fixed-step two-back Simpson integration (default step 2^-10)
// with 4-point interpolation; absolute error <= 1e-8 for u <= 10.
double dickman_rho(double u);
double dickman_rho(double u, double step);

// res_{s=1} zeta_K = 2 pi h_K / (omega sqrt(|disc|)).
double zeta_residue(const FieldDescriptor& field);

enum class BoundVariant { rational, quadratic };

// The displayed gap bounds with implied constant 1 (diagnostic only):
// quadratic: (1/phi(q)) * (L2 * L4 / L3^2)^(omega/(h_K phi(q)))
// rational:  (1/phi(|q|)) * (L2 * L4 / L3^2)^(1/phi(|q|)), q a rational integer
// where Lk is the k-times iterated log of x0_abs; all iterated logs must be
// positive.
double shiu_bound(double x0_abs, const ResidueSystem& rs, BoundVariant variant);

} // namespace bubbles
