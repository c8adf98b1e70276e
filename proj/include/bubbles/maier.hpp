#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "bubbles/congruence.hpp"
#include "bubbles/errors.hpp"
#include "bubbles/field.hpp"
#include "bubbles/primes.hpp"

namespace bubbles {

// Prime ideal with enough data for exact ideal arithmetic: `root` is the
// residue r with w = r mod the ideal (split/ramified; unused for inert), which
// distinguishes conjugates even when no generator exists.
struct IdealFactor {
    PrimeIdealRec rec;
    std::uint64_t root = 0;
};

// The matrix construction's working state around modulus q and residue a.
struct MaierContext {
    FieldDescriptor field;
    ResidueSystem rs;
    AlgebraicInt a;
    std::uint64_t y = 0, z = 0;
    double t = 0;
    bool unit_case = false;              // a congruent to a unit mod q
    std::vector<IdealFactor> P;          // selection pool minus p0 (p1 kept)
    IdealFactor p0, p1;
    AlgebraicInt Q;                      // generator of (q) * prod(P minus p1)
    std::vector<IdealFactor> Q_factors;  // distinct primes dividing (Q)
    std::uint64_t B_r2 = 0;              // yz: squared radius of the inner disk
    std::uint64_t Bprime_r2 = 0;         // 9yz: squared radius of the outer disk
};

// t = exp(log y * logloglog y / (4 loglog y)); needs y >= 100 so the iterated
// logarithms stay positive.
double t_choice(std::uint64_t y);

// Assembles the prime pool. Unit case (a congruent to a unit): primes of norm
// <= y not congruent to 1, plus primes of norm in [t, yz/t] congruent to 1.
// Otherwise three bands: norm <= y incongruent to both 1 and a, norm in [t, y]
// congruent to 1, norm <= yz/t congruent to a. Primes dividing q are dropped;
// nonprincipal primes are incongruent to everything. Requires z < y and
// t < sqrt(yz). Returned sorted by (norm, generator angle / root).
std::pair<bool, std::vector<IdealFactor>> build_P(const FieldDescriptor& field, const ResidueSystem& rs,
                                                  const AlgebraicInt& a, std::uint64_t y, double t,
                                                  std::uint64_t z);

// p0: first candidate of norm >= log y. p1: first candidate of norm in
// (log y, y], distinct from p0, whose ideal class matches the class of
// (q) * prod(candidates minus p0), so that removing it leaves a principal
// product. Failure reports that class as a reduced quadratic form.
std::pair<IdealFactor, IdealFactor> select_p0_p1(const FieldDescriptor& field, const ResidueSystem& rs,
                                                 const std::vector<IdealFactor>& candidates, std::uint64_t y);

// Computes the canonical generator of (q) * prod over ctx.P skipping p1, and
// stores it with the distinct-prime factor list in ctx.
AlgebraicInt build_Q(MaierContext& ctx);

// Full pipeline: residue system, pool, p0/p1 selection, Q.
MaierContext make_context(const FieldDescriptor& field, const AlgebraicInt& q, const AlgebraicInt& a,
                          std::uint64_t y, std::uint64_t z, double t);

struct STCounts {
    std::uint64_t s_count = 0;     // |S|: norm < yz, coprime to Q, a-class
    std::uint64_t t_count = 0;     // |T|: norm < 9yz, coprime to Q, other class
    std::uint64_t t_multiples = 0; // T': multiples of p0 or p1
    std::uint64_t t_heavy = 0;     // T'': remaining with a prime factor of norm > y
    std::uint64_t t_smooth = 0;    // T''': the rest
    double predicted_ratio = 0;    // (1/phi(q)) (log t / log z)^(1/h_q)
    double mertens_ratio = 0;      // norm(Q)/phi(Q)
};

// Exact lattice scan of both disks; requires yz <= 10^8 and z >= 2.
STCounts count_S_T(const MaierContext& ctx);

// Emits matrix cells (i, b, iQ+b) for i of norm in (lo, hi] and b in the inner
// disk coprime to Q. Toy mode takes the caller's range; otherwise the range is
// (norm(Q)^3, 2 norm(Q)^3], rejected when it exceeds 2^63 - 1.
void matrix_cells(const MaierContext& ctx, std::uint64_t lo, std::uint64_t hi, bool toy,
                  const std::function<void(const AlgebraicInt&, const AlgebraicInt&, const AlgebraicInt&)>& emit);

} // namespace bubbles
