#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bubbles/field.hpp"

namespace bubbles {

// The quotient ring O_K/(q): lattice basis of (q), reduced residues, the unit
// group's images, and the partition of reduced residues into unit orbits.
// Immutable after residue_group; all queries are reentrant.
class ResidueSystem {
public:
    FieldDescriptor field;
    AlgebraicInt q;
    // Columns (A,0) and (B,C), 0 <= B < A, A*C = norm(q): the lattice (q).
    mpz_class ideal_basis[2][2];
    long long phi = 0; // |(O_K/(q))^x|, counted over coprime representatives
    std::vector<AlgebraicInt> unit_images; // reduce_mod of each unit, field.units order
    bool distinct_units = false;
    // Unit orbits of the reduced residues, each sorted by (x, y); orbits
    // sorted by label = least member. Labels key every downstream report.
    std::vector<std::vector<AlgebraicInt>> orbits;
    // Generating chain with relative orders: each generator's order is taken
    // modulo the span of its predecessors, so the orders multiply out to phi.
    std::vector<std::pair<AlgebraicInt, long long>> group_structure;

    bool coprime(const AlgebraicInt& alpha) const;
    // Orbit index of alpha's residue, -1 when not coprime to q.
    int orbit_of(const AlgebraicInt& alpha) const;
    const AlgebraicInt& orbit_label(int index) const { return orbits[static_cast<size_t>(index)].front(); }

    std::vector<int32_t> residue_orbit_ids; // indexed y*A + x over the parallelepiped
};

// Square character table of the quotient (O_K/(q))^x / units, one row per
// character, one column per orbit (in ResidueSystem::orbits order); row 0 is
// the principal character.
struct CharacterTable {
    std::vector<AlgebraicInt> orbit_labels;
    std::vector<std::vector<std::complex<double>>> rows;
};

// The ray class data mod q: h_q = h_K * phi / omega, the orbit labels of the
// principal part, and (for class number one) the character table.
struct RayClassGroup {
    long long h_q = 0;
    std::vector<AlgebraicInt> principal_part_orbits;
    CharacterTable characters;
};

// Unique representative of alpha + (q) in the half-open fundamental
// parallelepiped of the triangular basis: equal representatives iff congruent.
AlgebraicInt reduce_mod(const AlgebraicInt& alpha, const ResidueSystem& rs);

// Build the residue system for q != 0, q not a unit; norm(q) <= 1e5.
ResidueSystem residue_group(const AlgebraicInt& q, const FieldDescriptor& field);

// The unique unit u with alpha = u*a (mod q), when the units are distinct mod q
// and both arguments are coprime to q; nullopt otherwise.
std::optional<AlgebraicInt> congruent_up_to_unit(const AlgebraicInt& alpha, const AlgebraicInt& a,
                                                 const ResidueSystem& rs);

// Ray class count h_q = h_K * phi(q) / omega. Moduli where the hypothesis
// fails structurally -- (2) in any field, and the ramified ideal above 3 for
// d = -3 -- raise excluded_modulus_error; other preconditions (distinct units,
// units not covering every reduced residue) raise invalid_argument_error.
RayClassGroup ray_class_count(const AlgebraicInt& q, const FieldDescriptor& field);

// Characters of (O_K/(q))^x / units. Requires distinct units and class number
// one (capacity_error otherwise). Rows are exactly orthogonal up to 1e-12.
CharacterTable character_table(const ResidueSystem& rs);

} // namespace bubbles
