#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

#include "bubbles/field.hpp"

namespace bubbles {

// How a rational prime p decomposes in the field.
enum class SplitType { split, inert, ramified };

// A prime ideal above p. norm = p^2 iff inert, else p.
// generator (canonical associate) is present iff the ideal is principal.
struct PrimeIdealRec {
    std::uint64_t p = 0;
    mpz_class norm;
    SplitType split_type = SplitType::inert;
    bool principal = false;
    std::optional<AlgebraicInt> generator;
};

// Deterministic Miller-Rabin, exact for all n < 2^64.
bool is_prime_u64(std::uint64_t n);

// Square root of a mod odd prime p (Tonelli-Shanks); nullopt if a is a non-residue.
std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p);

// ramified iff p | disc; else split/inert by the Kronecker symbol (disc/p).
SplitType splitting_type(std::uint64_t p, const FieldDescriptor& field);

// True iff (alpha) is a prime ideal: norm(alpha) is a rational prime, or a
// square p^2 of an inert prime. Zero and units are rejected.
bool is_prime_element(const AlgebraicInt& alpha, const FieldDescriptor& field);

// Representation p = form(x, y) for the principal form (a = 1, b in {0,1});
// nullopt when p is not represented. Other forms are rejected.
// For the form x^2 + y^2 the smaller coordinate comes first.
std::optional<std::pair<mpz_class, mpz_class>> cornacchia_represent(const QuadraticForm& form, std::uint64_t p);

// All prime elements alpha with |embed(alpha) - center|^2 < r2 (strict, exact
// rational arithmetic), ordered by (norm, x, y). Center coordinates live in the
// embedding frame (cx, cy) = cx + cy*sqrt(|d|)*i; for d = -1 that is the plain
// complex point.
std::vector<AlgebraicInt> primes_in_disk(const mpq_class& cx, const mpq_class& cy, const mpq_class& r2,
                                         const FieldDescriptor& field);

// Every prime ideal of norm <= x exactly once, ascending by (norm, generator
// angle); split p yields two records with conjugate generators. principal and
// generator are filled via cornacchia_represent on the principal form.
void prime_ideals_up_to(std::uint64_t x, const FieldDescriptor& field,
                        const std::function<void(const PrimeIdealRec&)>& emit);
std::vector<PrimeIdealRec> prime_ideals_up_to(std::uint64_t x, const FieldDescriptor& field);

} // namespace bubbles
