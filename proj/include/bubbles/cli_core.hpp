#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "bubbles/congruence.hpp"
#include "bubbles/field.hpp"

namespace bubbles {

// One prime of a verified disk; unit holds u with prime = u*a (mod q), empty
// when the prime is congruent to no unit multiple of a.
struct BubblePrime {
    AlgebraicInt prime;
    std::optional<AlgebraicInt> unit;
};

// A disk in the embedding frame together with its classified primes.
// all_congruent iff every prime carries a unit; count = primes.size().
struct BubbleReport {
    long long d = -1;
    AlgebraicInt q, a;
    mpq_class cx, cy, r2;
    std::vector<BubblePrime> primes;
    bool all_congruent = false;
    long long count = 0;
};

// Enumerates the primes of the open disk and classifies each against a.
// Requires units distinct mod q and a coprime to q.
BubbleReport verify_bubble(const FieldDescriptor& field, const AlgebraicInt& q, const AlgebraicInt& a,
                           const mpq_class& cx, const mpq_class& cy, const mpq_class& r2);

// Heuristic search: sieves primes around the region, labels them good/bad by
// congruence to a, slides frames across the region proposing candidate disks
// (empty-circle extraction plus exhaustive refinement on small frames for
// d = -1, nearest-bad sweeps everywhere), and returns every candidate that
// verifies with all primes congruent and count >= k, sorted by count
// descending. budget caps the number of candidate disks verified.
std::vector<BubbleReport> search_bubbles(const FieldDescriptor& field, const AlgebraicInt& q,
                                         const AlgebraicInt& a, const mpq_class& cx, const mpq_class& cy,
                                         const mpq_class& radius, long long k, long long budget);

} // namespace bubbles
