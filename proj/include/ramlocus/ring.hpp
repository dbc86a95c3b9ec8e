#pragma once

/**
 * Exact arithmetic in the truncated ring Z/p^n.
 *
 * Rings are interned: ring_of(p, n) returns a reference that stays valid for
 * the lifetime of the process, so residues can carry a plain pointer to their
 * ring. Elements are stored as canonical representatives in [0, p^n). When
 * p^n fits in 64 bits (the common case) arithmetic runs on machine words with
 * 128-bit intermediates; otherwise it falls back to arbitrary precision.
 */

#include <cstdint>
#include <string>

#include "ramlocus/bigint.hpp"
#include "ramlocus/errors.hpp"

namespace ramlocus {

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(uint64_t x);

class Residue;

class Ring {
public:
    uint64_t p() const { return p_; }
    unsigned n() const { return n_; }
    const Nat& modulus() const { return modulus_; }

    // True when p^n fits in uint64_t; products then use unsigned __int128.
    bool small() const { return small_; }
    uint64_t modulus_u64() const { return mod64_; }

    // |(Z/p^n)^*| = p^(n-1) (p-1)
    Nat unit_group_order() const;

    Residue residue(const Nat& value) const;
    Residue residue(int64_t value) const;
    Residue zero() const;
    Residue one() const;

    bool operator==(const Ring& other) const { return p_ == other.p_ && n_ == other.n_; }
    bool operator!=(const Ring& other) const { return !(*this == other); }

    std::string str() const;  // "Z/p^n"

private:
    Ring(uint64_t p, unsigned n);
    friend const Ring& ring_of(uint64_t p, unsigned n);

    uint64_t p_;
    unsigned n_;
    Nat modulus_;
    bool small_;
    uint64_t mod64_;
};

// Interned ring lookup. Throws BadParam unless p is prime and n >= 1.
const Ring& ring_of(uint64_t p, unsigned n);

class Residue {
public:
    Residue(const Ring& ring, const Nat& value);
    Residue(const Ring& ring, uint64_t reduced_value);  // value already in [0, p^n)

    const Ring& ring() const { return *ring_; }
    Nat value() const;
    uint64_t value_u64() const;  // requires ring().small()
    bool is_zero() const;
    bool is_one() const;
    bool is_unit() const;

    Residue operator+(const Residue& rhs) const;
    Residue operator-(const Residue& rhs) const;
    Residue operator*(const Residue& rhs) const;
    Residue operator-() const;

    Residue inv() const;  // throws NonUnit when p | value
    Residue pow(uint64_t e) const;
    Residue pow(const Nat& e) const;

    bool operator==(const Residue& rhs) const;
    bool operator!=(const Residue& rhs) const { return !(*this == rhs); }

    // Image in Z/p^k for k <= n (same p).
    Residue reduce_to(const Ring& target) const;

    std::string str() const;

private:
    void check_same_ring(const Residue& rhs) const;

    const Ring* ring_;
    uint64_t sv_;  // canonical value when ring is small
    Nat bv_;       // canonical value otherwise
};

// Largest v <= n with p^v | value; n for the zero residue (truncation convention).
unsigned valuation(const Residue& a);

// Multiplicative order in (Z/p^n)^*. Throws NonUnit.
Nat unit_order(const Residue& a);

}  // namespace ramlocus
