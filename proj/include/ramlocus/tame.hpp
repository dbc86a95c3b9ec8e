#pragma once

/**
 * Two-generator model of a tame local representation mod p^n and the
 * ramified-lift criteria attached to it.
 *
 * A TamePair carries the images (sigma, tau) of the Frobenius and tame
 * inertia generators together with the residue characteristic q of the
 * local field; the defining relation is sigma tau sigma^-1 = tau^q.
 */

#include <cstdint>

#include "ramlocus/matrix.hpp"

namespace ramlocus {

struct TamePair {
    Matrix sigma;
    Matrix tau;
    uint64_t q;

    // Validates: square matrices of equal dimension over one ring, unit
    // determinants, q prime and distinct from the ring's p.
    TamePair(Matrix sigma_, Matrix tau_, uint64_t q_);

    const Ring& ring() const { return sigma.ring(); }
    unsigned dim() const { return sigma.dim(); }
};

// sigma tau sigma^-1 == tau^q
bool verify_relation(const TamePair& pair);

// char_poly(tau) == char_poly(tau^q); necessary once the relation holds,
// since tau^q is then a conjugate of tau.
bool charpoly_qtwist_check(const TamePair& pair);

struct SemistabilityThreshold {
    unsigned m;
    uint64_t p;
    unsigned value;
};

// Smallest precision N at which a root of unity zeta != 1 from a degree <= m
// extension of Q_p cannot satisfy (zeta - 1)^m == 0 mod p^N: prime-to-p
// torsion gives unit zeta - 1, and zeta_{p^k} has v(zeta - 1) = 1/phi(p^k),
// minimized at k = 1. Hence N = 1 when p - 1 > m, else floor(m/(p-1)) + 1.
SemistabilityThreshold semistability_threshold(unsigned m, uint64_t p);

// True iff char_poly(tau) != (x-1)^m mod p^N at the threshold precision N;
// a true answer certifies that every tame representation reducing to tau is
// ramified. Throws PrecisionTooLow when tau's ring has n < N.
bool is_detectably_ramified(const Matrix& tau);

// sigma = diag(q b, b) with b = +-1, tau = [[1, t], [0, 1]]. Satisfies the
// relation exactly, with det(sigma) = q and trace(sigma)^2 = (1 + q)^2.
TamePair construct_gl2_ramified_pair(uint64_t q, int beta_sign, const Residue& t, const Ring& ring);

// det(A) == q and trace(A)^2 == (1 + q)^2 mod p^n (2x2 only).
bool gl2_ramified_criterion(const Matrix& a, uint64_t q);

// Resultant criterion: F(A, b) == 0 mod p^n, the necessary condition for A
// to be the Frobenius of a point with a ramified semistable lift, where b is
// the cyclotomic coordinate q mod p^n. Vacuously true at b == 1.
bool general_ramified_criterion(const Matrix& a, const Residue& b);

}  // namespace ramlocus
