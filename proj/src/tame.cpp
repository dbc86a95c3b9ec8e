#include "ramlocus/tame.hpp"

#include <string>

namespace ramlocus {

TamePair::TamePair(Matrix sigma_, Matrix tau_, uint64_t q_)
    : sigma(std::move(sigma_)), tau(std::move(tau_)), q(q_) {
    if (sigma.ring() != tau.ring()) throw RingMismatch("TamePair: sigma and tau rings differ");
    if (sigma.dim() != tau.dim()) throw DimMismatch("TamePair: sigma and tau dimensions differ");
    if (!is_prime(q)) throw BadParam("TamePair: q = " + std::to_string(q) + " is not prime");
    if (q == sigma.ring().p()) throw BadParam("TamePair: q must differ from p");
    if (!sigma.det().is_unit()) throw NonInvertible("TamePair: sigma is not invertible");
    if (!tau.det().is_unit()) throw NonInvertible("TamePair: tau is not invertible");
}

bool verify_relation(const TamePair& pair) {
    Matrix lhs = pair.sigma * pair.tau * pair.sigma.inverse();
    return lhs == pair.tau.pow(pair.q);
}

bool charpoly_qtwist_check(const TamePair& pair) {
    return char_poly(pair.tau) == char_poly(pair.tau.pow(pair.q));
}

SemistabilityThreshold semistability_threshold(unsigned m, uint64_t p) {
    if (m < 1) throw BadParam("semistability_threshold: m must be >= 1");
    if (!is_prime(p)) throw BadParam("semistability_threshold: p is not prime");
    unsigned value = 1;
    if (p - 1 <= m) value = static_cast<unsigned>(m / (p - 1)) + 1;
    return {m, p, value};
}

bool is_detectably_ramified(const Matrix& tau) {
    const Ring& R = tau.ring();
    const unsigned m = tau.dim();
    const unsigned threshold = semistability_threshold(m, R.p()).value;
    if (R.n() < threshold)
        throw PrecisionTooLow("is_detectably_ramified: precision " + std::to_string(R.n()) +
                              " below threshold N = " + std::to_string(threshold));
    const Ring& target = ring_of(R.p(), threshold);
    // (x - 1)^m over Z/p^N
    std::vector<Residue> binom;
    binom.reserve(m + 1);
    Nat c = 1;
    for (unsigned k = 0; k <= m; ++k) {
        Nat signed_coeff = ((m - k) % 2 == 0) ? c : -c;
        binom.push_back(target.residue(signed_coeff));
        c = c * (m - k) / (k + 1);
    }
    Poly unipotent_cp(target, std::move(binom));
    return char_poly(tau).reduce_to(target) != unipotent_cp;
}

TamePair construct_gl2_ramified_pair(uint64_t q, int beta_sign, const Residue& t,
                                     const Ring& ring) {
    if (t.ring() != ring) throw RingMismatch("construct_gl2_ramified_pair: t ring differs");
    if (t.is_zero()) throw BadParam("construct_gl2_ramified_pair: t must be nonzero");
    if (beta_sign != 1 && beta_sign != -1)
        throw BadParam("construct_gl2_ramified_pair: sign must be +1 or -1");
    if (!is_prime(q)) throw BadParam("construct_gl2_ramified_pair: q is not prime");
    if (q == ring.p()) throw BadParam("construct_gl2_ramified_pair: q must differ from p");

    Residue beta = ring.residue(static_cast<int64_t>(beta_sign));
    Residue qr = ring.residue(Nat(q));
    Matrix sigma = Matrix::diagonal(ring, {qr * beta, beta});
    Matrix tau = Matrix::identity(ring, 2);
    tau.set(0, 1, t);
    return TamePair(std::move(sigma), std::move(tau), q);
}

bool gl2_ramified_criterion(const Matrix& a, uint64_t q) {
    if (a.dim() != 2) throw DimMismatch("gl2_ramified_criterion: matrix must be 2x2");
    const Ring& R = a.ring();
    Residue qr = R.residue(Nat(q));
    if (a.det() != qr) return false;
    Residue tr = a.trace();
    Residue one_plus_q = R.one() + qr;
    return tr * tr == one_plus_q * one_plus_q;
}

bool general_ramified_criterion(const Matrix& a, const Residue& b) {
    return resultant_invariant(a, b).is_zero();
}

}  // namespace ramlocus
