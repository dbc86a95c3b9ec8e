#pragma once

// Test-only reference implementations. Everything here recomputes results by
// a route independent of the library code under test: exact integer
// arithmetic, closed forms, or plain nested loops.

#include <cstdint>
#include <vector>

#include "ramlocus/bigint.hpp"

namespace oracles {

using ramlocus::Nat;

// Exact integer determinant by Laplace expansion along the first row.
inline Nat int_det(const std::vector<std::vector<Nat>>& m) {
    const size_t dim = m.size();
    if (dim == 0) return 1;
    if (dim == 1) return m[0][0];
    Nat acc = 0;
    for (size_t j = 0; j < dim; ++j) {
        if (m[0][j] == 0) continue;
        std::vector<std::vector<Nat>> sub;
        sub.reserve(dim - 1);
        for (size_t r = 1; r < dim; ++r) {
            std::vector<Nat> row;
            row.reserve(dim - 1);
            for (size_t c = 0; c < dim; ++c)
                if (c != j) row.push_back(m[r][c]);
            sub.push_back(std::move(row));
        }
        const Nat term = m[0][j] * int_det(sub);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

// Sylvester resultant of integer polynomials given by ascending coefficient
// sequences at their nominal degrees (trailing zeros meaningful).
inline Nat int_resultant(const std::vector<Nat>& f, const std::vector<Nat>& g) {
    const size_t df = f.size() - 1;
    const size_t dg = g.size() - 1;
    const size_t size = df + dg;
    if (size == 0) return 1;
    std::vector<std::vector<Nat>> s(size, std::vector<Nat>(size, Nat(0)));
    for (size_t i = 0; i < dg; ++i)
        for (size_t k = 0; k <= df; ++k) s[i][i + k] = f[df - k];
    for (size_t i = 0; i < df; ++i)
        for (size_t k = 0; k <= dg; ++k) s[dg + i][i + k] = g[dg - k];
    return int_det(s);
}

// --- integer polynomial helpers (ascending coefficients) ---

inline std::vector<Nat> poly_add(const std::vector<Nat>& a, const std::vector<Nat>& b) {
    std::vector<Nat> out(std::max(a.size(), b.size()), Nat(0));
    for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

inline std::vector<Nat> poly_mul(const std::vector<Nat>& a, const std::vector<Nat>& b) {
    std::vector<Nat> out(a.size() + b.size() - 1, Nat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

inline std::vector<Nat> poly_det(const std::vector<std::vector<std::vector<Nat>>>& m) {
    const size_t dim = m.size();
    if (dim == 0) return {Nat(1)};
    if (dim == 1) return m[0][0];
    std::vector<Nat> acc{Nat(0)};
    for (size_t j = 0; j < dim; ++j) {
        std::vector<std::vector<std::vector<Nat>>> sub;
        sub.reserve(dim - 1);
        for (size_t r = 1; r < dim; ++r) {
            std::vector<std::vector<Nat>> row;
            row.reserve(dim - 1);
            for (size_t c = 0; c < dim; ++c)
                if (c != j) row.push_back(m[r][c]);
            sub.push_back(std::move(row));
        }
        std::vector<Nat> term = poly_mul(m[0][j], poly_det(sub));
        if (j % 2 == 1)
            for (Nat& v : term) v = -v;
        acc = poly_add(acc, term);
    }
    return acc;
}

// det(x I - A) over the integers, via polynomial-entry Laplace expansion.
// Structurally independent of the Berkowitz implementation under test.
inline std::vector<Nat> int_char_poly(const std::vector<std::vector<Nat>>& a) {
    const size_t dim = a.size();
    std::vector<std::vector<std::vector<Nat>>> m(dim,
                                                 std::vector<std::vector<Nat>>(dim));
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < dim; ++j) {
            if (i == j)
                m[i][j] = {-a[i][j], Nat(1)};
            else
                m[i][j] = {-a[i][j]};
        }
    std::vector<Nat> cp = poly_det(m);
    cp.resize(dim + 1, Nat(0));
    return cp;
}

// F(A, b) = Res(f(x), f(bx)) over the exact integers.
inline Nat int_resultant_invariant(const std::vector<std::vector<Nat>>& a, const Nat& b) {
    const std::vector<Nat> f = int_char_poly(a);
    std::vector<Nat> g;
    g.reserve(f.size());
    Nat bk = 1;
    for (const Nat& c : f) {
        g.push_back(c * bk);
        bk *= b;
    }
    return int_resultant(f, g);
}

inline Nat mod_reduce(Nat v, const Nat& modulus) {
    v %= modulus;
    if (v < 0) v += modulus;
    return v;
}

// Smallest N such that no root of unity zeta != 1 living in a degree <= m
// extension of Q_p has v((zeta-1)^m) >= N. Prime-to-p torsion contributes a
// unit zeta - 1; zeta_{p^k} enters iff phi(p^k) <= m and contributes
// valuation m/phi(p^k).
inline unsigned threshold_oracle(unsigned m, uint64_t p) {
    unsigned best = 0;
    Nat phi = p - 1;  // phi(p^k), starting at k = 1
    while (phi <= m) {
        best = std::max(best, static_cast<unsigned>((Nat(m) / phi).convert_to<unsigned>()));
        phi *= p;
    }
    return best + 1;
}

// Reference prime generator by trial division only.
inline std::vector<uint64_t> trial_division_primes(std::size_t count, uint64_t start = 2) {
    std::vector<uint64_t> out;
    for (uint64_t v = std::max<uint64_t>(2, start); out.size() < count; ++v) {
        bool prime = v >= 2;
        for (uint64_t d = 2; d * d <= v; ++d)
            if (v % d == 0) {
                prime = false;
                break;
            }
        if (prime) out.push_back(v);
    }
    return out;
}

inline double chi_square(const std::vector<uint64_t>& observed, double expected) {
    double stat = 0;
    for (uint64_t o : observed) {
        const double d = static_cast<double>(o) - expected;
        stat += d * d / expected;
    }
    return stat;
}

}  // namespace oracles
