#pragma once

/**
 * Exact linear and polynomial algebra over Z/p^n.
 *
 * The coefficient ring has zero divisors, so every determinant-like
 * computation here is division-free: Laplace expansion for small matrices,
 * the Samuelson-Berkowitz recursion for characteristic polynomials and
 * larger determinants, and the resultant as a Sylvester-matrix determinant.
 *
 * Polynomials keep their *nominal* degree: substituting x -> b*x can make
 * the leading coefficient a zero divisor or zero, and the Sylvester matrix
 * must still be formed at the nominal degrees for the invariant
 * F(A, b) = Res(f_A(x), f_A(bx)) to stay a polynomial function of the
 * entries of A and of b.
 */

#include <cstdint>
#include <string>
#include <vector>

#include "ramlocus/ring.hpp"

namespace ramlocus {

// Dense polynomial with a fixed nominal degree; coefficients ascending,
// coeff(k) is the coefficient of x^k. Trailing (leading-power) zeros are
// meaningful and never trimmed.
class Poly {
public:
    Poly(const Ring& ring, std::vector<Residue> ascending_coeffs);
    static Poly zero(const Ring& ring, unsigned nominal_degree);

    const Ring& ring() const { return *ring_; }
    unsigned nominal_degree() const { return static_cast<unsigned>(c_.size()) - 1; }
    const Residue& coeff(unsigned k) const { return c_[k]; }
    const std::vector<Residue>& coeffs() const { return c_; }
    bool monic() const { return c_.back().is_one(); }

    bool operator==(const Poly& rhs) const;
    bool operator!=(const Poly& rhs) const { return !(*this == rhs); }

    Poly reduce_to(const Ring& target) const;
    std::string str() const;

private:
    const Ring* ring_;
    std::vector<Residue> c_;
};

class Matrix {
public:
    Matrix(const Ring& ring, unsigned m);  // zero matrix
    static Matrix identity(const Ring& ring, unsigned m);
    static Matrix from_values(const Ring& ring, unsigned m, const std::vector<Nat>& row_major);
    static Matrix diagonal(const Ring& ring, const std::vector<Residue>& diag);

    const Ring& ring() const { return *ring_; }
    unsigned dim() const { return m_; }
    const Residue& at(unsigned i, unsigned j) const { return e_[i * m_ + j]; }
    void set(unsigned i, unsigned j, const Residue& v);

    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix pow(uint64_t e) const;

    Residue trace() const;
    Residue det() const;        // Laplace for m <= 4, Berkowitz beyond
    Matrix inverse() const;     // adjugate * det^-1; throws NonInvertible
    bool is_zero() const;

    bool operator==(const Matrix& rhs) const;
    bool operator!=(const Matrix& rhs) const { return !(*this == rhs); }

    std::string str() const;

private:
    void check_compatible(const Matrix& rhs) const;

    const Ring* ring_;
    unsigned m_;
    std::vector<Residue> e_;  // row-major
};

// Monic characteristic polynomial of A, division-free (Samuelson-Berkowitz).
Poly char_poly(const Matrix& a);

// (A - I)^m == 0
bool is_unipotent(const Matrix& a);

// f(bx): coefficient of x^k multiplied by b^k; nominal degree preserved.
Poly substitute_bx(const Poly& f, const Residue& b);

// Determinant of the formal Sylvester matrix at the nominal degrees.
Residue resultant(const Poly& f, const Poly& g);

// F(A, b) = Res(f_A(x), f_A(bx)); vanishes identically at b = 1.
Residue resultant_invariant(const Matrix& a, const Residue& b);

}  // namespace ramlocus
