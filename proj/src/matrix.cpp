#include "ramlocus/matrix.hpp"

#include <sstream>

namespace ramlocus {

Poly::Poly(const Ring& ring, std::vector<Residue> ascending_coeffs)
    : ring_(&ring), c_(std::move(ascending_coeffs)) {
    if (c_.empty()) throw BadParam("Poly: empty coefficient sequence");
    for (const Residue& c : c_)
        if (c.ring() != ring) throw RingMismatch("Poly: coefficient ring differs from " + ring.str());
}

Poly Poly::zero(const Ring& ring, unsigned nominal_degree) {
    return Poly(ring, std::vector<Residue>(nominal_degree + 1, ring.zero()));
}

bool Poly::operator==(const Poly& rhs) const {
    return *ring_ == *rhs.ring_ && c_ == rhs.c_;
}

Poly Poly::reduce_to(const Ring& target) const {
    std::vector<Residue> out;
    out.reserve(c_.size());
    for (const Residue& c : c_) out.push_back(c.reduce_to(target));
    return Poly(target, std::move(out));
}

std::string Poly::str() const {
    std::ostringstream os;
    for (unsigned k = nominal_degree() + 1; k-- > 0;) {
        os << c_[k].value().str();
        if (k > 0) os << "*x^" << k << " + ";
    }
    os << " (mod " << ring_->modulus().str() << ")";
    return os.str();
}

Matrix::Matrix(const Ring& ring, unsigned m) : ring_(&ring), m_(m) {
    if (m < 1) throw BadParam("Matrix: dimension must be >= 1");
    e_.assign(static_cast<size_t>(m) * m, ring.zero());
}

Matrix Matrix::identity(const Ring& ring, unsigned m) {
    Matrix out(ring, m);
    for (unsigned i = 0; i < m; ++i) out.set(i, i, ring.one());
    return out;
}

Matrix Matrix::from_values(const Ring& ring, unsigned m, const std::vector<Nat>& row_major) {
    if (row_major.size() != static_cast<size_t>(m) * m)
        throw DimMismatch("from_values: expected " + std::to_string(m * m) + " entries");
    Matrix out(ring, m);
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j) out.set(i, j, ring.residue(row_major[i * m + j]));
    return out;
}

Matrix Matrix::diagonal(const Ring& ring, const std::vector<Residue>& diag) {
    Matrix out(ring, static_cast<unsigned>(diag.size()));
    for (unsigned i = 0; i < diag.size(); ++i) out.set(i, i, diag[i]);
    return out;
}

void Matrix::set(unsigned i, unsigned j, const Residue& v) {
    if (v.ring() != *ring_) throw RingMismatch("Matrix::set: entry ring differs");
    e_[i * m_ + j] = v;
}

void Matrix::check_compatible(const Matrix& rhs) const {
    if (*ring_ != *rhs.ring_) throw RingMismatch("matrix arithmetic across rings");
    if (m_ != rhs.m_) throw DimMismatch("matrix arithmetic across dimensions");
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    check_compatible(rhs);
    Matrix out(*ring_, m_);
    for (unsigned i = 0; i < m_; ++i) {
        for (unsigned j = 0; j < m_; ++j) {
            Residue acc = ring_->zero();
            for (unsigned k = 0; k < m_; ++k) acc = acc + at(i, k) * rhs.at(k, j);
            out.set(i, j, acc);
        }
    }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    check_compatible(rhs);
    Matrix out(*ring_, m_);
    for (unsigned i = 0; i < m_ * m_; ++i) out.e_[i] = e_[i] + rhs.e_[i];
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    check_compatible(rhs);
    Matrix out(*ring_, m_);
    for (unsigned i = 0; i < m_ * m_; ++i) out.e_[i] = e_[i] - rhs.e_[i];
    return out;
}

Matrix Matrix::pow(uint64_t e) const {
    Matrix r = identity(*ring_, m_);
    Matrix b = *this;
    while (e) {
        if (e & 1u) r = r * b;
        b = b * b;
        e >>= 1u;
    }
    return r;
}

Residue Matrix::trace() const {
    Residue acc = ring_->zero();
    for (unsigned i = 0; i < m_; ++i) acc = acc + at(i, i);
    return acc;
}

namespace {

// Laplace expansion along the first remaining row, tracking live columns by
// mask. Exponential, used only for m <= 4 and small Sylvester blocks.
Residue laplace_det(const Matrix& a, unsigned row, unsigned col_mask) {
    const Ring& R = a.ring();
    const unsigned m = a.dim();
    if (row == m) return R.one();
    Residue acc = R.zero();
    bool negate = false;
    for (unsigned j = 0; j < m; ++j) {
        if (!(col_mask & (1u << j))) continue;
        if (!a.at(row, j).is_zero()) {
            Residue sub = laplace_det(a, row + 1, col_mask & ~(1u << j));
            Residue term = a.at(row, j) * sub;
            acc = negate ? acc - term : acc + term;
        }
        negate = !negate;
    }
    return acc;
}

}  // namespace

Residue Matrix::det() const {
    if (m_ <= 4) return laplace_det(*this, 0, (1u << m_) - 1);
    // char_poly is monic of degree m; det = (-1)^m * constant coefficient
    Residue c0 = char_poly(*this).coeff(0);
    return (m_ % 2 == 0) ? c0 : -c0;
}

Matrix Matrix::inverse() const {
    Residue d = det();
    if (!d.is_unit())
        throw NonInvertible("inverse: det = " + d.str() + " is not a unit");
    Residue dinv = d.inv();
    Matrix out(*ring_, m_);
    if (m_ == 1) {
        out.set(0, 0, dinv);
        return out;
    }
    // adjugate: out[j][i] = (-1)^(i+j) * minor(i, j)
    Matrix sub(*ring_, m_ - 1);
    for (unsigned i = 0; i < m_; ++i) {
        for (unsigned j = 0; j < m_; ++j) {
            for (unsigned r = 0, rr = 0; r < m_; ++r) {
                if (r == i) continue;
                for (unsigned c = 0, cc = 0; c < m_; ++c) {
                    if (c == j) continue;
                    sub.set(rr, cc, at(r, c));
                    ++cc;
                }
                ++rr;
            }
            Residue cof = sub.det();
            if ((i + j) % 2 == 1) cof = -cof;
            out.set(j, i, cof * dinv);
        }
    }
    return out;
}

bool Matrix::is_zero() const {
    for (const Residue& v : e_)
        if (!v.is_zero()) return false;
    return true;
}

bool Matrix::operator==(const Matrix& rhs) const {
    return *ring_ == *rhs.ring_ && m_ == rhs.m_ && e_ == rhs.e_;
}

std::string Matrix::str() const {
    std::ostringstream os;
    os << "[";
    for (unsigned i = 0; i < m_; ++i) {
        os << "[";
        for (unsigned j = 0; j < m_; ++j) {
            os << at(i, j).value().str();
            if (j + 1 < m_) os << ",";
        }
        os << "]";
        if (i + 1 < m_) os << ",";
    }
    os << "]";
    return os.str();
}

Poly char_poly(const Matrix& a) {
    const Ring& R = a.ring();
    const unsigned m = a.dim();

    // Samuelson-Berkowitz: grow the char poly of leading principal
    // submatrices, multiplying by the Toeplitz column built from
    // (1, -a_rr, -(row . col), -(row . A . col), ...).
    std::vector<Residue> cp{R.one()};  // descending coefficients, starts as char poly of the 0x0 block
    for (unsigned r = 1; r <= m; ++r) {
        // column entries c[0..r]
        std::vector<Residue> col;
        col.reserve(r + 1);
        col.push_back(R.one());
        col.push_back(-a.at(r - 1, r - 1));
        if (r >= 2) {
            // v iterates C, A_{r-1} C, A_{r-1}^2 C, ...
            std::vector<Residue> v;
            v.reserve(r - 1);
            for (unsigned i = 0; i < r - 1; ++i) v.push_back(a.at(i, r - 1));
            for (unsigned k = 2; k <= r; ++k) {
                Residue dot = R.zero();
                for (unsigned i = 0; i < r - 1; ++i) dot = dot + a.at(r - 1, i) * v[i];
                col.push_back(-dot);
                if (k < r) {
                    std::vector<Residue> nv;
                    nv.reserve(r - 1);
                    for (unsigned i = 0; i < r - 1; ++i) {
                        Residue acc = R.zero();
                        for (unsigned j = 0; j < r - 1; ++j) acc = acc + a.at(i, j) * v[j];
                        nv.push_back(acc);
                    }
                    v = std::move(nv);
                }
            }
        }
        std::vector<Residue> next(r + 1, R.zero());
        for (unsigned i = 0; i <= r; ++i)
            for (unsigned j = 0; j < r && j <= i; ++j) next[i] = next[i] + col[i - j] * cp[j];
        cp = std::move(next);
    }

    std::vector<Residue> ascending(cp.rbegin(), cp.rend());
    return Poly(R, std::move(ascending));
}

bool is_unipotent(const Matrix& a) {
    Matrix n = a - Matrix::identity(a.ring(), a.dim());
    Matrix acc = n;
    for (unsigned k = 1; k < a.dim(); ++k) acc = acc * n;
    return acc.is_zero();
}

Poly substitute_bx(const Poly& f, const Residue& b) {
    if (b.ring() != f.ring()) throw RingMismatch("substitute_bx: b lives in a different ring");
    std::vector<Residue> out;
    out.reserve(f.nominal_degree() + 1);
    Residue bk = f.ring().one();
    for (unsigned k = 0; k <= f.nominal_degree(); ++k) {
        out.push_back(f.coeff(k) * bk);
        bk = bk * b;
    }
    return Poly(f.ring(), std::move(out));
}

Residue resultant(const Poly& f, const Poly& g) {
    if (f.ring() != g.ring()) throw RingMismatch("resultant: rings differ");
    const Ring& R = f.ring();
    const unsigned df = f.nominal_degree();
    const unsigned dg = g.nominal_degree();
    const unsigned size = df + dg;
    if (size == 0) return R.one();

    // dg shifted rows of f's descending coefficients, then df rows of g's.
    Matrix s(R, size);
    for (unsigned i = 0; i < dg; ++i)
        for (unsigned k = 0; k <= df; ++k) s.set(i, i + k, f.coeff(df - k));
    for (unsigned i = 0; i < df; ++i)
        for (unsigned k = 0; k <= dg; ++k) s.set(dg + i, i + k, g.coeff(dg - k));
    return s.det();
}

Residue resultant_invariant(const Matrix& a, const Residue& b) {
    if (b.ring() != a.ring()) throw RingMismatch("resultant_invariant: rings differ");
    Poly f = char_poly(a);
    return resultant(f, substitute_bx(f, b));
}

}  // namespace ramlocus
