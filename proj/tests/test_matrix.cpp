#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "ramlocus/density.hpp"
#include "ramlocus/matrix.hpp"

using namespace ramlocus;

namespace {

Matrix mat(const Ring& r, unsigned m, std::vector<int64_t> vals) {
    std::vector<Nat> nat(vals.begin(), vals.end());
    return Matrix::from_values(r, m, nat);
}

// deterministic random invertible matrix
Matrix random_invertible(const Ring& r, unsigned m, SplitMix64& rng) {
    for (;;) {
        Matrix a(r, m);
        for (unsigned i = 0; i < m; ++i)
            for (unsigned j = 0; j < m; ++j)
                a.set(i, j, r.residue(Nat(rng.next() % 1000)));
        if (a.det().is_unit()) return a;
    }
}

std::vector<std::vector<Nat>> to_int_rows(const Matrix& a) {
    std::vector<std::vector<Nat>> rows(a.dim(), std::vector<Nat>(a.dim()));
    for (unsigned i = 0; i < a.dim(); ++i)
        for (unsigned j = 0; j < a.dim(); ++j) rows[i][j] = a.at(i, j).value();
    return rows;
}

}  // namespace

TEST_CASE("matrix multiplication") {
    const Ring& r9 = ring_of(3, 2);
    const Matrix a = mat(r9, 2, {1, 1, 0, 1});
    CHECK(Matrix::identity(r9, 2) * a == a);
    CHECK(a * a == mat(r9, 2, {1, 2, 0, 1}));
    const Matrix e = mat(r9, 2, {0, 1, 0, 0});
    CHECK((e * e).is_zero());
    CHECK_THROWS_AS(a * Matrix::identity(ring_of(3, 3), 2), RingMismatch);
    CHECK_THROWS_AS(a * Matrix::identity(r9, 3), DimMismatch);
}

TEST_CASE("matrix inverse") {
    const Ring& r9 = ring_of(3, 2);
    CHECK(Matrix::identity(r9, 2).inverse() == Matrix::identity(r9, 2));
    CHECK(mat(r9, 2, {1, 1, 0, 1}).inverse() == mat(r9, 2, {1, 8, 0, 1}));
    CHECK_THROWS_AS(mat(r9, 2, {3, 0, 0, 1}).inverse(), NonInvertible);

    SplitMix64 rng(11);
    for (unsigned m : {2u, 3u, 4u, 5u}) {
        const Matrix a = random_invertible(ring_of(5, 3), m, rng);
        CHECK(a * a.inverse() == Matrix::identity(ring_of(5, 3), m));
        CHECK(a.inverse() * a == Matrix::identity(ring_of(5, 3), m));
    }
}

TEST_CASE("trace and determinant") {
    const Ring& r25 = ring_of(5, 2);
    CHECK(Matrix::identity(r25, 2).trace() == r25.residue(2));
    CHECK(Matrix::identity(r25, 2).det() == r25.one());
    CHECK(mat(r25, 2, {1, 2, 3, 4}).det() == r25.residue(23));  // 4 - 6 = -2

    SplitMix64 rng(7);
    const Ring& r = ring_of(3, 3);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix a = random_invertible(r, 2, rng);
        const Matrix p = random_invertible(r, 2, rng);
        CHECK((p * a * p.inverse()).det() == a.det());
        const Matrix b = random_invertible(r, 2, rng);
        CHECK((a * b).det() == a.det() * b.det());
    }
}

TEST_CASE("determinant agrees with the exact-integer oracle for all kernel sizes") {
    SplitMix64 rng(23);
    const Ring& r = ring_of(7, 2);
    for (unsigned m = 1; m <= 6; ++m) {
        for (int trial = 0; trial < 10; ++trial) {
            Matrix a(r, m);
            std::vector<std::vector<Nat>> rows(m, std::vector<Nat>(m));
            for (unsigned i = 0; i < m; ++i)
                for (unsigned j = 0; j < m; ++j) {
                    const uint64_t v = rng.next() % 49;
                    a.set(i, j, r.residue(Nat(v)));
                    rows[i][j] = v;
                }
            CHECK(a.det().value() == oracles::mod_reduce(oracles::int_det(rows), r.modulus()));
        }
    }
}

TEST_CASE("characteristic polynomial basics") {
    const Ring& r9 = ring_of(3, 2);
    const Poly cp_id = char_poly(Matrix::identity(r9, 2));
    // (x-1)^2 = x^2 + (p^n - 2) x + 1
    CHECK(cp_id.coeff(2) == r9.one());
    CHECK(cp_id.coeff(1) == r9.residue(7));
    CHECK(cp_id.coeff(0) == r9.one());

    const Ring& r25 = ring_of(5, 2);
    const Poly cp = char_poly(mat(r25, 2, {1, 2, 3, 4}));  // x^2 + 20x + 23
    CHECK(cp.coeff(2) == r25.one());
    CHECK(cp.coeff(1) == r25.residue(20));
    CHECK(cp.coeff(0) == r25.residue(23));
}

TEST_CASE("char poly is conjugation invariant") {
    SplitMix64 rng(99);
    for (unsigned m : {2u, 3u}) {
        const Ring& r = ring_of(3, 3);
        for (int trial = 0; trial < 100; ++trial) {
            const Matrix a = random_invertible(r, m, rng);
            const Matrix p = random_invertible(r, m, rng);
            CHECK(char_poly(p * a * p.inverse()) == char_poly(a));
        }
    }
}

TEST_CASE("Berkowitz equals x^2 - tr x + det over all of GL2(Z/9)") {
    const Ring& r9 = ring_of(3, 2);
    for (uint64_t a = 0; a < 9; ++a)
        for (uint64_t b = 0; b < 9; ++b)
            for (uint64_t c = 0; c < 9; ++c)
                for (uint64_t d = 0; d < 9; ++d) {
                    const Matrix x = mat(r9, 2, {int64_t(a), int64_t(b), int64_t(c), int64_t(d)});
                    if (!x.det().is_unit()) continue;
                    const Poly cp = char_poly(x);
                    CHECK(cp.coeff(2) == r9.one());
                    CHECK(cp.coeff(1) == -x.trace());
                    CHECK(cp.coeff(0) == x.det());
                }
}

TEST_CASE("char poly matches the integer oracle for m = 3, 4") {
    SplitMix64 rng(5);
    const Ring& r = ring_of(5, 3);
    for (unsigned m : {3u, 4u}) {
        for (int trial = 0; trial < 20; ++trial) {
            Matrix a(r, m);
            std::vector<std::vector<Nat>> rows(m, std::vector<Nat>(m));
            for (unsigned i = 0; i < m; ++i)
                for (unsigned j = 0; j < m; ++j) {
                    const uint64_t v = rng.next() % 125;
                    a.set(i, j, r.residue(Nat(v)));
                    rows[i][j] = v;
                }
            const Poly cp = char_poly(a);
            const std::vector<Nat> expected = oracles::int_char_poly(rows);
            for (unsigned k = 0; k <= m; ++k)
                CHECK(cp.coeff(k).value() == oracles::mod_reduce(expected[k], r.modulus()));
        }
    }
}

TEST_CASE("unipotence test") {
    const Ring& r9 = ring_of(3, 2);
    CHECK(is_unipotent(mat(r9, 2, {1, 1, 0, 1})));
    CHECK(is_unipotent(Matrix::identity(r9, 2)));
    CHECK_FALSE(is_unipotent(mat(r9, 2, {1, 0, 0, 2})));
    // depth-1 fuzz: I + 3M squares to I mod 9
    CHECK(is_unipotent(mat(r9, 2, {4, 3, 6, 7})));
}

TEST_CASE("substitute_bx") {
    const Ring& r9 = ring_of(3, 2);
    const Poly f(r9, {r9.residue(-1), r9.zero(), r9.one()});  // x^2 - 1
    CHECK(substitute_bx(f, r9.one()) == f);

    const Poly g = substitute_bx(f, r9.residue(2));  // 4x^2 + 8
    CHECK(g.coeff(2) == r9.residue(4));
    CHECK(g.coeff(1) == r9.zero());
    CHECK(g.coeff(0) == r9.residue(8));
    CHECK(g.nominal_degree() == 2);

    // leading coefficient is b^m, even when b is a zero divisor
    const Poly h = substitute_bx(f, r9.residue(3));
    CHECK(h.coeff(2) == r9.zero());  // 3^2 = 9 = 0
    CHECK(h.nominal_degree() == 2);

    CHECK_THROWS_AS(substitute_bx(f, ring_of(3, 3).one()), RingMismatch);
}

TEST_CASE("resultant basics") {
    const Ring& r9 = ring_of(3, 2);
    // res(x-1, x+1) = det [[1, -1], [1, 1]] = 2
    const Poly f(r9, {r9.residue(-1), r9.one()});
    const Poly g(r9, {r9.one(), r9.one()});
    CHECK(resultant(f, g) == r9.residue(2));

    SplitMix64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Residue> cs;
        const unsigned deg = 1 + rng.next() % 3;
        for (unsigned i = 0; i <= deg; ++i) cs.push_back(r9.residue(Nat(rng.next() % 9)));
        const Poly h(r9, cs);
        CHECK(resultant(h, h).is_zero());
    }

    // degree-zero conventions
    const Poly c(r9, {r9.residue(2)});
    CHECK(resultant(c, c) == r9.one());                       // empty Sylvester matrix
    const Poly lin(r9, {r9.residue(5), r9.one()});
    CHECK(resultant(c, lin) == r9.residue(2));                // c^deg(g)
    CHECK(resultant(lin, c) == r9.residue(2));
}

TEST_CASE("resultant reduces the exact-integer resultant") {
    SplitMix64 rng(47);
    for (auto [p, n] : {std::pair<uint64_t, unsigned>{3, 2}, {5, 3}, {2, 6}}) {
        const Ring& r = ring_of(p, n);
        for (int trial = 0; trial < 100; ++trial) {
            const unsigned df = 1 + rng.next() % 3;
            const unsigned dg = 1 + rng.next() % 3;
            std::vector<Nat> fi, gi;
            std::vector<Residue> fr, gr;
            for (unsigned i = 0; i <= df; ++i) {
                const int64_t v = static_cast<int64_t>(rng.next() % 41) - 20;
                fi.emplace_back(v);
                fr.push_back(r.residue(Nat(v)));
            }
            for (unsigned i = 0; i <= dg; ++i) {
                const int64_t v = static_cast<int64_t>(rng.next() % 41) - 20;
                gi.emplace_back(v);
                gr.push_back(r.residue(Nat(v)));
            }
            const Residue got = resultant(Poly(r, fr), Poly(r, gr));
            CHECK(got.value() == oracles::mod_reduce(oracles::int_resultant(fi, gi), r.modulus()));
        }
    }
}

TEST_CASE("resultant invariant") {
    SplitMix64 rng(3);

    SUBCASE("F(A, 1) = 0 identically") {
        for (unsigned m : {2u, 3u}) {
            const Ring& r = ring_of(3, 3);
            for (int trial = 0; trial < 25; ++trial) {
                const Matrix a = random_invertible(r, m, rng);
                CHECK(resultant_invariant(a, r.one()).is_zero());
            }
        }
    }

    SUBCASE("frozen values") {
        const Ring& r125 = ring_of(5, 3);
        // Res((x-1)^2, (2x-1)^2) = 1
        CHECK(resultant_invariant(Matrix::identity(r125, 2), r125.residue(2)) == r125.one());
        // A = diag(1,3), b = 2: exact resultant -15, a nonzero value mod 125
        const Matrix a = Matrix::diagonal(r125, {r125.one(), r125.residue(3)});
        CHECK(resultant_invariant(a, r125.residue(2)) == r125.residue(110));
    }

    SUBCASE("eigenvalue ratio q forces vanishing") {
        const Ring& r125 = ring_of(5, 3);
        for (uint64_t q : {2ull, 3ull, 7ull, 13ull}) {
            for (int64_t beta : {1, -1}) {
                const Residue b = r125.residue(beta);
                const Matrix a = Matrix::diagonal(r125, {r125.residue(Nat(q)) * b, b});
                CHECK(resultant_invariant(a, r125.residue(Nat(q))).is_zero());
            }
        }
    }

    SUBCASE("conjugation invariance") {
        const Ring& r = ring_of(3, 2);
        for (int trial = 0; trial < 50; ++trial) {
            const Matrix a = random_invertible(r, 2, rng);
            const Matrix p = random_invertible(r, 2, rng);
            const Residue b = r.residue(Nat(rng.next() % 9));
            CHECK(resultant_invariant(p * a * p.inverse(), b) == resultant_invariant(a, b));
        }
    }
}

TEST_CASE("integer-lift compatibility of the invariant") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const uint64_t p = std::vector<uint64_t>{2, 3, 5, 7}[rng.next() % 4];
        const unsigned n = 1 + rng.next() % 4;
        const unsigned m = 2 + rng.next() % 2;
        const Ring& r = ring_of(p, n);
        std::vector<std::vector<Nat>> rows(m, std::vector<Nat>(m));
        Matrix a(r, m);
        for (unsigned i = 0; i < m; ++i)
            for (unsigned j = 0; j < m; ++j) {
                const int64_t v = static_cast<int64_t>(rng.next() % 101) - 50;
                rows[i][j] = v;
                a.set(i, j, r.residue(Nat(v)));
            }
        const int64_t bv = static_cast<int64_t>(rng.next() % 101) - 50;
        const Residue got = resultant_invariant(a, r.residue(Nat(bv)));
        const Nat expected = oracles::int_resultant_invariant(rows, Nat(bv));
        CHECK(got.value() == oracles::mod_reduce(expected, r.modulus()));
    }
}

TEST_CASE("matrix works over an arbitrary-precision ring") {
    const Ring& r = ring_of(2, 70);
    const Matrix a = mat(r, 2, {1, 1, 0, 1});
    CHECK(a.inverse() == Matrix::from_values(r, 2, {Nat(1), r.modulus() - 1, Nat(0), Nat(1)}));
    CHECK(char_poly(a).coeff(1) == r.residue(-2));
    CHECK(resultant_invariant(a, r.one()).is_zero());
}
