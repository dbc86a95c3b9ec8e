#pragma once

/**
 * Exact enumeration of ramification loci inside matrix groups mod p^n.
 *
 * A SubgroupSpec selects one of the supported open-image models:
 *   FullGL(m)     - all of GL_m(Z/p^n); the GL_1 coordinate b is supplied
 *                   externally per count.
 *   DetCoupled(m) - pairs (A, det A): determinant equals the cyclotomic
 *                   coordinate.
 *   ProductGL1(m) - pairs (A, b) with b an independent unit coordinate.
 * Any of these may be restricted to the congruence kernel of elements
 * congruent to the identity mod p^k (k < n).
 *
 * Counting walks a row-major odometer over the matrix entries, filters by
 * unit determinant and congruence constraints, and tests the resultant
 * criterion F(A, b) == 0 mod p^n. Elements whose b is congruent to 1 mod p
 * are tallied separately (excluded_b1) and never enter the locus: F vanishes
 * on them for the trivial reason that f(x) and f(bx) agree mod p, which
 * would mask the genuine decay of the locus ratio.
 */

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ramlocus/matrix.hpp"

namespace ramlocus {

enum class GroupKind { full_gl, det_coupled, product_gl1 };

struct SubgroupSpec {
    GroupKind kind = GroupKind::det_coupled;
    unsigned m = 2;
    unsigned congruence = 0;  // k >= 1 restricts to elements == identity mod p^k

    unsigned dimension() const;  // m^2, or m^2 + 1 for ProductGL1

    // "fullgl2", "detcoupled2", "productgl13", optionally "@k" for the
    // congruence kernel, e.g. "detcoupled2@1".
    static SubgroupSpec parse(const std::string& text);
    std::string str() const;
};

// |GL_m(Z/p^n)| = p^(m^2 (n-1)) * prod_{i<m} (p^m - p^i)
Nat gl_group_size(unsigned m, uint64_t p, unsigned n);

// Element count of the spec'd group at level n; validates congruence < n.
Nat group_size(const SubgroupSpec& spec, uint64_t p, unsigned n);

// Streams each group element exactly once in deterministic row-major
// odometer order. The second callback argument is the coupled GL_1
// coordinate (det A or the independent b), or nullptr for FullGL.
// Throws TooLarge when the predicted size exceeds the budget.
void enumerate_group(const SubgroupSpec& spec, const Ring& ring, uint64_t budget,
                     const std::function<void(const Matrix&, const Residue*)>& fn);

struct LocusRecord {
    unsigned n = 0;
    Nat group_size;
    Nat locus_size;
    Nat excluded_b1_size;
    Rational ratio;  // locus_size / group_size, exact
};

// One exact count at the ring's level. FullGL requires fixed_b (the external
// GL_1 value); the other kinds forbid it. workers > 1 partitions the leading
// entry's range; counts merge by addition, so the result is deterministic.
LocusRecord count_locus(const SubgroupSpec& spec, const Ring& ring,
                        const std::optional<Nat>& fixed_b, uint64_t budget,
                        unsigned workers = 1);

struct LocusReport {
    uint64_t p = 0;
    unsigned m = 0;
    SubgroupSpec spec;
    unsigned dimension = 0;
    std::optional<Nat> fixed_b;
    std::vector<LocusRecord> series;
    std::optional<double> fitted_delta;
    bool truncated = false;         // TooLarge hit before n_to
    unsigned truncated_level = 0;   // first level over budget, when truncated
};

LocusReport locus_series(const SubgroupSpec& spec, uint64_t p, unsigned n_from, unsigned n_to,
                         const std::optional<Nat>& fixed_b, uint64_t budget,
                         unsigned workers = 1);

// Least-squares slope of log_p(ratio) against n over the levels with nonzero
// locus; returns delta-hat = -slope. Throws DegenerateFit with fewer than two
// usable levels.
double decay_fit(const std::vector<LocusRecord>& series, uint64_t p);

struct SliceCount {
    Nat slice_size;
    Nat locus_size;   // elements of the slice with F(A, b) == 0
    bool degenerate;  // b == 1 mod p
};

// Exact count over the b == b_value slice of the spec'd group. Throws
// EmptySlice when a congruence constraint makes the slice empty, TooLarge
// when the underlying enumeration exceeds the budget.
SliceCount count_slice(const SubgroupSpec& spec, const Ring& ring, const Residue& b_value,
                       uint64_t budget);

inline constexpr uint64_t kDefaultBudget = 100000000;  // 10^8 elements

}  // namespace ramlocus
