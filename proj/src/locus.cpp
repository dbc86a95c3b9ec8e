#include "ramlocus/locus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "ramlocus/tame.hpp"

namespace ramlocus {

namespace {

uint64_t pow_u64(uint64_t base, unsigned exp) {
    uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

// Arithmetic progression base + step*j, j in [0, count): the values one
// matrix entry runs over under a congruence constraint.
struct CoordDomain {
    uint64_t base;
    uint64_t step;
    uint64_t count;
};

CoordDomain entry_domain(const Ring& ring, unsigned k, bool diagonal) {
    if (k == 0) return {0, 1, ring.modulus_u64()};
    const uint64_t pk = pow_u64(ring.p(), k);
    return {diagonal ? uint64_t{1} : uint64_t{0}, pk, pow_u64(ring.p(), ring.n() - k)};
}

// Calls fn(A, det A) for every congruence-constrained matrix with unit
// determinant whose leading entry index lies in [lead_lo, lead_hi).
template <class Fn>
void scan_matrices(const SubgroupSpec& spec, const Ring& ring, uint64_t lead_lo, uint64_t lead_hi,
                   Fn&& fn) {
    const unsigned m = spec.m;
    const unsigned mm = m * m;
    const unsigned k = spec.congruence;

    std::vector<CoordDomain> dom;
    dom.reserve(mm);
    for (unsigned i = 0; i < mm; ++i) dom.push_back(entry_domain(ring, k, i % (m + 1) == 0));
    if (lead_lo >= lead_hi) return;

    std::vector<uint64_t> idx(mm, 0);
    idx[0] = lead_lo;
    Matrix a(ring, m);
    for (unsigned i = 0; i < mm; ++i)
        a.set(i / m, i % m, Residue(ring, dom[i].base + idx[i] * dom[i].step));

    for (;;) {
        Residue d = a.det();
        if (d.is_unit()) fn(a, d);

        // row-major odometer, innermost entry fastest
        unsigned c = mm;
        bool advanced = false;
        while (c-- > 0) {
            ++idx[c];
            const uint64_t limit = (c == 0) ? lead_hi : dom[c].count;
            if (idx[c] < limit) {
                a.set(c / m, c % m, Residue(ring, dom[c].base + idx[c] * dom[c].step));
                advanced = true;
                break;
            }
            if (c == 0) break;
            idx[c] = 0;
            a.set(c / m, c % m, Residue(ring, dom[c].base));
        }
        if (!advanced) break;
    }
}

// Unit values of the independent GL_1 coordinate (== 1 mod p^k when k >= 1).
template <class Fn>
void for_each_unit_b(const Ring& ring, unsigned k, Fn&& fn) {
    if (k == 0) {
        const uint64_t mod = ring.modulus_u64();
        for (uint64_t v = 1; v < mod; ++v)
            if (v % ring.p() != 0) fn(Residue(ring, v));
    } else {
        const CoordDomain d = entry_domain(ring, k, true);
        for (uint64_t j = 0; j < d.count; ++j) fn(Residue(ring, d.base + j * d.step));
    }
}

Nat unit_b_count(uint64_t p, unsigned n, unsigned k) {
    if (k == 0) return pow_nat(p, n - 1) * (p - 1);
    return pow_nat(p, n - k);
}

struct Tally {
    uint64_t group = 0;
    uint64_t locus = 0;
    uint64_t excluded = 0;
};

bool b_is_degenerate(const Residue& b) { return b.value_u64() % b.ring().p() == 1; }

Tally tally_partition(const SubgroupSpec& spec, const Ring& ring,
                      const std::optional<Residue>& fixed_b, uint64_t lo, uint64_t hi) {
    Tally t;
    switch (spec.kind) {
        case GroupKind::det_coupled:
            scan_matrices(spec, ring, lo, hi, [&](const Matrix& a, const Residue& d) {
                ++t.group;
                if (b_is_degenerate(d))
                    ++t.excluded;
                else if (general_ramified_criterion(a, d))
                    ++t.locus;
            });
            break;
        case GroupKind::full_gl: {
            const bool degenerate = b_is_degenerate(*fixed_b);
            scan_matrices(spec, ring, lo, hi, [&](const Matrix& a, const Residue&) {
                ++t.group;
                if (degenerate)
                    ++t.excluded;
                else if (general_ramified_criterion(a, *fixed_b))
                    ++t.locus;
            });
            break;
        }
        case GroupKind::product_gl1:
            scan_matrices(spec, ring, lo, hi, [&](const Matrix& a, const Residue&) {
                // reuse the char poly of A across the whole b-range
                const Poly f = char_poly(a);
                for_each_unit_b(ring, spec.congruence, [&](const Residue& b) {
                    ++t.group;
                    if (b_is_degenerate(b))
                        ++t.excluded;
                    else if (resultant(f, substitute_bx(f, b)).is_zero())
                        ++t.locus;
                });
            });
            break;
    }
    return t;
}

}  // namespace

unsigned SubgroupSpec::dimension() const {
    return kind == GroupKind::product_gl1 ? m * m + 1 : m * m;
}

SubgroupSpec SubgroupSpec::parse(const std::string& text) {
    std::string s;
    for (char c : text) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));

    SubgroupSpec spec;
    std::string rest;
    if (s.rfind("productgl1", 0) == 0) {
        spec.kind = GroupKind::product_gl1;
        rest = s.substr(10);
    } else if (s.rfind("detcoupled", 0) == 0) {
        spec.kind = GroupKind::det_coupled;
        rest = s.substr(10);
    } else if (s.rfind("fullgl", 0) == 0) {
        spec.kind = GroupKind::full_gl;
        rest = s.substr(6);
    } else {
        throw BadParam("unknown subgroup spec '" + text + "'");
    }

    const auto at = rest.find('@');
    std::string mpart = rest.substr(0, at);
    std::string kpart = at == std::string::npos ? "" : rest.substr(at + 1);
    try {
        size_t used = 0;
        spec.m = static_cast<unsigned>(std::stoul(mpart, &used));
        if (used != mpart.size() || spec.m < 1) throw std::invalid_argument("m");
        if (!kpart.empty()) {
            spec.congruence = static_cast<unsigned>(std::stoul(kpart, &used));
            if (used != kpart.size()) throw std::invalid_argument("k");
        }
    } catch (const std::exception&) {
        throw BadParam("cannot parse subgroup spec '" + text + "'");
    }
    return spec;
}

std::string SubgroupSpec::str() const {
    std::string base;
    switch (kind) {
        case GroupKind::full_gl: base = "fullgl"; break;
        case GroupKind::det_coupled: base = "detcoupled"; break;
        case GroupKind::product_gl1: base = "productgl1"; break;
    }
    base += std::to_string(m);
    if (congruence > 0) base += "@" + std::to_string(congruence);
    return base;
}

Nat gl_group_size(unsigned m, uint64_t p, unsigned n) {
    if (m < 1 || n < 1) throw BadParam("gl_group_size: need m >= 1, n >= 1");
    Nat size = pow_nat(p, m * m * (n - 1));
    const Nat pm = pow_nat(p, m);
    for (unsigned i = 0; i < m; ++i) size *= pm - pow_nat(p, i);
    return size;
}

Nat group_size(const SubgroupSpec& spec, uint64_t p, unsigned n) {
    if (spec.congruence >= n && spec.congruence != 0)
        throw BadParam("group_size: congruence level k = " + std::to_string(spec.congruence) +
                       " must be < n = " + std::to_string(n));
    const unsigned k = spec.congruence;
    Nat base = (k == 0) ? gl_group_size(spec.m, p, n) : pow_nat(p, spec.m * spec.m * (n - k));
    if (spec.kind == GroupKind::product_gl1) base *= unit_b_count(p, n, k);
    return base;
}

void enumerate_group(const SubgroupSpec& spec, const Ring& ring, uint64_t budget,
                     const std::function<void(const Matrix&, const Residue*)>& fn) {
    const Nat predicted = group_size(spec, ring.p(), ring.n());
    if (predicted > budget || !ring.small())
        throw TooLarge("enumerate_group: predicted size " + predicted.str() + " exceeds budget " +
                           std::to_string(budget),
                       predicted);
    const uint64_t lead = entry_domain(ring, spec.congruence, true).count;
    switch (spec.kind) {
        case GroupKind::full_gl:
            scan_matrices(spec, ring, 0, lead,
                          [&](const Matrix& a, const Residue&) { fn(a, nullptr); });
            break;
        case GroupKind::det_coupled:
            scan_matrices(spec, ring, 0, lead,
                          [&](const Matrix& a, const Residue& d) { fn(a, &d); });
            break;
        case GroupKind::product_gl1:
            scan_matrices(spec, ring, 0, lead, [&](const Matrix& a, const Residue&) {
                for_each_unit_b(ring, spec.congruence, [&](const Residue& b) { fn(a, &b); });
            });
            break;
    }
}

LocusRecord count_locus(const SubgroupSpec& spec, const Ring& ring,
                        const std::optional<Nat>& fixed_b, uint64_t budget, unsigned workers) {
    if (spec.kind == GroupKind::full_gl && !fixed_b)
        throw BadParam("count_locus: FullGL requires a fixed b value");
    if (spec.kind != GroupKind::full_gl && fixed_b)
        throw BadParam("count_locus: fixed b only applies to FullGL");

    const Nat predicted = group_size(spec, ring.p(), ring.n());
    if (predicted > budget || !ring.small())
        throw TooLarge("count_locus: predicted size " + predicted.str() + " exceeds budget " +
                           std::to_string(budget),
                       predicted);

    std::optional<Residue> fb;
    if (fixed_b) fb = ring.residue(*fixed_b);

    const uint64_t lead = entry_domain(ring, spec.congruence, true).count;
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(
                                                           std::min<uint64_t>(lead, 1u << 10))));

    std::vector<Tally> parts(workers);
    if (workers == 1) {
        parts[0] = tally_partition(spec, ring, fb, 0, lead);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            const uint64_t lo = lead * w / workers;
            const uint64_t hi = lead * (w + 1) / workers;
            pool.emplace_back(
                [&, w, lo, hi] { parts[w] = tally_partition(spec, ring, fb, lo, hi); });
        }
        for (auto& th : pool) th.join();
    }

    Tally total;
    for (const Tally& t : parts) {
        total.group += t.group;
        total.locus += t.locus;
        total.excluded += t.excluded;
    }
    if (Nat(total.group) != predicted)
        throw std::logic_error("count_locus: enumerated " + std::to_string(total.group) +
                               " elements, expected " + predicted.str());

    LocusRecord rec;
    rec.n = ring.n();
    rec.group_size = total.group;
    rec.locus_size = total.locus;
    rec.excluded_b1_size = total.excluded;
    rec.ratio = Rational(Nat(total.locus), Nat(total.group));
    return rec;
}

LocusReport locus_series(const SubgroupSpec& spec, uint64_t p, unsigned n_from, unsigned n_to,
                         const std::optional<Nat>& fixed_b, uint64_t budget, unsigned workers) {
    if (n_from < 1 || n_from > n_to) throw BadParam("locus_series: need 1 <= n_from <= n_to");
    LocusReport report;
    report.p = p;
    report.m = spec.m;
    report.spec = spec;
    report.dimension = spec.dimension();
    report.fixed_b = fixed_b;
    for (unsigned n = n_from; n <= n_to; ++n) {
        const Ring& ring = ring_of(p, n);
        try {
            report.series.push_back(count_locus(spec, ring, fixed_b, budget, workers));
        } catch (const TooLarge&) {
            report.truncated = true;
            report.truncated_level = n;
            break;
        }
    }
    try {
        report.fitted_delta = decay_fit(report.series, p);
    } catch (const DegenerateFit&) {
        report.fitted_delta.reset();
    }
    return report;
}

double decay_fit(const std::vector<LocusRecord>& series, uint64_t p) {
    std::vector<std::pair<double, double>> pts;
    for (const LocusRecord& rec : series) {
        if (rec.locus_size > 0)
            pts.emplace_back(static_cast<double>(rec.n),
                             log_rational(rec.ratio) / std::log(static_cast<double>(p)));
    }
    if (pts.size() < 2)
        throw DegenerateFit("decay_fit: need at least two levels with nonzero locus");
    double xm = 0, ym = 0;
    for (auto& [x, y] : pts) {
        xm += x;
        ym += y;
    }
    xm /= static_cast<double>(pts.size());
    ym /= static_cast<double>(pts.size());
    double num = 0, den = 0;
    for (auto& [x, y] : pts) {
        num += (x - xm) * (y - ym);
        den += (x - xm) * (x - xm);
    }
    if (den == 0) throw DegenerateFit("decay_fit: degenerate abscissae");
    return -num / den;
}

SliceCount count_slice(const SubgroupSpec& spec, const Ring& ring, const Residue& b_value,
                       uint64_t budget) {
    if (b_value.ring() != ring) throw RingMismatch("count_slice: b ring differs");
    if (!b_value.is_unit()) throw EmptySlice("count_slice: b is not a unit");
    if (spec.congruence > 0) {
        const uint64_t pk = pow_u64(ring.p(), spec.congruence);
        if (b_value.value_u64() % pk != 1)
            throw EmptySlice("count_slice: congruence level forces b == 1 mod p^k");
    }

    // the scan runs over the matrix part regardless of the slice
    SubgroupSpec scan_spec = spec;
    scan_spec.kind = GroupKind::det_coupled;
    const Nat scan_cost = group_size(scan_spec, ring.p(), ring.n());
    if (scan_cost > budget || !ring.small())
        throw TooLarge("count_slice: scan size " + scan_cost.str() + " exceeds budget " +
                           std::to_string(budget),
                       scan_cost);

    const uint64_t lead = entry_domain(ring, spec.congruence, true).count;
    uint64_t slice = 0, locus = 0;
    if (spec.kind == GroupKind::det_coupled) {
        scan_matrices(spec, ring, 0, lead, [&](const Matrix& a, const Residue& d) {
            if (d != b_value) return;
            ++slice;
            if (general_ramified_criterion(a, b_value)) ++locus;
        });
    } else {
        scan_matrices(spec, ring, 0, lead, [&](const Matrix& a, const Residue&) {
            ++slice;
            if (general_ramified_criterion(a, b_value)) ++locus;
        });
    }
    if (slice == 0) throw EmptySlice("count_slice: slice is empty");

    SliceCount out;
    out.slice_size = slice;
    out.locus_size = locus;
    out.degenerate = b_is_degenerate(b_value);
    return out;
}

}  // namespace ramlocus
