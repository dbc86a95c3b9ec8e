#pragma once

/**
 * Chebotarev-style Monte Carlo over a streamed prime sequence.
 *
 * Frobenius equidistribution is modeled as uniform sampling from the finite
 * group image, with the GL_1 coordinate pinned to q mod p^n (the cyclotomic
 * normalization). Sampling is rejection from uniform per-entry residues,
 * which is exactly uniform on the requested slice. Every prime gets its own
 * RNG substream derived by hashing (seed, q, n), so traces are
 * bit-reproducible and independent of worker partitioning.
 *
 * Primes with q == 1 mod p are recorded as degenerate and never flagged,
 * mirroring the locus-count exclusion of the vacuous b == 1 sheet.
 */

#include <cstdint>
#include <optional>
#include <vector>

#include "ramlocus/locus.hpp"

namespace ramlocus {

// Ascending primes >= start, excluding the skip set, sieve-generated.
std::vector<uint64_t> prime_stream(uint64_t start, std::size_t count,
                                   const std::vector<uint64_t>& skip);

// Deterministic 64-bit generator (splitmix64); identical on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform draw from [0, bound); rejection keeps it exact.
    uint64_t below(uint64_t bound) {
        const uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

private:
    uint64_t state_;
};

uint64_t substream_seed(uint64_t seed, uint64_t q, uint64_t n);

// Uniform sample from the slice {A in spec : coupled b == q mod p^n}.
// Throws EmptySlice when a congruence constraint excludes the residue of q.
Matrix sample_frobenius(const SubgroupSpec& spec, const Ring& ring, uint64_t q, SplitMix64& rng);

struct SimConfig {
    SubgroupSpec spec;
    uint64_t p = 3;
    std::vector<unsigned> levels;
    std::size_t prime_count = 0;
    uint64_t seed = 0;
    std::vector<uint64_t> skip;  // p itself is always skipped
    unsigned workers = 1;
    uint64_t exact_ref_budget = 0;  // 0 disables the exact enumeration reference
    uint64_t prime_start = 2;
};

struct LevelTrace {
    unsigned n = 0;
    std::vector<uint8_t> flagged;     // parallel to DensityTrace::primes
    std::vector<uint8_t> degenerate;  // q == 1 mod p
    std::vector<Rational> running;    // flagged-so-far / streamed-so-far
    uint64_t flagged_count = 0;
    uint64_t degenerate_count = 0;
    std::optional<double> final_estimate;  // absent when no primes streamed
    double ci95 = 0.0;
    std::optional<Rational> exact_reference;  // prime-weighted exact mixture
};

struct DensityTrace {
    std::vector<uint64_t> primes;
    std::vector<LevelTrace> levels;
};

DensityTrace simulate_density(const SimConfig& config);

struct ConditionalRatio {
    Rational ratio;   // exact fraction of the b == q slice lying in the locus
    bool degenerate;  // q == 1 mod p
};

// Delegates to locus counting over the slice.
ConditionalRatio exact_conditional_ratio(const SubgroupSpec& spec, const Ring& ring,
                                         const Residue& q_residue, uint64_t budget);

// Mixture of slice ratios weighted by the empirical residue frequencies of
// the given primes; degenerate residues contribute zero (never flagged).
Rational exact_mixture_reference(const SubgroupSpec& spec, const Ring& ring,
                                 const std::vector<uint64_t>& primes, uint64_t budget);

}  // namespace ramlocus
