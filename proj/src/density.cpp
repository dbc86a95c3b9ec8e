#include "ramlocus/density.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>
#include <unordered_set>

#include "ramlocus/tame.hpp"

namespace ramlocus {

namespace {

uint64_t pow_u64(uint64_t base, unsigned exp) {
    uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

uint64_t avalanche(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

std::vector<uint64_t> prime_stream(uint64_t start, std::size_t count,
                                   const std::vector<uint64_t>& skip) {
    std::vector<uint64_t> out;
    if (count == 0) return out;
    std::unordered_set<uint64_t> skipset(skip.begin(), skip.end());

    uint64_t bound = std::max<uint64_t>(1024, start + 64);
    for (;;) {
        std::vector<bool> composite(bound + 1, false);
        for (uint64_t i = 2; i * i <= bound; ++i) {
            if (composite[i]) continue;
            for (uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
        }
        out.clear();
        for (uint64_t v = std::max<uint64_t>(2, start); v <= bound && out.size() < count; ++v) {
            if (!composite[v] && !skipset.count(v)) out.push_back(v);
        }
        if (out.size() == count) return out;
        bound *= 2;
    }
}

uint64_t substream_seed(uint64_t seed, uint64_t q, uint64_t n) {
    uint64_t h = avalanche(seed ^ 0xD1B54A32D192ED03ull);
    h = avalanche(h ^ (q * 0x9E3779B97F4A7C15ull));
    h = avalanche(h ^ (n * 0xBF58476D1CE4E5B9ull));
    return h;
}

Matrix sample_frobenius(const SubgroupSpec& spec, const Ring& ring, uint64_t q, SplitMix64& rng) {
    if (!is_prime(q)) throw BadParam("sample_frobenius: q is not prime");
    if (q == ring.p()) throw BadParam("sample_frobenius: q must differ from p");
    if (!ring.small()) throw BadParam("sample_frobenius: precision too large for sampling");
    if (spec.congruence >= ring.n() && spec.congruence != 0)
        throw BadParam("sample_frobenius: congruence level must be < n");

    const Residue q_res = ring.residue(Nat(q));
    const unsigned k = spec.congruence;
    if (k > 0 && spec.kind != GroupKind::full_gl) {
        // the coupled coordinate must be == 1 mod p^k inside the kernel
        const uint64_t pk = pow_u64(ring.p(), k);
        if (q_res.value_u64() % pk != 1)
            throw EmptySlice("sample_frobenius: residue of q excluded by congruence level");
    }

    const unsigned m = spec.m;
    const uint64_t mod = ring.modulus_u64();
    const uint64_t pk = pow_u64(ring.p(), k);
    const uint64_t span = pow_u64(ring.p(), ring.n() - k);

    Matrix a(ring, m);
    for (;;) {
        for (unsigned i = 0; i < m; ++i) {
            for (unsigned j = 0; j < m; ++j) {
                uint64_t v;
                if (k == 0) {
                    v = rng.below(mod);
                } else {
                    v = (i == j ? 1 : 0) + pk * rng.below(span);
                }
                a.set(i, j, Residue(ring, v));
            }
        }
        const Residue d = a.det();
        if (!d.is_unit()) continue;
        if (spec.kind == GroupKind::det_coupled && d != q_res) continue;
        return a;
    }
}

namespace {

void run_level(const SimConfig& config, const std::vector<uint64_t>& primes, LevelTrace& level) {
    const Ring& ring = ring_of(config.p, level.n);
    const std::size_t n_primes = primes.size();
    level.flagged.assign(n_primes, 0);
    level.degenerate.assign(n_primes, 0);

    auto worker = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const uint64_t q = primes[i];
            const Residue q_res = ring.residue(Nat(q));
            if (q_res.value_u64() % ring.p() == 1) {
                level.degenerate[i] = 1;
                continue;
            }
            SplitMix64 rng(substream_seed(config.seed, q, level.n));
            const Matrix a = sample_frobenius(config.spec, ring, q, rng);
            level.flagged[i] = general_ramified_criterion(a, q_res) ? 1 : 0;
        }
    };

    const unsigned workers =
        std::max<unsigned>(1, std::min<unsigned>(config.workers,
                                                 static_cast<unsigned>(std::max<std::size_t>(
                                                     n_primes, 1))));
    if (workers == 1 || n_primes == 0) {
        worker(0, n_primes);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(worker, n_primes * w / workers, n_primes * (w + 1) / workers);
        for (auto& th : pool) th.join();
    }

    level.running.clear();
    level.running.reserve(n_primes);
    uint64_t flagged = 0, degenerate = 0;
    for (std::size_t i = 0; i < n_primes; ++i) {
        flagged += level.flagged[i];
        degenerate += level.degenerate[i];
        level.running.emplace_back(Nat(flagged), Nat(i + 1));
    }
    level.flagged_count = flagged;
    level.degenerate_count = degenerate;
    if (n_primes > 0) {
        const double p_hat = static_cast<double>(flagged) / static_cast<double>(n_primes);
        level.final_estimate = p_hat;
        level.ci95 = 1.96 * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n_primes));
    }

    if (config.exact_ref_budget > 0) {
        try {
            level.exact_reference =
                exact_mixture_reference(config.spec, ring, primes, config.exact_ref_budget);
        } catch (const TooLarge&) {
            level.exact_reference.reset();
        }
    }
}

}  // namespace

DensityTrace simulate_density(const SimConfig& config) {
    if (!is_prime(config.p)) throw BadParam("simulate_density: p is not prime");
    if (config.levels.empty()) throw BadParam("simulate_density: no levels given");

    std::vector<uint64_t> skip = config.skip;
    skip.push_back(config.p);

    DensityTrace trace;
    trace.primes = prime_stream(config.prime_start, config.prime_count, skip);
    trace.levels.reserve(config.levels.size());
    for (unsigned n : config.levels) {
        LevelTrace level;
        level.n = n;
        run_level(config, trace.primes, level);
        trace.levels.push_back(std::move(level));
    }
    return trace;
}

ConditionalRatio exact_conditional_ratio(const SubgroupSpec& spec, const Ring& ring,
                                         const Residue& q_residue, uint64_t budget) {
    const SliceCount slice = count_slice(spec, ring, q_residue, budget);
    ConditionalRatio out;
    out.ratio = Rational(slice.locus_size, slice.slice_size);
    out.degenerate = slice.degenerate;
    return out;
}

Rational exact_mixture_reference(const SubgroupSpec& spec, const Ring& ring,
                                 const std::vector<uint64_t>& primes, uint64_t budget) {
    if (primes.empty()) return Rational(0);
    std::map<uint64_t, uint64_t> residue_counts;
    for (uint64_t q : primes) ++residue_counts[ring.residue(Nat(q)).value_u64()];

    Rational mixture(0);
    for (const auto& [value, count] : residue_counts) {
        const Residue r(ring, value);
        if (value % ring.p() == 1) continue;  // degenerate residues are never flagged
        const ConditionalRatio cr = exact_conditional_ratio(spec, ring, r, budget);
        mixture += cr.ratio * Rational(Nat(count));
    }
    mixture /= Rational(Nat(primes.size()));
    return mixture;
}

}  // namespace ramlocus
