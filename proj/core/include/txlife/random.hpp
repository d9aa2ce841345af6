#pragma once

#include <cstdint>
#include <random>

namespace txlife {

/// Seedable generator whose output is identical on every conforming
/// platform: std::mt19937_64 (its sequence is fixed by the standard) with
/// hand-written transforms, because std:: distributions are
/// implementation-defined.
///
///   uniform():  top 53 bits of one draw scaled by 2^-53, in [0, 1)
///   normal():   Box-Muller, cos branch only, two draws per variate
///   below(n):   rejection sampling on the top bits, unbiased
class PortableRng {
public:
    explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    double uniform();
    double normal(double mean = 0.0, double stddev = 1.0);
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer over (seed + stream), for deriving per-generator seeds
/// from one user seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace txlife
