#include "txlife/random.hpp"

#include <cmath>
#include <numbers>

#include "txlife/errors.hpp"

namespace txlife {

double PortableRng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double PortableRng::normal(double mean, double stddev) {
    // 1 - u keeps the log argument in (0, 1].
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    return mean + stddev * z;
}

std::uint64_t PortableRng::below(std::uint64_t bound) {
    if (bound == 0) throw UsageError("below(0)");
    const std::uint64_t limit = (~std::uint64_t{0} / bound) * bound;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % bound;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + (stream + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace txlife
