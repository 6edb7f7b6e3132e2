#ifndef NSEDIT_RNG_HPP
#define NSEDIT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace nsedit {

/// splitmix64 mixing step; used to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed for the t-th derived stream of a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master ^ splitmix64(stream + 1));
}

/// Standard-normal sampler over mt19937_64 with an explicit Box-Muller
/// transform. Both pieces are fully specified, so sequences are
/// bit-identical for a given seed on any conforming platform
/// (std::normal_distribution is implementation-defined and would not be).
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0,1], u2 in [0,1).
        double u1 = 0.0;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * pi() * u2;
        spare_ = r * std::sin(angle);
        have_spare_ = true;
        return r * std::cos(angle);
    }

    double uniform01() {
        // 53-bit mantissa resolution in [0,1).
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

private:
    static constexpr double pi() { return 3.141592653589793238462643383279502884; }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace nsedit

#endif
