#ifndef SPPM_RNG_HPP
#define SPPM_RNG_HPP

#include <cmath>
#include <cstdint>

#include <Eigen/Core>

namespace sppm {

/// Mixes two 64-bit values into a fresh seed (splitmix64 finalizer).
/// Used to derive independent deterministic streams from (seed, index) pairs.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

/// Small deterministic generator (splitmix64 stream).
///
/// Every draw consumes a fixed number of raw words, so sequences are
/// prefix-stable: extending a sample count never changes earlier samples.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = state_;
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebULL;
        x ^= x >> 31;
        return x;
    }

    /// Uniform in [0, 1).
    double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    /// Standard normal via Box-Muller; consumes exactly two words.
    double normal() {
        double u1 = 1.0 - u01();  // (0, 1]
        double u2 = u01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    /// Uniform direction on the unit sphere in R^n.
    Eigen::VectorXd on_unit_sphere(int n) {
        Eigen::VectorXd v(n);
        double nrm = 0.0;
        do {
            for (int i = 0; i < n; ++i) v[i] = normal();
            nrm = v.norm();
        } while (nrm == 0.0);
        return v / nrm;
    }

    /// Uniform point in the closed unit ball in R^n.
    Eigen::VectorXd in_unit_ball(int n) {
        Eigen::VectorXd dir = on_unit_sphere(n);
        double r = std::pow(u01(), 1.0 / n);
        return r * dir;
    }

    /// Uniform point in the box [lo, hi]^n.
    Eigen::VectorXd in_box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
        Eigen::VectorXd v(lo.size());
        for (int i = 0; i < lo.size(); ++i) v[i] = uniform(lo[i], hi[i]);
        return v;
    }

private:
    std::uint64_t state_;
};

}  // namespace sppm

#endif  // SPPM_RNG_HPP
