#include "zonolab/rng.hpp"

#include <cmath>

namespace zonolab {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : base_(mix64(seed ^ mix64(stream * kGolden + 0x1234567890ABCDEFULL))) {}

std::uint64_t CounterRng::next_u64() {
    return mix64(base_ + kGolden * ++ctr_);
}

double CounterRng::next_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double CounterRng::next_gaussian() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    double u1 = next_unit();
    double u2 = next_unit();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
}

Vec CounterRng::gaussian_vec(int d) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v(i) = next_gaussian();
    return v;
}

Vec CounterRng::unit_vec(int d) {
    for (;;) {
        Vec v = gaussian_vec(d);
        double n = v.norm();
        if (n > 1e-12) return v / n;
    }
}

}  // namespace zonolab
