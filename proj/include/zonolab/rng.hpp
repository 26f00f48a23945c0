#pragma once

#include "zonolab/geometry.hpp"

#include <cstdint>

namespace zonolab {

/// Version string recorded in every report that consumed randomness.
/// counter-based splitmix64 stream hashing + Box-Muller Gaussians.
inline constexpr const char* kRngVersion = "csm64-bm/1";

/// Counter-based generator: draw i of stream s under seed q is a pure
/// function of (q, s, i), so substreams can be handed to workers by index
/// and replayed bit-identically regardless of scheduling.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();
    double next_unit();      // (0, 1]
    double next_gaussian();  // standard normal, Box-Muller pair cached
    Vec gaussian_vec(int d);
    Vec unit_vec(int d);  // uniform on S^{d-1}

private:
    std::uint64_t base_;
    std::uint64_t ctr_ = 0;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace zonolab
