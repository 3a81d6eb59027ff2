#pragma once

#include <cstddef>
#include <string>

namespace zenochain {

// Full experiment configuration for the nested chain: an outer chain of
// outer_count splitters whose M - 1 interferometers each carry an inner chain
// of inner_count splitters as their right arm.
//
// kappa1, kappa2, kappa3 are the per-segment intensity dissipations of the
// left (outer chain), middle (inner chain, sender side) and right (inner
// chain, channel side) path groups.
struct ProtocolParams
{
    std::size_t outer_count = 1;
    std::size_t inner_count = 1;
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double kappa3 = 0.0;
    bool bob_blocks = false;

    // Blocking the channel-side paths is total absorption there. The supplied
    // kappa3 is kept for reporting only.
    double effective_kappa3() const { return bob_blocks ? 1.0 : kappa3; }

    double outer_angle() const;
    double inner_angle() const;

    // Throws std::invalid_argument on zero counts or fractions outside [0, 1].
    void validate() const;

    std::string describe() const;

    friend bool operator==(const ProtocolParams&, const ProtocolParams&) = default;
};

// Splitter angle pi / (2 count) for a chain of `count` splitters.
double chain_angle(std::size_t count);

} // namespace zenochain
