#pragma once

#include "zenochain/params.hpp"

#include <array>
#include <cstddef>
#include <variant>
#include <vector>

namespace zenochain {

// Explicit path-segment model of the nested chain, evaluated element by
// element without any closed-form matrix powers. Used as the ground truth
// for the protocol coefficients and as the only source of channel exposure.

enum class PathGroup { left = 0, middle = 1, right = 2 };

struct DetectorId
{
    enum class Kind { d1, d2, d3 };
    Kind kind = Kind::d1;
    // 1-based inner chain index for D3i, unused otherwise.
    std::size_t index = 0;
};

struct Splitter
{
    std::size_t mode_a;
    std::size_t mode_b;
    double theta;
};

// Path segment of `group` with intensity dissipation kappa.
struct Attenuator
{
    std::size_t mode;
    double kappa;
    PathGroup group;
};

// Fully absorbing segment (an inserted block, or a segment with kappa = 1).
struct Block
{
    std::size_t mode;
    PathGroup group;
};

// Terminal detector; consumes the mode amplitude. channel_side marks a
// detector whose feed segment runs along the channel-side path line.
struct DetectorTap
{
    std::size_t mode;
    DetectorId detector;
    bool channel_side;
};

using NetworkElement = std::variant<Splitter, Attenuator, Block, DetectorTap>;

struct ModeNetwork
{
    std::size_t mode_count = 0;
    std::size_t input_mode = 0;
    std::size_t inner_chain_count = 0;
    std::vector<NetworkElement> elements;

    std::size_t splitter_count() const;
};

struct PropagationTrace
{
    double d1_amplitude = 0.0;
    double d2_amplitude = 0.0;
    // Indexed by inner chain, i = 1 .. M-1 stored at [i - 1].
    std::vector<double> d3_amplitudes;
    // Dissipated probability per PathGroup.
    std::array<double, 3> dissipation{};
    // Absorbed by channel-side blocks. A Block on any other group counts as
    // that group's dissipation.
    double blocked = 0.0;
    // Squared amplitude entering every channel-side segment, counting the
    // channel-side detector feeds as segments.
    double channel_entering = 0.0;
    // Amplitudes left on each mode after the last element.
    std::vector<double> residual;

    double d1() const { return d1_amplitude * d1_amplitude; }
    double d2() const { return d2_amplitude * d2_amplitude; }
    double d3_total() const;
    double dissipation_total() const { return dissipation[0] + dissipation[1] + dissipation[2]; }
    double residual_norm2() const;
    // Detected + dissipated + blocked + residual; equals the input energy.
    double total() const;

    friend bool operator==(const PropagationTrace&, const PropagationTrace&) = default;
};

enum class ExposureConvention {
    // Every channel-side segment entry, including the inner-chain output
    // segments that feed D3i.
    entering_probability,
    // Blocked probability plus channel-side dissipation.
    absorbed_only,
};

// Lays out the outer chain on modes 0 (left) / 1 (middle) and reuses mode 2
// for the channel-side arm of each inner chain in turn. Channel-side segments
// become Blocks when the effective kappa3 is 1.
ModeNetwork build_network(const ProtocolParams& params);

// Single feed-forward pass with `input_amplitude` on the input mode.
// Throws std::invalid_argument for out-of-range mode indices.
PropagationTrace propagate(const ModeNetwork& network, double input_amplitude = 1.0);

double channel_exposure(const PropagationTrace& trace, ExposureConvention convention);

} // namespace zenochain
