#pragma once

#include "zenochain/protocol.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zenochain {

enum class InputKind { single_photon, coherent };

// Input field. alpha is the (real) coherent amplitude and is ignored for a
// single photon, which always carries unit energy.
struct InputState
{
    InputKind kind = InputKind::single_photon;
    double alpha = 1.0;

    static InputState single_photon() { return {InputKind::single_photon, 1.0}; }
    static InputState coherent(double alpha) { return {InputKind::coherent, alpha}; }

    double energy() const { return kind == InputKind::single_photon ? 1.0 : alpha * alpha; }
};

// Output modes in order D1, D2, D3_1 .. D3_(M-1), reservoir.
struct OutputStateSummary
{
    InputKind kind = InputKind::single_photon;
    std::vector<std::string> labels;
    // Coefficient of each output mode: M_k for a photon, M_k * alpha for a
    // coherent amplitude.
    std::vector<double> amplitudes;
    // Detection probability (single photon) or mean intensity (coherent).
    std::vector<double> values;
    // Probability that no detector clicks; single photon only.
    std::optional<double> no_click_probability;

    double total() const;
    // values[D1] / values[D2]; +inf when only D2 is empty.
    double d1_d2_ratio() const;
};

class UndefinedRatio : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

OutputStateSummary output_state(const TransferCoefficients& coeffs, const InputState& input);

// True iff the D1:D2 ratio of the single-photon summary equals that of the
// unit coherent state. Throws UndefinedRatio when m1 = m2 = 0.
bool ratio_invariance_check(const TransferCoefficients& coeffs);

// A D1/D2 click is counterfactual only for a single photon with Bob's blocks
// in: that photon cannot have been in the channel. A coherent input always
// populates the channel.
bool is_counterfactual(const InputState& input, bool bob_blocks);

} // namespace zenochain
