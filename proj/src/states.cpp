#include "zenochain/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace zenochain {

double OutputStateSummary::total() const { return std::accumulate(values.begin(), values.end(), 0.0); }

double OutputStateSummary::d1_d2_ratio() const
{
    const double d1 = values.at(0);
    const double d2 = values.at(1);
    if (d2 == 0.0) {
        if (d1 == 0.0)
            throw UndefinedRatio("D1:D2 ratio undefined: both detectors empty");
        return std::numeric_limits<double>::infinity();
    }
    return d1 / d2;
}

OutputStateSummary output_state(const TransferCoefficients& coeffs, const InputState& input)
{
    std::vector<double> coefficients;
    coefficients.reserve(coeffs.m3.size() + 3);
    coefficients.push_back(coeffs.m1);
    coefficients.push_back(coeffs.m2);
    coefficients.insert(coefficients.end(), coeffs.m3.begin(), coeffs.m3.end());
    coefficients.push_back(coeffs.m_res);

    OutputStateSummary out;
    out.kind = input.kind;
    out.labels.reserve(coefficients.size());
    out.labels.emplace_back("D1");
    out.labels.emplace_back("D2");
    for (std::size_t i = 1; i <= coeffs.m3.size(); ++i)
        out.labels.push_back("D3_" + std::to_string(i));
    out.labels.emplace_back("reservoir");

    // |f(M . a_out)> : a single photon becomes the superposition with weights
    // M_k, a coherent state becomes the product of coherent states M_k alpha.
    const double scale = input.kind == InputKind::single_photon ? 1.0 : input.alpha;
    for (double m : coefficients) {
        out.amplitudes.push_back(m * scale);
        out.values.push_back(m * m * scale * scale);
    }
    if (input.kind == InputKind::single_photon)
        out.no_click_probability = coeffs.m_res * coeffs.m_res;
    return out;
}

bool ratio_invariance_check(const TransferCoefficients& coeffs)
{
    if (coeffs.m1 == 0.0 && coeffs.m2 == 0.0)
        throw UndefinedRatio("D1:D2 ratio undefined: m1 = m2 = 0");
    const double photon = output_state(coeffs, InputState::single_photon()).d1_d2_ratio();
    const double coherent = output_state(coeffs, InputState::coherent(1.0)).d1_d2_ratio();
    if (std::isinf(photon) || std::isinf(coherent))
        return photon == coherent;
    return std::abs(photon - coherent) <= 1e-12 * std::max(1.0, std::abs(photon));
}

bool is_counterfactual(const InputState& input, bool bob_blocks)
{
    return input.kind == InputKind::single_photon && bob_blocks;
}

} // namespace zenochain
