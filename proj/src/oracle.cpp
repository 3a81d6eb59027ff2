#include "zenochain/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <type_traits>

namespace zenochain {

namespace {

constexpr std::size_t kOuterLeft = 0;
constexpr std::size_t kMiddle = 1;
constexpr std::size_t kChannel = 2;

template <class... Ts> struct overloaded : Ts...
{
    using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

std::size_t ModeNetwork::splitter_count() const
{
    return static_cast<std::size_t>(std::count_if(elements.begin(), elements.end(), [](const NetworkElement& e) {
        return std::holds_alternative<Splitter>(e);
    }));
}

double PropagationTrace::d3_total() const
{
    return std::accumulate(d3_amplitudes.begin(), d3_amplitudes.end(), 0.0,
                           [](double acc, double a) { return acc + a * a; });
}

double PropagationTrace::residual_norm2() const
{
    return std::accumulate(residual.begin(), residual.end(), 0.0, [](double acc, double a) { return acc + a * a; });
}

double PropagationTrace::total() const
{
    return d1() + d2() + d3_total() + dissipation_total() + blocked + residual_norm2();
}

ModeNetwork build_network(const ProtocolParams& params)
{
    params.validate();
    const double outer_theta = params.outer_angle();
    const double inner_theta = params.inner_angle();
    const double kappa3 = params.effective_kappa3();

    ModeNetwork net;
    net.mode_count = 3;
    net.input_mode = kOuterLeft;
    net.inner_chain_count = params.outer_count - 1;
    net.elements.reserve(params.outer_count * (params.inner_count * 3 + 3));

    auto& el = net.elements;
    el.emplace_back(Splitter{kOuterLeft, kMiddle, outer_theta});
    for (std::size_t i = 1; i < params.outer_count; ++i) {
        // Inner chain i: its left arm continues the outer right arm; the
        // channel-side arm starts in vacuum.
        el.emplace_back(Splitter{kMiddle, kChannel, inner_theta});
        for (std::size_t k = 1; k < params.inner_count; ++k) {
            el.emplace_back(Attenuator{kMiddle, params.kappa2, PathGroup::middle});
            if (kappa3 == 1.0)
                el.emplace_back(Block{kChannel, PathGroup::right});
            else
                el.emplace_back(Attenuator{kChannel, kappa3, PathGroup::right});
            el.emplace_back(Splitter{kMiddle, kChannel, inner_theta});
        }
        el.emplace_back(DetectorTap{kChannel, {DetectorId::Kind::d3, i}, true});

        el.emplace_back(Attenuator{kOuterLeft, params.kappa1, PathGroup::left});
        el.emplace_back(Splitter{kOuterLeft, kMiddle, outer_theta});
    }
    el.emplace_back(DetectorTap{kOuterLeft, {DetectorId::Kind::d1, 0}, false});
    el.emplace_back(DetectorTap{kMiddle, {DetectorId::Kind::d2, 0}, false});
    return net;
}

PropagationTrace propagate(const ModeNetwork& network, double input_amplitude)
{
    if (network.input_mode >= network.mode_count)
        throw std::invalid_argument("input mode out of range");

    std::vector<double> amp(network.mode_count, 0.0);
    amp[network.input_mode] = input_amplitude;

    PropagationTrace trace;
    trace.d3_amplitudes.assign(network.inner_chain_count, 0.0);

    auto mode = [&](std::size_t m) -> double& {
        if (m >= amp.size())
            throw std::invalid_argument("network element refers to a mode out of range");
        return amp[m];
    };

    for (const auto& element : network.elements) {
        std::visit(overloaded{
                       [&](const Splitter& s) {
                           double& a = mode(s.mode_a);
                           double& b = mode(s.mode_b);
                           const double c = std::cos(s.theta);
                           const double sn = std::sin(s.theta);
                           const double na = c * a - sn * b;
                           const double nb = sn * a + c * b;
                           a = na;
                           b = nb;
                       },
                       [&](const Attenuator& at) {
                           double& a = mode(at.mode);
                           const double entering = a * a;
                           if (at.group == PathGroup::right)
                               trace.channel_entering += entering;
                           trace.dissipation[static_cast<std::size_t>(at.group)] += at.kappa * entering;
                           a *= std::sqrt(1.0 - at.kappa);
                       },
                       [&](const Block& b) {
                           double& a = mode(b.mode);
                           if (b.group == PathGroup::right) {
                               trace.channel_entering += a * a;
                               trace.blocked += a * a;
                           } else {
                               trace.dissipation[static_cast<std::size_t>(b.group)] += a * a;
                           }
                           a = 0.0;
                       },
                       [&](const DetectorTap& t) {
                           double& a = mode(t.mode);
                           if (t.channel_side)
                               trace.channel_entering += a * a;
                           switch (t.detector.kind) {
                           case DetectorId::Kind::d1:
                               trace.d1_amplitude = a;
                               break;
                           case DetectorId::Kind::d2:
                               trace.d2_amplitude = a;
                               break;
                           case DetectorId::Kind::d3:
                               if (t.detector.index == 0 || t.detector.index > trace.d3_amplitudes.size())
                                   throw std::invalid_argument("D3 detector index out of range");
                               trace.d3_amplitudes[t.detector.index - 1] = a;
                               break;
                           }
                           a = 0.0;
                       },
                   },
                   element);
    }

    trace.residual = std::move(amp);
    return trace;
}

double channel_exposure(const PropagationTrace& trace, ExposureConvention convention)
{
    switch (convention) {
    case ExposureConvention::entering_probability:
        return trace.channel_entering;
    case ExposureConvention::absorbed_only:
        return trace.blocked + trace.dissipation[static_cast<std::size_t>(PathGroup::right)];
    }
    return 0.0;
}

} // namespace zenochain
