#include "zenochain/protocol.hpp"

#include "zenochain/format.hpp"
#include "zenochain/oracle.hpp"
#include "zenochain/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace zenochain {

double chain_angle(std::size_t count)
{
    if (count == 0)
        throw std::invalid_argument("chain length must be positive");
    return std::numbers::pi / (2.0 * static_cast<double>(count));
}

double ProtocolParams::outer_angle() const { return chain_angle(outer_count); }
double ProtocolParams::inner_angle() const { return chain_angle(inner_count); }

void ProtocolParams::validate() const
{
    if (outer_count == 0)
        throw std::invalid_argument("outer chain needs at least one splitter (M >= 1)");
    if (inner_count == 0)
        throw std::invalid_argument("inner chain needs at least one splitter (N >= 1)");
    for (auto [value, name] : {std::pair{kappa1, "kappa1"}, {kappa2, "kappa2"}, {kappa3, "kappa3"}})
        if (!(value >= 0.0 && value <= 1.0))
            throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

std::string ProtocolParams::describe() const
{
    std::ostringstream os;
    os << "M=" << outer_count << " N=" << inner_count << " kappa1=" << kappa1 << " kappa2=" << kappa2
       << " kappa3=" << kappa3 << (bob_blocks ? " blocks" : " no-blocks");
    return os.str();
}

Reliability Reliability::ratio(double numerator, double denominator)
{
    if (std::abs(denominator) <= kNullProbability)
        return numerator == 0.0 ? Reliability(Kind::undefined, std::numeric_limits<double>::quiet_NaN())
                        : Reliability(Kind::infinite, std::numeric_limits<double>::infinity());
    return Reliability(Kind::finite, numerator / denominator);
}

double Reliability::value() const { return value_; }

std::string Reliability::to_string() const
{
    switch (kind_) {
    case Kind::infinite:
        return "inf";
    case Kind::undefined:
        return "undefined";
    case Kind::finite:
        break;
    }
    return format_double(value_);
}

double TransferCoefficients::m3_norm2() const
{
    return std::accumulate(m3.begin(), m3.end(), 0.0, [](double acc, double m) { return acc + m * m; });
}

double OutcomeReport::w3_total() const { return std::accumulate(w3.begin(), w3.end(), 0.0); }

InnerCoefficients inner_coefficients(std::size_t inner_count, double kappa2, double kappa3)
{
    const auto chain = chain_matrix(chain_angle(inner_count), kappa2, kappa3, inner_count);
    const auto out = chain.apply({1.0, 0.0});
    InnerCoefficients c;
    c.m11 = out.left;
    c.m21 = out.right;
    c.m_res = std::sqrt(std::max(0.0, 1.0 - out.norm2()));
    return c;
}

double equivalent_inner_dissipation(std::size_t inner_count, double kappa2)
{
    if (!(kappa2 >= 0.0 && kappa2 <= 1.0))
        throw std::invalid_argument("kappa2 must lie in [0, 1]");
    const double c = std::cos(chain_angle(inner_count));
    const double stage = std::sqrt(1.0 - kappa2) * c;
    return 1.0 - c * c * std::pow(stage, 2.0 * static_cast<double>(inner_count - 1));
}

double balanced_kappa1(std::size_t inner_count, double kappa2)
{
    return equivalent_inner_dissipation(inner_count, kappa2);
}

TransferCoefficients outer_coefficients(const ProtocolParams& params)
{
    params.validate();
    const auto inner = inner_coefficients(params.inner_count, params.kappa2, params.effective_kappa3());

    // The inner chain is the right arm of each outer interferometer with
    // amplitude transmission m11 (not a square root of a dissipation).
    const auto splitter = bs_matrix(params.outer_angle());
    const auto arm = TransferMatrix2::diagonal(std::sqrt(1.0 - params.kappa1), inner.m11);
    const auto stage = arm * splitter;

    TransferCoefficients c;
    const auto out = chain_product(splitter, arm, params.outer_count).apply({1.0, 0.0});
    c.m1 = out.left;
    c.m2 = out.right;

    // The i-th inner chain is fed from the right output of the i-th outer
    // splitter: [0 1] bs (arm bs)^(i-1) [1 0]^T.
    c.m3.reserve(params.outer_count - 1);
    TransferMatrix2 partial = TransferMatrix2::identity();
    for (std::size_t i = 1; i < params.outer_count; ++i) {
        const double feed = (splitter * partial).apply({1.0, 0.0}).right;
        c.m3.push_back(inner.m21 * feed);
        partial = stage * partial;
    }

    c.m_res = std::sqrt(std::max(0.0, 1.0 - c.m1 * c.m1 - c.m2 * c.m2 - c.m3_norm2()));
    return c;
}

OutcomeReport evaluate(const ProtocolParams& params)
{
    const auto coeffs = outer_coefficients(params);

    OutcomeReport r;
    r.w1 = coeffs.m1 * coeffs.m1;
    r.w2 = coeffs.m2 * coeffs.m2;
    r.w3.reserve(coeffs.m3.size());
    for (double m : coeffs.m3)
        r.w3.push_back(m * m);
    r.w_res = coeffs.m_res * coeffs.m_res;

    const auto trace = propagate(build_network(params));
    r.w_tr = channel_exposure(trace, ExposureConvention::entering_probability);
    r.w_tr_absorbed = channel_exposure(trace, ExposureConvention::absorbed_only);

    r.eta = params.bob_blocks ? Reliability::ratio(r.w2, r.w1) : Reliability::ratio(r.w1, r.w2);
    return r;
}

double eta_nb_closed_form(std::size_t outer_count)
{
    const double t = chain_angle(outer_count);
    const double c = std::cos(t);
    const double s = std::sin(t);
    return (c * c) / (s * s);
}

} // namespace zenochain
