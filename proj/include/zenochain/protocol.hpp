#pragma once

#include "zenochain/params.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace zenochain {

// Probabilities at or below this are numerically indistinguishable from an
// exact interference null in double precision (amplitudes near 1e-10 and below
// are rounding residue of the chained products).
inline constexpr double kNullProbability = 1e-20;

// Ratio of a wanted to an unwanted detector probability. A vanishing
// denominator (at or below kNullProbability) gives an infinite reliability
// unless the numerator is exactly zero, which is undefined.
class Reliability
{
  public:
    enum class Kind { finite, infinite, undefined };

    static Reliability ratio(double numerator, double denominator);

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::finite; }
    bool is_infinite() const { return kind_ == Kind::infinite; }
    bool is_undefined() const { return kind_ == Kind::undefined; }

    // +inf for infinite, NaN for undefined.
    double value() const;

    // "inf", "undefined", or the value with 17 significant digits.
    std::string to_string() const;

  private:
    Reliability(Kind kind, double value) : kind_(kind), value_(value) {}

    Kind kind_;
    double value_;
};

// Single inner chain: input on the middle-group port goes to the left output
// (back to the outer chain), the right output (towards D3i) or the reservoir.
struct InnerCoefficients
{
    double m11 = 0.0;
    double m21 = 0.0;
    double m_res = 0.0;
};

// Amplitudes of the whole nested chain for unit input: D1, D2, every D3i
// (i = 1 .. M-1) and the reservoir.
struct TransferCoefficients
{
    double m1 = 0.0;
    double m2 = 0.0;
    std::vector<double> m3;
    double m_res = 0.0;

    double m3_norm2() const;
};

struct OutcomeReport
{
    double w1 = 0.0;
    double w2 = 0.0;
    std::vector<double> w3;
    double w_res = 0.0;
    // Channel exposure: every channel-side segment entry, including the
    // inner-chain outputs routed to D3i. This is the convention that
    // reproduces the published with-blocks table.
    double w_tr = 0.0;
    // Channel exposure counting only what is absorbed on the channel side.
    double w_tr_absorbed = 0.0;
    Reliability eta = Reliability::ratio(0.0, 0.0);

    double w3_total() const;
    double total() const { return w1 + w2 + w3_total() + w_res; }
};

InnerCoefficients inner_coefficients(std::size_t inner_count, double kappa2, double kappa3);

// Fraction lost inside a blocked inner chain as seen from the outer chain:
// 1 - cos^2(t) (sqrt(1 - kappa2) cos(t))^(2(N - 1)) with t = pi / 2N.
double equivalent_inner_dissipation(std::size_t inner_count, double kappa2);

// Left-group dissipation that equalizes both arms of every outer
// interferometer when Bob blocks, nulling D1.
double balanced_kappa1(std::size_t inner_count, double kappa2);

TransferCoefficients outer_coefficients(const ProtocolParams& params);

// Closed-form coefficients plus channel exposure from the explicit network.
OutcomeReport evaluate(const ProtocolParams& params);

// cos^2(pi / 2M) / sin^2(pi / 2M)
double eta_nb_closed_form(std::size_t outer_count);

} // namespace zenochain
