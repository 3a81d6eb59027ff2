#pragma once

#include <cstddef>

namespace zenochain {

// Amplitudes on a (left, right) mode pair. All amplitudes are real: the
// interferometers are assumed to have equal optical path lengths.
struct ModeVector2
{
    double left = 0.0;
    double right = 0.0;

    double norm2() const { return left * left + right * right; }
};

// 2x2 real amplitude transfer matrix acting on a ModeVector2 column.
struct TransferMatrix2
{
    double a11 = 1.0;
    double a12 = 0.0;
    double a21 = 0.0;
    double a22 = 1.0;

    static constexpr TransferMatrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr TransferMatrix2 diagonal(double left, double right) { return {left, 0.0, 0.0, right}; }

    constexpr TransferMatrix2 transposed() const { return {a11, a21, a12, a22}; }
    constexpr double determinant() const { return a11 * a22 - a12 * a21; }

    constexpr ModeVector2 apply(ModeVector2 v) const
    {
        return {a11 * v.left + a12 * v.right, a21 * v.left + a22 * v.right};
    }

    bool is_finite() const;

    friend constexpr TransferMatrix2 operator*(const TransferMatrix2& x, const TransferMatrix2& y)
    {
        return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
                x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
    }

    friend constexpr bool operator==(const TransferMatrix2&, const TransferMatrix2&) = default;
};

// Largest absolute entrywise difference.
double max_abs_diff(const TransferMatrix2& x, const TransferMatrix2& y);

/// Beam splitter with angle theta: [[cos, -sin], [sin, cos]]. Reflectivity is cos^2(theta).
/// Throws std::invalid_argument for non-finite theta.
TransferMatrix2 bs_matrix(double theta);

/// Path dissipation pair diag(sqrt(1 - kappa_left), sqrt(1 - kappa_right)).
/// Both fractions must lie in [0, 1].
TransferMatrix2 loss_matrix(double kappa_left, double kappa_right);

/// m^k by iterated multiplication; m^0 is the identity.
TransferMatrix2 matrix_power(const TransferMatrix2& m, std::size_t k);

/// splitter * (arm * splitter)^(n - 1): a chain of n splitters separated by n - 1
/// interferometer arms. n = 1 returns the splitter unchanged.
TransferMatrix2 chain_product(const TransferMatrix2& splitter, const TransferMatrix2& arm, std::size_t n);

/// Chain of n identical splitters with lossy arms:
/// bs_matrix(theta) * (loss_matrix(kl, kr) * bs_matrix(theta))^(n - 1).
TransferMatrix2 chain_matrix(double theta, double kappa_left, double kappa_right, std::size_t n);

} // namespace zenochain
