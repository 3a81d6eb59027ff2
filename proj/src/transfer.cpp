#include "zenochain/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace zenochain {

namespace {

void check_fraction(double kappa, const char* name)
{
    if (!(kappa >= 0.0 && kappa <= 1.0))
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " + std::to_string(kappa));
}

} // namespace

bool TransferMatrix2::is_finite() const
{
    return std::isfinite(a11) && std::isfinite(a12) && std::isfinite(a21) && std::isfinite(a22);
}

double max_abs_diff(const TransferMatrix2& x, const TransferMatrix2& y)
{
    return std::max({std::abs(x.a11 - y.a11), std::abs(x.a12 - y.a12), std::abs(x.a21 - y.a21),
                     std::abs(x.a22 - y.a22)});
}

TransferMatrix2 bs_matrix(double theta)
{
    if (!std::isfinite(theta))
        throw std::invalid_argument("beam splitter angle must be finite");
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c, -s, s, c};
}

TransferMatrix2 loss_matrix(double kappa_left, double kappa_right)
{
    check_fraction(kappa_left, "kappa_left");
    check_fraction(kappa_right, "kappa_right");
    return TransferMatrix2::diagonal(std::sqrt(1.0 - kappa_left), std::sqrt(1.0 - kappa_right));
}

TransferMatrix2 matrix_power(const TransferMatrix2& m, std::size_t k)
{
    TransferMatrix2 result = TransferMatrix2::identity();
    for (std::size_t i = 0; i < k; ++i)
        result = result * m;
    return result;
}

TransferMatrix2 chain_product(const TransferMatrix2& splitter, const TransferMatrix2& arm, std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("a chain needs at least one splitter");
    return splitter * matrix_power(arm * splitter, n - 1);
}

TransferMatrix2 chain_matrix(double theta, double kappa_left, double kappa_right, std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("a chain needs at least one splitter");
    return chain_product(bs_matrix(theta), loss_matrix(kappa_left, kappa_right), n);
}

} // namespace zenochain
