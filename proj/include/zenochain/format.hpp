#pragma once

#include <string>

namespace zenochain {

// Shortest text that round-trips: 17 significant digits, "inf" / "-inf" / "nan"
// for non-finite values.
std::string format_double(double value);

} // namespace zenochain
