#pragma once

#include <string>

namespace canonphase {

/// Real number with 17 significant digits, as used by every text output.
std::string format_real(double value);

/// Shortest representation that round-trips.
std::string format_shortest(double value);

}  // namespace canonphase
