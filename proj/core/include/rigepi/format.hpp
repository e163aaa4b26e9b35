#pragma once

#include <string>

namespace rigepi {

// Locale-independent shortest rendering with at most 12 significant digits.
std::string format_real(double x);

// x rounded to 12 significant digits (so serializers print it identically).
double round_significant(double x);

}  // namespace rigepi
