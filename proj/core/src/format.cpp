#include "rigepi/format.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace rigepi {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

double round_significant(double x) {
  if (!std::isfinite(x)) return x;
  const std::string text = format_real(x);
  double y = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), y);
  return y;
}

}  // namespace rigepi
