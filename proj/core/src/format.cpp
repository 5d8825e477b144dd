#include "cvoam/format.hpp"

#include <array>
#include <charconv>
#include <string>

#include "cvoam/error.hpp"

namespace cvoam {

std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) {
    throw NumericalError("cannot format number");
  }
  return std::string(buf.data(), end);
}

double parse_double(std::string_view s) {
  double x = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  if (!s.empty() && *first == '+') {
    ++first;
  }
  const auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last || s.empty()) {
    throw InputError("not a number: '" + std::string(s) + "'");
  }
  return x;
}

} // namespace cvoam
