#pragma once

#include <string>
#include <string_view>

namespace cvoam {

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double x);

/// Strict parse of a whole string as a double (InputError on failure).
double parse_double(std::string_view s);

} // namespace cvoam
