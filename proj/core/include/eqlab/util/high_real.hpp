#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/float128.hpp>

namespace eqlab {

// 113-bit mantissa quad precision.
using HighReal = boost::multiprecision::float128;

HighReal parse_high_real(std::string_view text);

// Shortest text that round-trips through parse_high_real.
std::string to_string(const HighReal& value);

HighReal high_pi();
HighReal high_e();

} // namespace eqlab
