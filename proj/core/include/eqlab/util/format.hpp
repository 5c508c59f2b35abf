#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace eqlab {

// 17 significant digits; enough to round-trip any double.
std::string format_double(double value);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

} // namespace eqlab
