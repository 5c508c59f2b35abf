#include "eqlab/util/high_real.hpp"

#include <limits>
#include <sstream>

#include <boost/math/constants/constants.hpp>
#include <stdexcept>

namespace eqlab {

HighReal parse_high_real(std::string_view text) {
  try {
    return HighReal(std::string(text));
  } catch (const std::exception&) {
    throw std::invalid_argument("not a real literal: " + std::string(text));
  }
}

std::string to_string(const HighReal& value) {
  std::ostringstream os;
  os.precision(std::numeric_limits<HighReal>::max_digits10);
  os << value;
  return os.str();
}

HighReal high_pi() { return boost::math::constants::pi<HighReal>(); }
HighReal high_e() { return boost::math::constants::e<HighReal>(); }

} // namespace eqlab
