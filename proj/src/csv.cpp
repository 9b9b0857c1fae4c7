#include "hw2f/csv.hpp"

#include <fmt/format.h>

namespace hw2f {

std::string format_number(double v) {
    // Avoid "-0" so that reruns differing only in the sign of zero match.
    if (v == 0.0) v = 0.0;
    return fmt::format("{:.12g}", v);
}

}  // namespace hw2f
