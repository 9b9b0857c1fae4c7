#pragma once

#include <string>

namespace hw2f {

/// Fixed 12-significant-digit rendering used for every CSV float.
std::string format_number(double v);

}  // namespace hw2f
