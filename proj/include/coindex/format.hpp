#pragma once

#include <string>

namespace coindex {

// Shortest decimal that parses back to the same double; integral values are
// written without a decimal point ("3", not "3.0").
std::string format_number(double value);

}  // namespace coindex
