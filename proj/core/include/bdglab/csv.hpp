#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace bdglab {

// Shortest-roundtrip-safe rendering used in every CSV this library writes
// (%.17g), so that identical doubles always produce identical bytes.
std::string format_double(double v);

// Splits one CSV line on commas; fields are never quoted in our files.
std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace bdglab
