#pragma once

#include <string>
#include <string_view>

namespace cts {

/// Numeric text for CSV/JSON output: 10 significant digits, or an exact
/// hexadecimal float when `bitexact` is set.
[[nodiscard]] std::string format_number(double value, bool bitexact = false);

/// Quotes a CSV field when it contains a separator, quote or newline.
[[nodiscard]] std::string csv_field(std::string_view text);

}  // namespace cts
