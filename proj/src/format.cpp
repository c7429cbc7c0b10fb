#include "catseries/format.hpp"

#include <cmath>
#include <cstdio>

namespace cts {

std::string format_number(double value, bool bitexact) {
    if (std::isnan(value)) return "NaN";
    if (std::isinf(value)) return value > 0 ? "Inf" : "-Inf";
    if (value == 0.0) value = 0.0;  // drop the sign of negative zero
    char buf[64];
    std::snprintf(buf, sizeof buf, bitexact ? "%a" : "%.10g", value);
    return buf;
}

std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace cts
