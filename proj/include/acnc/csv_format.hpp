#pragma once

#include <charconv>
#include <cstddef>
#include <string>
#include <system_error>

#include "acnc/errors.hpp"

namespace acnc {

/// Shortest decimal string that round-trips the value exactly.
inline std::string format_shortest(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    if (res.ec != std::errc{}) throw NumericalError("number formatting failed");
    return std::string(buf, res.ptr);
}

/// Shortest round-trip form, zero-padded in the mantissa so at least nine
/// significant digits appear. Keeps CSV output both exact and regular.
inline std::string format_csv_number(double value) {
    std::string text = format_shortest(value);

    std::size_t exp_pos = text.find('e');
    std::string mantissa = text.substr(0, exp_pos);
    const std::string suffix = exp_pos == std::string::npos ? "" : text.substr(exp_pos);

    int significant = 0;
    bool leading = true;
    for (char ch : mantissa) {
        if (ch < '0' || ch > '9') continue;
        if (leading && ch == '0') continue;
        leading = false;
        ++significant;
    }
    if (significant == 0) significant = 1;  // the value 0 itself

    constexpr int kMinSignificant = 9;
    if (significant < kMinSignificant) {
        if (mantissa.find('.') == std::string::npos) mantissa.push_back('.');
        mantissa.append(static_cast<std::size_t>(kMinSignificant - significant), '0');
    }
    return mantissa + suffix;
}

}  // namespace acnc
