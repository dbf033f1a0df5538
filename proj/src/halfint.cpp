#include "wigmom/halfint.hpp"

#include <cctype>

namespace wigmom {
namespace {

std::optional<long> parse_nonneg(const std::string& text) {
    if (text.empty() || text.size() > 9) {
        return std::nullopt;
    }
    long value = 0;
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return std::nullopt;
        }
        value = value * 10 + (c - '0');
    }
    return value;
}

}  // namespace

std::string format_half_integer(int two_j) {
    if (two_j % 2 == 0) {
        return std::to_string(two_j / 2);
    }
    return std::to_string(two_j) + "/2";
}

std::optional<int> parse_half_integer(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        auto whole = parse_nonneg(text);
        if (!whole) {
            return std::nullopt;
        }
        return static_cast<int>(2 * *whole);
    }
    auto numerator = parse_nonneg(text.substr(0, slash));
    auto denominator = parse_nonneg(text.substr(slash + 1));
    if (!numerator || !denominator || *denominator != 2) {
        return std::nullopt;
    }
    return static_cast<int>(*numerator);
}

}  // namespace wigmom
