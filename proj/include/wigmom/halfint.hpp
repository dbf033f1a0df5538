#ifndef WIGMOM_HALFINT_HPP
#define WIGMOM_HALFINT_HPP

#include <optional>
#include <string>

namespace wigmom {

// Half-integer spins are carried around as doubled integers (two_j = 2j).
// These helpers translate between that convention and the "n/2" text form.

std::string format_half_integer(int two_j);

// Accepts "2", "1/2", "3/2", "4/2", ... Returns the doubled value, or
// nullopt when the text is not a nonnegative integer or half-integer.
std::optional<int> parse_half_integer(const std::string& text);

}  // namespace wigmom

#endif
