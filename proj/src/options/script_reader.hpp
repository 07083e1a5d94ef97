#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>

#include "netvis/options.hpp"

namespace netvis::detail {

struct Location {
    std::size_t line = 1;
    std::size_t column = 1;
};

/// A parsed options document plus the source location of every value,
/// keyed by JSON pointer ("" is the root, "/physics/solver" a member).
struct LocatedDocument {
    ordered_json value;
    std::unordered_map<std::string, Location> locations;

    Location at(const std::string& pointer) const;
};

/// Strict JSON reader for the options grammar
///   WS* ("var" WS+ "options" WS* "=" WS*)? object WS* ";"? WS*
/// Integers without fraction or exponent stay integers. Duplicate keys are
/// rejected. Throws ParseError.
LocatedDocument read_options_script(std::string_view text);

}  // namespace netvis::detail
