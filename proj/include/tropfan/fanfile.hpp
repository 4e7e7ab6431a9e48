#pragma once

// JSON fan descriptions: parsing with validation and position diagnostics,
// plus a canonical serializer (sorted keys, exhaustive sorted cone list)
// whose output is a fixed point of parse-then-serialize.  Also the JSON and
// aligned-text renderings of homology tables shared by the CLI.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tropfan/homology.hpp"
#include "tropfan/weights.hpp"

namespace tropfan {

struct LoadedFan {
    std::shared_ptr<const Fan> fan;
    std::optional<PLFunction> function;
    std::vector<std::string> warnings;
};

// Parses and validates a JSON fan description.  Accepted keys:
//   ambient_rank  integer >= 0 (required unless product_of is given)
//   rays          [[int, ...], ...], one row per primitive ray generator
//   cones         [[ray id, ...], ...]; the zero cone is implicit
//   weights       {"cone index": int}, keyed by position in `cones`
//   function      {"ray_values": [int, ...]} or
//                 {"facet_forms": {"cone index": [int, ...]}}
//   product_of    [description, description]; replaces all keys above
// Throws InputError with a line/column diagnostic on malformed text.
LoadedFan parse_fan_json(const std::string& text);

// Reads the file (or standard input when path is "-") and parses it.
LoadedFan load_fan_file(const std::string& path);

// Canonical form: two-space indent, keys sorted, cones listed exhaustively in
// validated id order, weights keyed by cone position, the function by its ray
// values.  Serializing a parse of the output reproduces it byte for byte.
std::string fan_to_json(const Fan& f, const PLFunction* fn = nullptr);

std::string table_to_json(const HomologyTable& t);
// Aligned grid, rows p, columns q.
std::string table_to_text(const HomologyTable& t);

}  // namespace tropfan
