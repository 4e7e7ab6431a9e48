#pragma once

// Built-in example fans, addressable by name from tests and the CLI.
//
// Fixed names: point, line1, lambda2, cross, cube-skeleton, tropline3,
// mod-lambda-cross.  Families: bergman-u(r,n) for 1 <= r <= n <= 6, and
// product:A,B (also product:A<times>B) for any two named entries.
// Some entries carry named piecewise-linear functions given by their
// values on the primitive ray generators.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tropfan/fan.hpp"

namespace tropfan {

struct ZooEntry {
    std::shared_ptr<const Fan> fan;
    std::map<std::string, IntVec> functions;  // name -> values on rays
};

// Throws InputError for unknown names.
ZooEntry zoo_fan(const std::string& name);

// Fixed entry names plus one representative per family.
std::vector<std::string> zoo_names();

}  // namespace tropfan
