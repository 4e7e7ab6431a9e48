#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "tropfan/util.hpp"

namespace tropfan {

// Exact scalars. mpq_class keeps num/den coprime with positive denominator,
// which is the canonical form every comparison below relies on.
using Int = mpz_class;
using Rat = mpq_class;

using IntVec = std::vector<Int>;

inline bool is_integer(const Rat& x) { return x.get_den() == 1; }

inline Int to_int(const Rat& x) {
    check(is_integer(x), "to_int: non-integral rational");
    return x.get_num();
}

inline std::string to_string(const Int& x) { return x.get_str(); }
inline std::string to_string(const Rat& x) { return x.get_str(); }

}  // namespace tropfan
