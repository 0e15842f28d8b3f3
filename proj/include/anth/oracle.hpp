#pragma once

// Reference expansion used to certify the engine. It subtracts the floor
// and inverts by conjugation one surd at a time, with no state recurrence
// and no period detection. Only surd_core is used here.

#include "anth/surd_core.hpp"

#include <cstddef>
#include <vector>

namespace anth::oracle {

// The first `steps` quotients of s, fewer if s is rational and runs out.
std::vector<BigInt> oracle_expand(const QuadraticSurd& s, std::size_t steps);

bool oracle_is_palindrome(const std::vector<BigInt>& seq);

}  // namespace anth::oracle
