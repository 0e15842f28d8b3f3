#pragma once

#include "anth/engine.hpp"

#include <optional>
#include <vector>

namespace anth {

struct Convergent {
  BigInt p;
  BigInt q;
  std::size_t index = 0;

  bool operator==(const Convergent&) const = default;
};

// p_k = I_k p_{k-1} + p_{k-2}, q_k = I_k q_{k-1} + q_{k-2}, seeded with
// p_{-1}/q_{-1} = 1/0 and p_{-2}/q_{-2} = 0/1. The period is cycled as
// needed; a terminated expansion yields at most its own length.
std::vector<Convergent> convergents(const Expansion& e, std::size_t count);

struct PellSolution {
  BigInt x;
  BigInt y;
  // x^2 - N y^2 = -1, present when the period length is odd.
  std::optional<std::pair<BigInt, BigInt>> negative;
};

// Fundamental solution of x^2 - N y^2 = 1 from the convergent that closes
// the first period (even length) or the second (odd length). The result is
// verified by multiplication before it is returned. Throws
// std::domain_error for square N.
PellSolution pell_fundamental(const BigInt& n);
PellSolution pell_fundamental(const Expansion& e, const BigInt& n);

}  // namespace anth
