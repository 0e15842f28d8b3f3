#pragma once

// Palindromic structure of sqrt(p/q) periods.
//
// Besides the increment factors phi_n (lambda_n phi_n = alpha - mu_n beta)
// we use omega_n, the inverse of the conjugate: phi_n* omega_n = beta^2,
// which works out to lambda_{n+1} omega_n = alpha - mu_n beta. Interleaving
// phi_1, omega_1, phi_2, omega_2, ... the first repeated element is either
//   Case I:  phi_k   = omega_{k-1}, or
//   Case II: omega_k = phi_k,
// and walking outward from that reflection point with
//   phi_n (I_n beta + phi_{n+1})       = beta^2
//   omega_{n+1} (I_n beta + omega_n)   = beta^2
//   omega_1 (phi_1 + 2 m beta)         = beta^2
// forces I_i = I_{l-i} and I_l = 2m.

#include "anth/engine.hpp"
#include "anth/lines.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace anth::palindrome {

struct OmegaState {
  BigInt mu;
  BigInt lambda_next;
  std::size_t index = 0;  // n in omega_n, 1-based

  bookx::SurdLine line(const Radicand& r) const;
};

enum class ReflectionCase { I, II };

const char* to_string(ReflectionCase c);

struct Reflection {
  ReflectionCase kind = ReflectionCase::II;
  std::size_t k = 1;

  bool operator==(const Reflection&) const = default;
};

// Raised when no reflection exists where the theorem says one must.
class ReflectionFailure : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

struct PalindromeReport {
  bool holds = false;
  bool interior_palindromic = false;
  bool last_quotient_is_double = false;
  // 1-based quotient indices (i, j), i < j, with I_i = I_j inside the period.
  std::vector<std::pair<std::size_t, std::size_t>> matched_pairs;

  // Filled when the expansion carries its states (square-root inputs).
  std::optional<ReflectionCase> reflection_case;
  std::size_t center_index = 0;
  std::optional<bool> reflection_agrees;
};

struct PeriodStats {
  std::size_t period_length = 0;
  std::size_t distinct_logoi = 0;
  std::size_t platonic_number = 0;  // distinct_logoi + 1
};

// u * v - beta^2 as an area; zero iff u v = beta^2 exactly.
bookx::SurdArea beta_squared_residual(const bookx::SurdLine& u, const bookx::SurdLine& v);

// omega_1 .. omega_l for a square-root expansion. Checks lambda_{n+1}
// omega_n = alpha - mu_n beta against phi_n* omega_n = beta^2,
// 0 < omega_n < beta, omega_1 (phi_1 + 2 m beta) = beta^2 and
// omega_{n+1} (I_n beta + omega_n) = beta^2, throwing std::logic_error on
// any failure.
std::vector<OmegaState> omega_sequence(const Expansion& e, const Radicand& r);

// Throws ReflectionFailure if no reflection is found in the given prefix.
Reflection find_reflection(const std::vector<IncrementFactor>& phis,
                           const std::vector<OmegaState>& omegas);

// symbolic runs the omega identities and the reflection walk in the line
// algebra; integer runs the equivalent checks on (mu, lambda) pairs, which
// is what a large sweep can afford.
enum class Depth { symbolic, integer };

// Throws std::invalid_argument for an empty period.
PalindromeReport verify_palindrome(const Expansion& e, const BigInt& m, Depth depth = Depth::symbolic);

PeriodStats period_stats(const Expansion& e);

}  // namespace anth::palindrome
