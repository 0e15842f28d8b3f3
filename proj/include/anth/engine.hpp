#pragma once

// Anthyphairesis of quadratic surds through the integer state recurrence
//
//   lambda_{k+1} lambda_k = D - mu_k^2
//   mu_{k+1} + mu_k       = I_k lambda_{k+1}
//
// where lambda_k phi_k = alpha - mu_k beta is the k-th increment factor.
// The period is found at the first repeated state (the incremental Logos
// criterion); there are finitely many admissible states, so a repeat is
// guaranteed.

#include "anth/lines.hpp"
#include "anth/surd_core.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace anth {

/// Positive rational p/q in lowest terms under a square root. An integer
/// radicand N is N/1; the lines satisfy alpha^2 = (p/q) beta^2.
struct Radicand {
  BigInt p;
  BigInt q;

  Radicand(BigInt num, BigInt den = 1);

  BigInt discriminant() const { return p * q; }  // D, the integer under the root
  Rational ratio() const { return make_rational(p, q); }
  bool is_integer() const { return q == 1; }
  bool is_square() const;
  std::string str() const;  // "19", "7/3"

  bool operator==(const Radicand&) const = default;
};

/// One step of the expansion: lambda phi = scale * alpha - mu * beta, where
/// scale is the radicand denominator (1 for an integer radicand).
struct AnthState {
  BigInt mu;
  BigInt lambda;
  std::size_t step_index = 0;  // 1-based

  friend bool operator==(const AnthState& a, const AnthState& b) {
    return a.mu == b.mu && a.lambda == b.lambda;
  }
};

struct StepLimit {
  std::optional<std::uint64_t> max_steps;  // emitted quotients; unset = default bound
  std::optional<std::size_t> state_cap;    // states kept in Expansion::states

  // Reads ANTH_MAX_STEPS when set; otherwise leaves the default bound.
  static StepLimit from_env();
};

class StepLimitExceeded : public std::runtime_error {
public:
  StepLimitExceeded(std::uint64_t limit, const std::string& what_input);
  std::uint64_t limit() const { return limit_; }

private:
  std::uint64_t limit_;
};

enum class Origin { square_root, general_surd, rational };

struct Expansion {
  std::vector<BigInt> preperiod;
  std::vector<BigInt> period;
  bool terminated = false;
  // states[i] is the state produced with quotient i (0-based over the full
  // quotient list preperiod ++ period).
  std::vector<AnthState> states;
  bool states_complete = true;

  Origin origin = Origin::rational;
  BigInt discriminant;  // D for irrational expansions
  BigInt scale = 1;     // the alpha coefficient numerator of every state line
  std::optional<Radicand> radicand;  // set for square_root expansions

  std::size_t period_length() const { return period.size(); }
  // i-th quotient of the infinite (or finite) expansion, cycling the period.
  const BigInt& quotient(std::size_t i) const;
  std::vector<BigInt> quotients(std::size_t count) const;
  bool operator==(const Expansion&) const = default;
};

struct IncrementFactor {
  AnthState state;
  // (scale alpha - mu beta) / lambda
  bookx::SurdLine line(const Radicand& r) const;
};

// Upper bound on distinct (mu, lambda) states: isqrt(D) * (D - 1). D >= 2.
BigInt pigeonhole_bound(const BigInt& discriminant);

// sqrt(N); for a perfect square the result is terminated.
Expansion expand_sqrt(const BigInt& n, const StepLimit& limits = {});
// sqrt(p/q); the commensurable-in-power-only generalization.
Expansion expand_sqrt(const Radicand& r, const StepLimit& limits = {});

// Any (normalized) quadratic surd. Eventually periodic; the split between
// preperiod and period is at the first complete quotient that recurs.
Expansion expand_surd(const QuadraticSurd& s, const StepLimit& limits = {});

// Finite expansion of a rational number (floor-based, so the last quotient
// may be 1).
std::vector<BigInt> expand_rational(const Rational& x);

// Increment factors phi_1 .. phi_{l+1} recorded in a square-root expansion.
// Throws std::invalid_argument if e was not produced by expand_sqrt(r).
std::vector<IncrementFactor> increment_factors(const Expansion& e, const Radicand& r);

// Remainders e_1 .. e_count of alpha against beta as exact lines; checks
// 0 < e_{k+1} < e_k with sign_of and throws std::logic_error otherwise.
std::vector<bookx::SurdLine> remainders(const Radicand& r, std::size_t count);

// Hash index over (a, b) integer pairs, with a 64-bit fast path.
class StateIndex {
public:
  // Returns the stored index if the key exists, otherwise inserts it.
  std::optional<std::size_t> find_or_insert(const BigInt& a, const BigInt& b, std::size_t index);
  std::size_t size() const { return small_.size() + big_.size(); }

private:
  struct PairHash {
    std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& k) const noexcept;
    std::size_t operator()(const std::pair<BigInt, BigInt>& k) const noexcept;
  };
  std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::size_t, PairHash> small_;
  std::unordered_map<std::pair<BigInt, BigInt>, std::size_t, PairHash> big_;
};

}  // namespace anth
