#pragma once

// Exact arithmetic foundation: integer square roots, quadratic surds
// (p + sqrt(d)) / q, and exact floor/sign decisions on them.
//
// Everything here is immutable and pure. Integers are GMP mpz_class and
// rationals are mpq_class held in canonical form (gcd(num, den) = 1,
// den > 0).

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace anth {

using BigInt = mpz_class;
using Rational = mpq_class;

// Builds num/den in lowest terms. Throws std::domain_error on den == 0.
Rational make_rational(const BigInt& num, const BigInt& den = 1);

// Exact floor(sqrt(n)). Throws std::domain_error for negative n.
BigInt isqrt(const BigInt& n);

bool is_perfect_square(const BigInt& n);
bool is_rational_square(const Rational& r);

// Floor division toward negative infinity.
BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt ceil_div(const BigInt& a, const BigInt& b);

enum class Sign { negative = -1, zero = 0, positive = 1 };

constexpr Sign negate(Sign s) { return static_cast<Sign>(-static_cast<int>(s)); }
const char* to_string(Sign s);

/// The real number (p + sqrt(d)) / q.
///
/// A surd is "normalized" when q divides d - p^2; the continued-fraction
/// step recurrence relies on that divisibility to stay in integers.
/// Normalization scales (p, q, d) -> (p|q|, q|q|, d q^2) and so keeps the
/// sign of q. A perfect-square radicand makes the value rational.
class QuadraticSurd {
public:
  QuadraticSurd(BigInt p, BigInt d, BigInt q);

  const BigInt& p() const { return p_; }
  const BigInt& d() const { return d_; }
  const BigInt& q() const { return q_; }

  bool is_rational() const { return rational_; }
  bool is_normalized() const;

  // Exact value when is_rational(); throws std::logic_error otherwise.
  Rational rational_value() const;

  std::string str() const;

  friend bool operator==(const QuadraticSurd& a, const QuadraticSurd& b) {
    return a.p_ == b.p_ && a.d_ == b.d_ && a.q_ == b.q_;
  }

private:
  BigInt p_;
  BigInt d_;
  BigInt q_;
  bool rational_;
};

std::ostream& operator<<(std::ostream& os, const QuadraticSurd& s);

// Equal-valued surd with q | (d - p^2). Idempotent.
QuadraticSurd normalize(const QuadraticSurd& s);

// True iff the two surds denote the same real number (exact).
bool same_value(const QuadraticSurd& a, const QuadraticSurd& b);

// The unique integer f with f <= value(s) < f + 1. Exact for every sign of
// p, q and of the value; does not require a normalized surd.
BigInt floor_surd(const QuadraticSurd& s);

// Exact sign of c_a * alpha + c_b * beta where alpha^2 = ratio * beta^2 and
// alpha, beta > 0. ratio must be positive and not a rational square.
Sign sign_of(const Rational& c_a, const Rational& c_b, const Rational& ratio);

struct BigIntHash {
  std::size_t operator()(const BigInt& v) const noexcept;
};

}  // namespace anth
