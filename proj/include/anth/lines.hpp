#pragma once

// Symbolic lines and areas over the basis (alpha, beta), alpha^2 = r beta^2.
//
// A SurdLine is c_alpha * alpha + c_beta * beta with rational
// coefficients. Multiplying two lines gives a SurdArea, kept canonical by
// rewriting alpha^2 as r * beta^2, so an area is c_ab * alpha*beta +
// c_bb * beta^2. Two areas are equal exactly when their coefficients are,
// which is the cross-multiplied form of an equality of ratios.

#include "anth/surd_core.hpp"

#include <iosfwd>
#include <string>

namespace anth::bookx {

class SurdLine {
public:
  // ratio must be positive and not the square of a rational.
  SurdLine(Rational c_alpha, Rational c_beta, Rational ratio);

  // (alpha - mu beta) / lambda
  static SurdLine apotome_form(const BigInt& mu, const BigInt& lambda, const Rational& ratio);
  static SurdLine beta(const Rational& ratio, const Rational& multiple = 1);

  const Rational& c_alpha() const { return c_alpha_; }
  const Rational& c_beta() const { return c_beta_; }
  const Rational& ratio() const { return ratio_; }

  bool is_zero() const { return c_alpha_ == 0 && c_beta_ == 0; }
  Sign sign() const;

  SurdLine operator+(const SurdLine& o) const;
  SurdLine operator-(const SurdLine& o) const;
  SurdLine operator-() const;
  SurdLine scaled(const Rational& k) const;

  friend bool operator==(const SurdLine& a, const SurdLine& b) {
    return a.c_alpha_ == b.c_alpha_ && a.c_beta_ == b.c_beta_ && a.ratio_ == b.ratio_;
  }

private:
  Rational c_alpha_;
  Rational c_beta_;
  Rational ratio_;
};

struct SurdArea {
  Rational c_ab;  // coefficient of alpha * beta
  Rational c_bb;  // coefficient of beta^2

  friend bool operator==(const SurdArea&, const SurdArea&) = default;
};

enum class LineKind { apotome, binomial, rational_multiple, other };

const char* to_string(LineKind k);

// Throws std::invalid_argument on mismatched ratios.
SurdArea line_mul(const SurdLine& u, const SurdLine& v);

// Apotome <-> line of two names: flips the sign of the beta coefficient.
SurdLine conjugate(const SurdLine& u);

// v with u * v = beta^2 exactly. Throws std::domain_error for the zero line.
SurdLine inverse_wrt_beta_squared(const SurdLine& u);

LineKind classify(const SurdLine& u);

// a1 / a2 == b1 / b2, decided as a1 * b2 == a2 * b1.
bool logos_cross_check(const SurdLine& a1, const SurdLine& a2, const SurdLine& b1,
                       const SurdLine& b2);

// floor(u / beta): how many times beta fits in u (negative for negative u).
BigInt floor_in_beta(const SurdLine& u);

// The same value as a quadratic surd (p + sqrt d) / q in units of beta.
QuadraticSurd to_surd(const SurdLine& u);

// "alpha - 7 beta", "(alpha + 3 beta)/9", "326 alpha - 1421 beta" ...
std::string render(const SurdLine& u);
std::string render(const SurdArea& a);

std::ostream& operator<<(std::ostream& os, const SurdLine& u);
std::ostream& operator<<(std::ostream& os, const SurdArea& a);

}  // namespace anth::bookx
