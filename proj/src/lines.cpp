#include "anth/lines.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace anth::bookx {

namespace {

void require_same_ratio(const SurdLine& u, const SurdLine& v) {
  if (u.ratio() != v.ratio()) {
    throw std::invalid_argument("lines over different radicand ratios");
  }
}

// Appends "k name" with sign handling; first term has no leading " + ".
void append_term(std::ostringstream& os, const Rational& k, const char* name, bool& first) {
  if (k == 0) return;
  const Rational mag = abs(k);
  if (first) {
    if (k < 0) os << '-';
  } else {
    os << (k < 0 ? " - " : " + ");
  }
  if (mag != 1) os << mag << ' ';
  os << name;
  first = false;
}

}  // namespace

SurdLine::SurdLine(Rational c_alpha, Rational c_beta, Rational ratio)
    : c_alpha_(std::move(c_alpha)), c_beta_(std::move(c_beta)), ratio_(std::move(ratio)) {
  c_alpha_.canonicalize();
  c_beta_.canonicalize();
  ratio_.canonicalize();
  if (ratio_ <= 0) throw std::domain_error("radicand ratio must be positive");
  if (is_rational_square(ratio_)) {
    throw std::domain_error("radicand ratio is a rational square; lines would be commensurable");
  }
}

SurdLine SurdLine::apotome_form(const BigInt& mu, const BigInt& lambda, const Rational& ratio) {
  return SurdLine(make_rational(1, lambda), make_rational(-mu, lambda), ratio);
}

SurdLine SurdLine::beta(const Rational& ratio, const Rational& multiple) {
  return SurdLine(0, multiple, ratio);
}

Sign SurdLine::sign() const { return sign_of(c_alpha_, c_beta_, ratio_); }

SurdLine SurdLine::operator+(const SurdLine& o) const {
  require_same_ratio(*this, o);
  return SurdLine(c_alpha_ + o.c_alpha_, c_beta_ + o.c_beta_, ratio_);
}

SurdLine SurdLine::operator-(const SurdLine& o) const {
  require_same_ratio(*this, o);
  return SurdLine(c_alpha_ - o.c_alpha_, c_beta_ - o.c_beta_, ratio_);
}

SurdLine SurdLine::operator-() const { return SurdLine(-c_alpha_, -c_beta_, ratio_); }

SurdLine SurdLine::scaled(const Rational& k) const {
  return SurdLine(c_alpha_ * k, c_beta_ * k, ratio_);
}

const char* to_string(LineKind k) {
  switch (k) {
    case LineKind::apotome: return "apotome";
    case LineKind::binomial: return "binomial";
    case LineKind::rational_multiple: return "rational_multiple";
    case LineKind::other: return "other";
  }
  return "?";
}

SurdArea line_mul(const SurdLine& u, const SurdLine& v) {
  require_same_ratio(u, v);
  SurdArea a;
  a.c_ab = u.c_alpha() * v.c_beta() + u.c_beta() * v.c_alpha();
  a.c_bb = u.c_alpha() * v.c_alpha() * u.ratio() + u.c_beta() * v.c_beta();
  return a;
}

SurdLine conjugate(const SurdLine& u) { return SurdLine(u.c_alpha(), -u.c_beta(), u.ratio()); }

SurdLine inverse_wrt_beta_squared(const SurdLine& u) {
  if (u.is_zero()) throw std::domain_error("the zero line has no inverse");
  // u * conj(u) = (c_a^2 r - c_b^2) beta^2, never zero since r is not a square.
  const Rational norm = u.c_alpha() * u.c_alpha() * u.ratio() - u.c_beta() * u.c_beta();
  return conjugate(u).scaled(1 / norm);
}

LineKind classify(const SurdLine& u) {
  if (u.c_alpha() == 0 || u.c_beta() == 0) return LineKind::rational_multiple;
  if (u.c_alpha() > 0 && u.c_beta() > 0) return LineKind::binomial;
  if (u.sign() == Sign::positive && (u.c_alpha() < 0) != (u.c_beta() < 0)) {
    return LineKind::apotome;
  }
  return LineKind::other;
}

bool logos_cross_check(const SurdLine& a1, const SurdLine& a2, const SurdLine& b1,
                       const SurdLine& b2) {
  require_same_ratio(a1, a2);
  require_same_ratio(a1, b1);
  require_same_ratio(a1, b2);
  return line_mul(a1, b2) == line_mul(a2, b1);
}

QuadraticSurd to_surd(const SurdLine& u) {
  // c_a sqrt(r) + c_b with c_a^2 r = x/y: sgn(c_a) sqrt(x y) / y + b1/b2
  //   = (b1 y + sgn(c_a) sqrt(b2^2 x y)) / (b2 y).
  const Rational sq = u.c_alpha() * u.c_alpha() * u.ratio();
  const BigInt& x = sq.get_num();
  const BigInt& y = sq.get_den();
  const BigInt& b1 = u.c_beta().get_num();
  const BigInt& b2 = u.c_beta().get_den();
  const BigInt d = b2 * b2 * x * y;
  if (u.c_alpha() >= 0) return QuadraticSurd(b1 * y, d, b2 * y);
  return QuadraticSurd(-b1 * y, d, -b2 * y);
}

BigInt floor_in_beta(const SurdLine& u) { return floor_surd(to_surd(u)); }

std::string render(const SurdLine& u) {
  // Pull a common denominator out so (alpha + 3 beta)/9 reads like the
  // Book X notation "9 psi = alpha + 3 beta".
  BigInt den;
  mpz_lcm(den.get_mpz_t(), u.c_alpha().get_den_mpz_t(), u.c_beta().get_den_mpz_t());
  const Rational a = u.c_alpha() * den;
  const Rational b = u.c_beta() * den;
  std::ostringstream os;
  bool first = true;
  append_term(os, a, "alpha", first);
  append_term(os, b, "beta", first);
  if (first) os << '0';
  if (den == 1) return os.str();
  if (a != 0 && b != 0) return "(" + os.str() + ")/" + den.get_str();
  return os.str() + "/" + den.get_str();
}

std::string render(const SurdArea& a) {
  std::ostringstream os;
  bool first = true;
  append_term(os, a.c_ab, "alpha*beta", first);
  append_term(os, a.c_bb, "beta^2", first);
  if (first) os << '0';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const SurdLine& u) { return os << render(u); }
std::ostream& operator<<(std::ostream& os, const SurdArea& a) { return os << render(a); }

}  // namespace anth::bookx
