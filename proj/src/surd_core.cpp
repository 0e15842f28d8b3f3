#include "anth/surd_core.hpp"

#include <ostream>
#include <sstream>

namespace anth {

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw std::domain_error("isqrt of a negative integer");
  if (n < 2) return n;

  // Start above the root: 2^ceil(bits/2) > sqrt(n). Newton's iterates then
  // decrease monotonically to floor(sqrt(n)).
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  BigInt x;
  mpz_ui_pow_ui(x.get_mpz_t(), 2, (bits + 1) / 2);
  while (true) {
    BigInt y = (x + n / x) / 2;
    if (y >= x) break;
    x = std::move(y);
  }
  while (x * x > n) --x;
  while ((x + 1) * (x + 1) <= n) ++x;
  return x;
}

bool is_perfect_square(const BigInt& n) {
  if (n < 0) return false;
  const BigInt r = isqrt(n);
  return r * r == n;
}

bool is_rational_square(const Rational& r) {
  return is_perfect_square(r.get_num()) && is_perfect_square(r.get_den());
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b == 0) throw std::domain_error("division by zero");
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) {
  if (b == 0) throw std::domain_error("division by zero");
  BigInt out;
  mpz_cdiv_q(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

const char* to_string(Sign s) {
  switch (s) {
    case Sign::negative: return "negative";
    case Sign::zero: return "zero";
    case Sign::positive: return "positive";
  }
  return "?";
}

QuadraticSurd::QuadraticSurd(BigInt p, BigInt d, BigInt q)
    : p_(std::move(p)), d_(std::move(d)), q_(std::move(q)) {
  if (d_ < 0) throw std::domain_error("negative radicand");
  if (q_ == 0) throw std::domain_error("zero denominator");
  rational_ = is_perfect_square(d_);
}

bool QuadraticSurd::is_normalized() const {
  return mpz_divisible_p(BigInt(d_ - p_ * p_).get_mpz_t(), q_.get_mpz_t()) != 0;
}

Rational QuadraticSurd::rational_value() const {
  if (!rational_) throw std::logic_error("surd is irrational: " + str());
  return make_rational(p_ + isqrt(d_), q_);
}

std::string QuadraticSurd::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const QuadraticSurd& s) {
  return os << '(' << s.p() << "+sqrt(" << s.d() << "))/" << s.q();
}

QuadraticSurd normalize(const QuadraticSurd& s) {
  if (s.is_normalized()) return s;
  const BigInt aq = abs(s.q());
  return QuadraticSurd(s.p() * aq, s.d() * s.q() * s.q(), s.q() * aq);
}

namespace {

// Sign of s1*sqrt(x1) + s2*sqrt(x2) for x1, x2 >= 0 and s1, s2 in {-1, +1}.
int root_pair_sign(int s1, const Rational& x1, int s2, const Rational& x2) {
  const int a1 = x1 == 0 ? 0 : s1;
  const int a2 = x2 == 0 ? 0 : s2;
  if (a1 >= 0 && a2 >= 0) return (a1 > 0 || a2 > 0) ? 1 : 0;
  if (a1 <= 0 && a2 <= 0) return -1;
  const int c = cmp(x1, x2);
  if (c == 0) return 0;
  return c > 0 ? a1 : a2;
}

}  // namespace

bool same_value(const QuadraticSurd& a, const QuadraticSurd& b) {
  // pa/qa - pb/qb == sb sqrt(U) - sa sqrt(V), U = db/qb^2, V = da/qa^2.
  const Rational lhs = make_rational(a.p(), a.q()) - make_rational(b.p(), b.q());
  const Rational u = make_rational(b.d(), b.q() * b.q());
  const Rational v = make_rational(a.d(), a.q() * a.q());
  const int sa = sgn(a.q());
  const int sb = sgn(b.q());
  if (root_pair_sign(sb, u, -sa, v) != sgn(lhs)) return false;
  // Both sides share a sign; compare squares:
  // lhs^2 == u + v - 2 sa sb sqrt(uv)  <=>  2 sa sb sqrt(uv) == u + v - lhs^2.
  const Rational t = u + v - lhs * lhs;
  const Rational uv = u * v;
  if (uv == 0) return t == 0;
  if (sgn(t) != sa * sb) return false;
  return t * t == 4 * uv;
}

BigInt floor_surd(const QuadraticSurd& s) {
  const BigInt r = isqrt(s.d());
  if (s.q() > 0) {
    // floor(x / q) == floor(floor(x) / q) for integer q > 0.
    return floor_div(s.p() + r, s.q());
  }
  // x / q with q < 0 is -(x / |q|); floor(-y) = -ceil(y) and
  // ceil(y / |q|) == ceil(ceil(y) / |q|).
  const BigInt ceil_x = s.p() + r + (s.is_rational() ? 0 : 1);
  return -ceil_div(ceil_x, -s.q());
}

Sign sign_of(const Rational& c_a, const Rational& c_b, const Rational& ratio) {
  if (ratio <= 0) throw std::domain_error("sign_of: ratio must be positive");
  if (is_rational_square(ratio)) {
    throw std::domain_error("sign_of: ratio is a rational square; use the rational path");
  }
  const int sa = sgn(c_a);
  const int sb = sgn(c_b);
  if (sa >= 0 && sb >= 0) return (sa > 0 || sb > 0) ? Sign::positive : Sign::zero;
  if (sa <= 0 && sb <= 0) return Sign::negative;
  // Mixed signs: compare |c_a| alpha against |c_b| beta through squares.
  // ratio is not a square, so the two magnitudes are never equal.
  const int c = cmp(c_a * c_a * ratio, c_b * c_b);
  return (c > 0 ? sa : sb) > 0 ? Sign::positive : Sign::negative;
}

std::size_t BigIntHash::operator()(const BigInt& v) const noexcept {
  const std::size_t low = mpz_getlimbn(v.get_mpz_t(), 0);
  const std::size_t size = static_cast<std::size_t>(v.get_mpz_t()->_mp_size);
  return low * 0x9E3779B97F4A7C15ULL ^ size;
}

}  // namespace anth
