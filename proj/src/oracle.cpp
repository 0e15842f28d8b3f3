#include "anth/oracle.hpp"

#include <algorithm>

namespace anth::oracle {

namespace {

// 1 / ((p + sqrt d) / q) by multiplying through with the conjugate
// p - sqrt d, then cancelling the largest obvious common factor.
QuadraticSurd reciprocal(const BigInt& p, const BigInt& d, const BigInt& q) {
  // q / (p + sqrt d) = q (sqrt d - p) / (d - p^2)
  //                  = (-q p + sgn(q) sqrt(q^2 d)) / (d - p^2)
  BigInt num_p = -q * p;
  BigInt num_d = q * q * d;
  BigInt den = d - p * p;
  if (q < 0) {
    // Keep the root positive: negate numerator and denominator.
    num_p = -num_p;
    den = -den;
  }
  BigInt g;
  mpz_gcd(g.get_mpz_t(), num_p.get_mpz_t(), den.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_mpz_t());
  if (g > 1) {
    num_p /= g;
    den /= g;
    num_d /= g * g;
  }
  return normalize(QuadraticSurd(num_p, num_d, den));
}

}  // namespace

std::vector<BigInt> oracle_expand(const QuadraticSurd& s, std::size_t steps) {
  std::vector<BigInt> out;
  QuadraticSurd x = normalize(s);

  if (x.is_rational()) {
    Rational v = x.rational_value();
    while (out.size() < steps) {
      const BigInt k = floor_surd(QuadraticSurd(v.get_num(), 0, v.get_den()));
      out.push_back(k);
      const Rational rest = v - k;
      if (rest == 0) break;
      v = 1 / rest;
    }
    return out;
  }

  while (out.size() < steps) {
    const BigInt k = floor_surd(x);
    out.push_back(k);
    // x - k = (p - k q + sqrt d) / q, strictly between 0 and 1.
    x = reciprocal(x.p() - k * x.q(), x.d(), x.q());
  }
  return out;
}

bool oracle_is_palindrome(const std::vector<BigInt>& seq) {
  return std::equal(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(seq.size() / 2),
                    seq.rbegin());
}

}  // namespace anth::oracle
