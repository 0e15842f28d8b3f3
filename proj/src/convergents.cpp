#include "anth/convergents.hpp"

namespace anth {

std::vector<Convergent> convergents(const Expansion& e, std::size_t count) {
  const std::vector<BigInt> quotients = e.quotients(count);
  std::vector<Convergent> out;
  out.reserve(quotients.size());
  BigInt p_prev = 1, q_prev = 0;   // index k-1
  BigInt p_prev2 = 0, q_prev2 = 1; // index k-2
  for (std::size_t k = 0; k < quotients.size(); ++k) {
    BigInt p = quotients[k] * p_prev + p_prev2;
    BigInt q = quotients[k] * q_prev + q_prev2;
    out.push_back(Convergent{p, q, k});
    p_prev2 = std::move(p_prev);
    q_prev2 = std::move(q_prev);
    p_prev = std::move(p);
    q_prev = std::move(q);
  }
  return out;
}

PellSolution pell_fundamental(const BigInt& n) { return pell_fundamental(expand_sqrt(n), n); }

PellSolution pell_fundamental(const Expansion& e, const BigInt& n) {
  if (is_perfect_square(n)) throw std::domain_error("Pell equation needs a non-square N");
  if (e.origin != Origin::square_root || !e.radicand || !(*e.radicand == Radicand(n))) {
    throw std::invalid_argument("expansion is not sqrt(" + n.get_str() + ")");
  }
  const std::size_t l = e.period.size();
  const bool odd = l % 2 == 1;
  const std::vector<Convergent> cs = convergents(e, odd ? 2 * l : l);

  PellSolution s;
  s.x = cs.back().p;
  s.y = cs.back().q;
  if (s.x * s.x - n * s.y * s.y != 1) {
    throw std::logic_error("period-end convergent does not solve x^2 - " + n.get_str() + " y^2 = 1");
  }
  if (odd) {
    const Convergent& c = cs[l - 1];
    if (c.p * c.p - n * c.q * c.q != -1) {
      throw std::logic_error("odd period without a solution of x^2 - N y^2 = -1");
    }
    s.negative = std::pair{c.p, c.q};
  }
  return s;
}

}  // namespace anth
