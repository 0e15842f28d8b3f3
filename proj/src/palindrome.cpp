#include "anth/palindrome.hpp"

#include <map>
#include <set>

namespace anth::palindrome {

using bookx::SurdArea;
using bookx::SurdLine;

namespace {

const SurdArea kBetaSquared{0, 1};

bool is_beta_squared(const SurdLine& u, const SurdLine& v) {
  return bookx::line_mul(u, v) == kBetaSquared;
}

SurdLine state_line(const BigInt& mu, const BigInt& lambda, const Radicand& r) {
  return SurdLine(make_rational(r.q, lambda), make_rational(-mu, lambda), r.ratio());
}

bool strictly_between_zero_and_beta(const SurdLine& u) {
  const SurdLine beta = SurdLine::beta(u.ratio());
  return u.sign() == Sign::positive && (beta - u).sign() == Sign::positive;
}

// The reflection walk: starting from the coincidence phi_a = omega_b found
// by find_reflection, divide beta^2 / phi_a by beta and compare the quotient
// and remainder with both the phi side and the omega side, finishing on
// omega_1 (phi_1 + 2 m beta) = beta^2.
bool reflection_walk(const Expansion& e, const Radicand& r, const BigInt& m, const Reflection& refl,
                     const std::vector<IncrementFactor>& phis, const std::vector<OmegaState>& omegas) {
  const std::size_t l = e.period.size();
  const SurdLine beta = SurdLine::beta(r.ratio());
  auto phi = [&](std::size_t n) { return phis.at(n - 1).line(r); };
  auto omega = [&](std::size_t n) { return omegas.at(n - 1).line(r); };

  std::size_t a = refl.k;
  std::size_t b = refl.kind == ReflectionCase::I ? refl.k - 1 : refl.k;
  while (true) {
    if (a > l || b == 0) return false;
    if (!(phi(a) == omega(b))) return false;
    const SurdLine psi = bookx::inverse_wrt_beta_squared(phi(a));
    const BigInt quotient = bookx::floor_in_beta(psi);
    const SurdLine rest = psi - beta.scaled(quotient);
    if (quotient != e.quotient(a) || !(rest == phi(a + 1))) return false;
    if (b == 1) {
      // omega_1 (phi_1 + 2 m beta) = beta^2: the final quotient is 2m and
      // the next increment factor is phi_1 again.
      return quotient == 2 * m && rest == phi(1) && a == l;
    }
    if (quotient != e.quotient(b - 1) || !(rest == omega(b - 1))) return false;
    ++a;
    --b;
  }
}

// The same walk on (mu, lambda) pairs. Each phi_n and omega_n is determined
// by its pair, and the quotient and remainder of beta^2 / phi_a are I_a and
// phi_{a+1} by construction, so only the omega side needs comparing.
bool reflection_walk_integer(const Expansion& e, const BigInt& m, const Reflection& refl,
                             const std::vector<IncrementFactor>& phis,
                             const std::vector<OmegaState>& omegas) {
  const std::size_t l = e.period.size();
  auto same = [](const AnthState& phi, const OmegaState& w) {
    return phi.mu == w.mu && phi.lambda == w.lambda_next;
  };
  std::size_t a = refl.k;
  std::size_t b = refl.kind == ReflectionCase::I ? refl.k - 1 : refl.k;
  while (true) {
    if (a > l || b == 0) return false;
    if (!same(phis.at(a - 1).state, omegas.at(b - 1))) return false;
    if (b == 1) return e.quotient(a) == 2 * m && phis.at(a).state == phis.at(0).state && a == l;
    if (e.quotient(a) != e.quotient(b - 1) || !same(phis.at(a).state, omegas.at(b - 2))) return false;
    ++a;
    --b;
  }
}

// omega_n = (mu_n, lambda_{n+1}) with the integer forms of its defining
// identities: phi_n* omega_n = beta^2 iff lambda_n lambda_{n+1} = D - mu_n^2,
// and 0 < omega_n < beta iff mu_n^2 < D < (mu_n + lambda_{n+1})^2.
std::vector<OmegaState> omega_states(const Expansion& e, const std::vector<IncrementFactor>& phis) {
  std::vector<OmegaState> out;
  if (phis.size() < 2) return out;
  out.reserve(phis.size() - 1);
  const BigInt& d = e.discriminant;
  for (std::size_t n = 1; n < phis.size(); ++n) {
    const AnthState& cur = phis[n - 1].state;
    const BigInt& next_lambda = phis[n].state.lambda;
    const BigInt reach = cur.mu + next_lambda;
    if (cur.lambda * next_lambda != d - cur.mu * cur.mu || cur.mu * cur.mu >= d || reach * reach <= d) {
      throw std::logic_error("omega_" + std::to_string(n) + " fails its defining identities");
    }
    out.push_back(OmegaState{cur.mu, next_lambda, n});
  }
  return out;
}

}  // namespace

SurdLine OmegaState::line(const Radicand& r) const { return state_line(mu, lambda_next, r); }

const char* to_string(ReflectionCase c) { return c == ReflectionCase::I ? "I" : "II"; }

SurdArea beta_squared_residual(const SurdLine& u, const SurdLine& v) {
  SurdArea a = bookx::line_mul(u, v);
  a.c_bb -= 1;
  return a;
}

std::vector<OmegaState> omega_sequence(const Expansion& e, const Radicand& r) {
  const std::vector<IncrementFactor> phis = increment_factors(e, r);
  if (!e.states_complete) throw std::invalid_argument("omega_sequence needs the full state list");
  std::vector<OmegaState> out;
  if (phis.size() < 2) return out;
  out.reserve(phis.size() - 1);

  const SurdLine beta = SurdLine::beta(r.ratio());
  for (std::size_t n = 1; n < phis.size(); ++n) {
    OmegaState w{phis[n - 1].state.mu, phis[n].state.lambda, n};
    const SurdLine line = w.line(r);
    const SurdLine phi = phis[n - 1].line(r);
    if (!is_beta_squared(bookx::conjugate(phi), line)) {
      throw std::logic_error("omega_" + std::to_string(n) + " is not the inverse of phi_" +
                             std::to_string(n) + "*");
    }
    if (!strictly_between_zero_and_beta(line)) {
      throw std::logic_error("omega_" + std::to_string(n) + " is not between 0 and beta");
    }
    if (n == 1) {
      const BigInt m = e.quotient(0);
      if (!is_beta_squared(line, phi + beta.scaled(2 * m))) {
        throw std::logic_error("omega_1 (phi_1 + 2 m beta) != beta^2");
      }
    } else {
      const SurdLine prev = out.back().line(r);
      if (!is_beta_squared(line, beta.scaled(e.quotient(n - 1)) + prev)) {
        throw std::logic_error("omega_" + std::to_string(n) + " (I_" + std::to_string(n - 1) +
                               " beta + omega_" + std::to_string(n - 1) + ") != beta^2");
      }
    }
    out.push_back(std::move(w));
  }
  return out;
}

Reflection find_reflection(const std::vector<IncrementFactor>& phis,
                           const std::vector<OmegaState>& omegas) {
  // key -> (is_omega, index)
  std::map<std::pair<BigInt, BigInt>, std::pair<bool, std::size_t>> seen;
  const std::size_t n = std::min(phis.size(), omegas.size());
  for (std::size_t i = 1; i <= n; ++i) {
    const AnthState& phi = phis[i - 1].state;
    if (auto it = seen.find({phi.mu, phi.lambda}); it != seen.end()) {
      if (it->second != std::pair{true, i - 1}) {
        throw ReflectionFailure("phi_" + std::to_string(i) + " repeats an element other than omega_" +
                                std::to_string(i - 1));
      }
      return {ReflectionCase::I, i};
    }
    seen.emplace(std::pair{phi.mu, phi.lambda}, std::pair{false, i});

    const OmegaState& w = omegas[i - 1];
    if (auto it = seen.find({w.mu, w.lambda_next}); it != seen.end()) {
      if (it->second != std::pair{false, i}) {
        throw ReflectionFailure("omega_" + std::to_string(i) + " repeats an element other than phi_" +
                                std::to_string(i));
      }
      return {ReflectionCase::II, i};
    }
    seen.emplace(std::pair{w.mu, w.lambda_next}, std::pair{true, i});
  }
  throw ReflectionFailure("no reflection among the first " + std::to_string(n) +
                          " increment factors");
}

PalindromeReport verify_palindrome(const Expansion& e, const BigInt& m, Depth depth) {
  if (e.period.empty()) throw std::invalid_argument("verify_palindrome needs a non-empty period");
  const std::vector<BigInt>& p = e.period;
  const std::size_t l = p.size();

  PalindromeReport rep;
  rep.interior_palindromic = true;
  for (std::size_t i = 0; i + 1 < l; ++i) {
    const std::size_t j = l - 2 - i;
    if (i >= j) break;
    if (p[i] == p[j]) {
      rep.matched_pairs.emplace_back(i + 1, j + 1);
    } else {
      rep.interior_palindromic = false;
    }
  }
  rep.last_quotient_is_double = p.back() == 2 * m;
  rep.holds = rep.interior_palindromic && rep.last_quotient_is_double;

  if (e.origin == Origin::square_root && e.radicand && e.states_complete) {
    const Radicand& r = *e.radicand;
    const std::vector<IncrementFactor> phis = increment_factors(e, r);
    const bool symbolic = depth == Depth::symbolic;
    const std::vector<OmegaState> omegas = symbolic ? omega_sequence(e, r) : omega_states(e, phis);
    const Reflection refl = find_reflection(phis, omegas);
    rep.reflection_case = refl.kind;
    rep.center_index = refl.k;
    const bool omega_holds = symbolic ? reflection_walk(e, r, m, refl, phis, omegas)
                                      : reflection_walk_integer(e, m, refl, phis, omegas);
    rep.reflection_agrees = omega_holds == rep.holds;
    rep.holds = rep.holds && omega_holds;
  }
  return rep;
}

PeriodStats period_stats(const Expansion& e) {
  if (e.period.empty()) throw std::invalid_argument("period_stats needs a non-empty period");
  PeriodStats s;
  s.period_length = e.period.size();
  const std::size_t first = e.preperiod.size();
  if (!e.states_complete || e.states.size() < first + s.period_length) {
    throw std::invalid_argument("period_stats needs the states of the full period");
  }
  std::set<std::pair<BigInt, BigInt>> logoi;
  for (std::size_t i = first; i < first + s.period_length; ++i) {
    logoi.emplace(e.states[i].mu, e.states[i].lambda);
  }
  s.distinct_logoi = logoi.size();
  s.platonic_number = s.distinct_logoi + 1;
  return s;
}

}  // namespace anth::palindrome
