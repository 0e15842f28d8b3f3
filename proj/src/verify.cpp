#include "anth/verify.hpp"

#include "anth/convergents.hpp"
#include "anth/oracle.hpp"
#include "anth/palindrome.hpp"
#include "anth/trace.hpp"

#include <functional>
#include <optional>
#include <set>

namespace anth::verify {

namespace {

using Failure = std::optional<std::string>;

Check run_check(std::string name, const std::function<Failure()>& body) {
  Check c{std::move(name), false, {}};
  try {
    if (Failure f = body()) {
      c.detail = *f;
    } else {
      c.passed = true;
    }
  } catch (const std::exception& ex) {
    c.detail = std::string("exception: ") + ex.what();
  }
  return c;
}

std::string at(std::size_t k) { return " at k=" + std::to_string(k); }

}  // namespace

std::vector<Check> run_battery(const Radicand& r) {
  std::vector<Check> out;
  if (r.is_square()) {
    out.push_back(run_check("rational radicand terminates", [&]() -> Failure {
      const Expansion e = expand_sqrt(r);
      if (!e.terminated || !e.period.empty()) return "square radicand did not terminate";
      return std::nullopt;
    }));
    return out;
  }

  if (r.p <= r.q) throw std::invalid_argument("the battery needs a radicand greater than 1");
  const BigInt d = r.discriminant();
  const Expansion e = expand_sqrt(r);
  const std::size_t l = e.period.size();
  const BigInt m = e.preperiod.at(0);
  const auto& st = e.states;

  out.push_back(run_check("state recurrences for lambda and mu", [&]() -> Failure {
    for (std::size_t k = 1; k < st.size(); ++k) {
      const BigInt lhs = st[k].lambda * st[k - 1].lambda;
      if (lhs != d - st[k - 1].mu * st[k - 1].mu) return "lambda_k lambda_{k-1} != D - mu_{k-1}^2" + at(k + 1);
      if (st[k].mu + st[k - 1].mu != e.quotient(k) * st[k].lambda) {
        return "mu_k + mu_{k-1} != I_{k-1} lambda_k" + at(k + 1);
      }
    }
    return std::nullopt;
  }));

  out.push_back(run_check("pigeonhole bounds", [&]() -> Failure {
    for (const AnthState& s : st) {
      if (s.lambda < 1 || s.lambda >= d) return "lambda out of [1, D)" + at(s.step_index);
      if (s.mu * s.mu >= d) return "mu^2 >= D" + at(s.step_index);
    }
    if (BigInt(l) > pigeonhole_bound(d)) return std::string("period exceeds the pigeonhole bound");
    return std::nullopt;
  }));

  out.push_back(run_check("minimal period", [&]() -> Failure {
    std::set<std::pair<BigInt, BigInt>> seen;
    for (std::size_t i = 0; i < l; ++i) {
      if (!seen.emplace(st[i].mu, st[i].lambda).second) return "state repeats inside the period" + at(i + 1);
    }
    if (!(st[l] == st[0])) return std::string("state after the period differs from phi_1");
    return std::nullopt;
  }));

  out.push_back(run_check("increment factors: 0 < phi < beta, phi_n (I_n beta + phi_{n+1}) = beta^2",
                          [&]() -> Failure {
    const auto phis = increment_factors(e, r);
    const bookx::SurdLine beta = bookx::SurdLine::beta(r.ratio());
    for (std::size_t n = 0; n < phis.size(); ++n) {
      const bookx::SurdLine phi = phis[n].line(r);
      if (phi.sign() != Sign::positive || (beta - phi).sign() != Sign::positive) return "phi not in (0, beta)" + at(n + 1);
      // Integer form of phi < beta: sqrt(D) < mu + lambda.
      if (d >= (phis[n].state.mu + phis[n].state.lambda) * (phis[n].state.mu + phis[n].state.lambda)) {
        return "D >= (mu + lambda)^2" + at(n + 1);
      }
      if (n + 1 < phis.size()) {
        const auto residual = palindrome::beta_squared_residual(
            phi, beta.scaled(e.quotient(n + 1)) + phis[n + 1].line(r));
        if (!(residual == bookx::SurdArea{0, 0})) return "phi_n (I_n beta + phi_{n+1}) residual " + bookx::render(residual) + at(n + 1);
      }
    }
    return std::nullopt;
  }));

  out.push_back(run_check("omega sequence identities", [&]() -> Failure {
    const auto omegas = palindrome::omega_sequence(e, r);
    if (omegas.size() != l) return std::string("expected one omega per period step");
    return std::nullopt;
  }));

  out.push_back(run_check("palindromic period (quotients and reflection)", [&]() -> Failure {
    const auto rep = palindrome::verify_palindrome(e, m);
    if (!rep.interior_palindromic) return std::string("interior is not a palindrome");
    if (!rep.last_quotient_is_double) return std::string("last quotient is not 2m");
    if (!rep.reflection_agrees.value_or(false)) return std::string("reflection walk disagrees");
    return std::nullopt;
  }));

  out.push_back(run_check("Euler trace matches the engine", [&]() -> Failure {
    const auto t = bookx::euler_trace(r);
    if (t.quotients() != e.period) return std::string("trace quotients differ from the engine period");
    if (t.period_length() != l || t.rows.back().repeats != std::size_t{1}) {
      return std::string("trace did not close on phi_1");
    }
    return std::nullopt;
  }));

  out.push_back(run_check("oracle agrees on three periods", [&]() -> Failure {
    const std::size_t n = e.preperiod.size() + 3 * l;
    const auto ref = oracle::oracle_expand(QuadraticSurd(0, d, r.q), n);
    if (ref != e.quotients(n)) return std::string("oracle quotients differ");
    return std::nullopt;
  }));

  out.push_back(run_check("purely periodic tail", [&]() -> Failure {
    const Expansion tail = expand_surd(QuadraticSurd(st[0].mu, d, st[1].lambda));
    if (!tail.preperiod.empty() || tail.period != e.period) return std::string("tail is not purely periodic with the same period");
    return std::nullopt;
  }));

  out.push_back(run_check("Logos cross-product over period multiples", [&]() -> Failure {
    const auto es = remainders(r, 2 * l + 2);
    const bookx::SurdLine beta = bookx::SurdLine::beta(r.ratio());
    // e_0 = beta; e_k / e_{k+1} = e_{k+l} / e_{k+l+1}
    auto rem = [&](std::size_t k) { return k == 0 ? beta : es.at(k - 1); };
    for (std::size_t k = 0; k + l + 1 <= es.size(); ++k) {
      if (!bookx::logos_cross_check(rem(k), rem(k + 1), rem(k + l), rem(k + l + 1))) {
        return "cross-product differs" + at(k);
      }
    }
    return std::nullopt;
  }));

  out.push_back(run_check("convergent quality p_k^2 - D' q_k^2 = (-1)^{k+1} lambda_{k+2}",
                          [&]() -> Failure {
    // For sqrt(p/q): q p_k^2 - p q_k^2 = (-1)^{k+1} lambda_{k+2} (scaled by q).
    const auto cs = convergents(e, 2 * l);
    for (const Convergent& c : cs) {
      const BigInt value = r.q * c.p * c.p - r.p * c.q * c.q;
      const BigInt& lambda = e.states[(c.index + 1) % l].lambda;  // lambda_{k+2}
      const BigInt expect = c.index % 2 == 0 ? BigInt(-lambda) : lambda;
      if (value != expect) return "quality mismatch" + at(c.index);
    }
    return std::nullopt;
  }));

  if (r.is_integer()) {
    out.push_back(run_check("Pell fundamental solution", [&]() -> Failure {
      const PellSolution s = pell_fundamental(e, r.p);
      if (s.x * s.x - r.p * s.y * s.y != 1) return std::string("x^2 - N y^2 != 1");
      for (const Convergent& c : convergents(e, 2 * l)) {
        if (c.q >= s.y) break;
        if (c.p * c.p - r.p * c.q * c.q == 1) return "smaller solution at convergent" + at(c.index);
      }
      return std::nullopt;
    }));
  }
  return out;
}

bool all_passed(const std::vector<Check>& checks) {
  for (const Check& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

}  // namespace anth::verify
