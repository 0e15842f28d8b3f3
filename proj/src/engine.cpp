#include "anth/engine.hpp"

#include <cstdlib>
#include <limits>

namespace anth {

namespace {

std::uint64_t clamp_u64(const BigInt& v) {
  if (v < 0) return 0;
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 63) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(mpz_get_ui(v.get_mpz_t()));
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b
             ? std::numeric_limits<std::uint64_t>::max()
             : a + b;
}

// (D - mu^2) / lambda, which must be exact.
BigInt next_lambda(const BigInt& d, const BigInt& mu, const BigInt& lambda) {
  BigInt num = d - mu * mu;
  if (!mpz_divisible_p(num.get_mpz_t(), lambda.get_mpz_t())) {
    throw std::logic_error("state recurrence lost divisibility: lambda " + lambda.get_str() +
                           " does not divide D - mu^2 = " + num.get_str());
  }
  BigInt out;
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), lambda.get_mpz_t());
  return out;
}

Expansion rational_expansion(const Rational& x) {
  Expansion e;
  e.origin = Origin::rational;
  e.terminated = true;
  e.preperiod = expand_rational(x);
  return e;
}

void push_state(Expansion& e, const StepLimit& limits, AnthState s) {
  if (limits.state_cap && e.states.size() >= *limits.state_cap) {
    e.states_complete = false;
    return;
  }
  e.states.push_back(std::move(s));
}

}  // namespace

Radicand::Radicand(BigInt num, BigInt den) : p(std::move(num)), q(std::move(den)) {
  if (q == 0) throw std::domain_error("radicand with zero denominator");
  Rational r = make_rational(p, q);
  if (r <= 0) throw std::domain_error("radicand must be positive");
  p = r.get_num();
  q = r.get_den();
}

bool Radicand::is_square() const { return is_perfect_square(p) && is_perfect_square(q); }

std::string Radicand::str() const {
  return q == 1 ? p.get_str() : p.get_str() + "/" + q.get_str();
}

StepLimit StepLimit::from_env() {
  StepLimit l;
  if (const char* v = std::getenv("ANTH_MAX_STEPS"); v != nullptr && *v != '\0') {
    char* end = nullptr;
    const unsigned long long n = std::strtoull(v, &end, 10);
    if (end != nullptr && *end == '\0' && n > 0) l.max_steps = n;
  }
  return l;
}

StepLimitExceeded::StepLimitExceeded(std::uint64_t limit, const std::string& what_input)
    : std::runtime_error("step limit " + std::to_string(limit) + " exhausted expanding " +
                         what_input + " without a repeated state"),
      limit_(limit) {}

const BigInt& Expansion::quotient(std::size_t i) const {
  if (i < preperiod.size()) return preperiod[i];
  if (period.empty()) throw std::out_of_range("finite expansion has no quotient " + std::to_string(i));
  return period[(i - preperiod.size()) % period.size()];
}

std::vector<BigInt> Expansion::quotients(std::size_t count) const {
  std::vector<BigInt> out;
  if (period.empty()) count = std::min(count, preperiod.size());
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(quotient(i));
  return out;
}

bookx::SurdLine IncrementFactor::line(const Radicand& r) const {
  return bookx::SurdLine(make_rational(r.q, state.lambda), make_rational(-state.mu, state.lambda),
                         r.ratio());
}

BigInt pigeonhole_bound(const BigInt& discriminant) {
  if (discriminant < 2) throw std::domain_error("pigeonhole bound needs D >= 2");
  return isqrt(discriminant) * (discriminant - 1);
}

std::vector<BigInt> expand_rational(const Rational& x) {
  std::vector<BigInt> out;
  BigInt num = x.get_num();
  BigInt den = x.get_den();
  while (den != 0) {
    BigInt a = floor_div(num, den);
    BigInt rem = num - a * den;
    out.push_back(std::move(a));
    num = std::move(den);
    den = std::move(rem);
  }
  return out;
}

Expansion expand_sqrt(const BigInt& n, const StepLimit& limits) {
  return expand_sqrt(Radicand(n), limits);
}

Expansion expand_sqrt(const Radicand& r, const StepLimit& limits) {
  const BigInt d = r.discriminant();
  const BigInt root = isqrt(d);
  if (root * root == d) return rational_expansion(make_rational(root, r.q));

  const std::uint64_t max_steps =
      limits.max_steps.value_or(saturating_add(clamp_u64(pigeonhole_bound(d)), 2));

  Expansion e;
  e.origin = Origin::square_root;
  e.discriminant = d;
  e.scale = r.q;
  e.radicand = r;

  // Step 1: alpha = m beta + phi_1 with lambda_1 = q, mu_1 = m q.
  const BigInt m = root / r.q;
  BigInt mu = m * r.q;
  BigInt lambda = r.q;
  std::vector<BigInt> quotients{m};
  push_state(e, limits, AnthState{mu, lambda, 1});

  StateIndex seen;
  seen.find_or_insert(mu, lambda, 0);

  for (std::size_t step = 1;; ++step) {
    if (quotients.size() >= max_steps) throw StepLimitExceeded(max_steps, "sqrt(" + r.str() + ")");
    // Invert phi_k through its conjugate: psi_k = (scale alpha + mu_k beta) / lambda_{k+1}.
    BigInt lambda_next = next_lambda(d, mu, lambda);
    BigInt quotient = (root + mu) / lambda_next;
    BigInt mu_next = quotient * lambda_next - mu;
    quotients.push_back(std::move(quotient));
    mu = std::move(mu_next);
    lambda = std::move(lambda_next);
    push_state(e, limits, AnthState{mu, lambda, step + 1});

    if (auto first = seen.find_or_insert(mu, lambda, step)) {
      const auto split = static_cast<std::ptrdiff_t>(*first + 1);
      e.preperiod.assign(quotients.begin(), quotients.begin() + split);
      e.period.assign(quotients.begin() + split, quotients.end());
      return e;
    }
  }
}

Expansion expand_surd(const QuadraticSurd& s, const StepLimit& limits) {
  if (s.is_rational()) return rational_expansion(s.rational_value());
  if (!s.is_normalized()) throw std::invalid_argument("expand_surd needs a normalized surd: " + s.str());

  const BigInt& d = s.d();
  const BigInt root = isqrt(d);
  const std::uint64_t max_steps = limits.max_steps.value_or(
      clamp_u64(BigInt(pigeonhole_bound(d) * 10)));

  Expansion e;
  e.origin = Origin::general_surd;
  e.discriminant = d;
  e.scale = 1;

  // Complete quotient (P + sqrt D) / Q; index i means it produces quotient i.
  BigInt p = s.p();
  BigInt q = s.q();
  StateIndex seen;
  seen.find_or_insert(p, q, 0);
  std::vector<BigInt> quotients;

  for (std::size_t step = 0;; ++step) {
    if (quotients.size() >= max_steps) throw StepLimitExceeded(max_steps, s.str());
    BigInt a = q > 0 ? floor_div(p + root, q) : BigInt(-ceil_div(p + root + 1, -q));
    BigInt p_next = a * q - p;
    BigInt q_next = next_lambda(d, p_next, q);
    quotients.push_back(std::move(a));
    // Remainder after this quotient: (sqrt D - p_next) / q.
    push_state(e, limits, AnthState{p_next, q, step + 1});
    p = std::move(p_next);
    q = std::move(q_next);

    if (auto first = seen.find_or_insert(p, q, step + 1)) {
      const auto split = static_cast<std::ptrdiff_t>(*first);
      e.preperiod.assign(quotients.begin(), quotients.begin() + split);
      e.period.assign(quotients.begin() + split, quotients.end());
      return e;
    }
  }
}

std::vector<IncrementFactor> increment_factors(const Expansion& e, const Radicand& r) {
  if (e.origin != Origin::square_root || !e.radicand || !(*e.radicand == r)) {
    throw std::invalid_argument("expansion was not produced by expand_sqrt(" + r.str() + ")");
  }
  std::vector<IncrementFactor> out;
  out.reserve(e.states.size());
  for (const AnthState& s : e.states) out.push_back(IncrementFactor{s});
  return out;
}

std::vector<bookx::SurdLine> remainders(const Radicand& r, std::size_t count) {
  if (r.is_square()) throw std::domain_error("remainders need a non-square radicand");
  const Expansion e = expand_sqrt(r);
  const Rational ratio = r.ratio();

  std::vector<bookx::SurdLine> out;
  out.reserve(count);
  // e_{-1} = alpha, e_0 = beta, e_{k-1} = I_k e_k + e_{k+1}.
  bookx::SurdLine before(1, 0, ratio);
  bookx::SurdLine current = bookx::SurdLine::beta(ratio);
  for (std::size_t k = 0; k < count; ++k) {
    bookx::SurdLine next = before - current.scaled(e.quotient(k));
    if (next.sign() != Sign::positive || (current - next).sign() != Sign::positive) {
      throw std::logic_error("remainder e_" + std::to_string(k + 1) + " = " + bookx::render(next) +
                             " is not a proper anthyphairetic remainder");
    }
    out.push_back(next);
    before = std::move(current);
    current = std::move(next);
  }
  return out;
}

std::size_t StateIndex::PairHash::operator()(
    const std::pair<std::int64_t, std::int64_t>& k) const noexcept {
  const auto a = static_cast<std::uint64_t>(k.first);
  const auto b = static_cast<std::uint64_t>(k.second);
  return static_cast<std::size_t>((a * 0x9E3779B97F4A7C15ULL) ^ (b + 0x7F4A7C159E3779B9ULL + (a << 6)));
}

std::size_t StateIndex::PairHash::operator()(const std::pair<BigInt, BigInt>& k) const noexcept {
  const BigIntHash h;
  return h(k.first) * 31 ^ h(k.second);
}

std::optional<std::size_t> StateIndex::find_or_insert(const BigInt& a, const BigInt& b,
                                                      std::size_t index) {
  if (a.fits_slong_p() && b.fits_slong_p()) {
    auto [it, inserted] = small_.try_emplace({a.get_si(), b.get_si()}, index);
    if (inserted) return std::nullopt;
    return it->second;
  }
  auto [it, inserted] = big_.try_emplace({a, b}, index);
  if (inserted) return std::nullopt;
  return it->second;
}

}  // namespace anth
