#include "anth/trace.hpp"

#include <limits>
#include <map>
#include <sstream>

namespace anth::bookx {

namespace {

BigInt common_denominator(const SurdLine& u) {
  BigInt den;
  mpz_lcm(den.get_mpz_t(), u.c_alpha().get_den_mpz_t(), u.c_beta().get_den_mpz_t());
  return den;
}

// "5 psi_1 = alpha + 7 beta"
std::string named(const std::string& name, const SurdLine& u) {
  const BigInt den = common_denominator(u);
  std::string lhs = den == 1 ? name : den.get_str() + " " + name;
  return lhs + " = " + render(u.scaled(den));
}

void require_positive_below_beta(const SurdLine& phi, std::size_t k) {
  const SurdLine beta = SurdLine::beta(phi.ratio());
  if (phi.sign() != Sign::positive || (beta - phi).sign() != Sign::positive) {
    throw std::logic_error("increment factor phi_" + std::to_string(k) + " = " + render(phi) +
                           " is not between 0 and beta");
  }
}

}  // namespace

std::size_t EulerTrace::period_length() const {
  if (rows.empty() || !rows.back().repeats) return 0;
  return rows.back().k - *rows.back().repeats;
}

std::vector<BigInt> EulerTrace::quotients() const {
  std::vector<BigInt> out;
  for (const TraceStep& row : rows) {
    if (row.inversion) out.push_back(row.inversion->quotient);
  }
  return out;
}

EulerTrace euler_trace(const Radicand& r, const StepLimit& limits) {
  if (r.is_square()) throw std::domain_error("euler_trace needs a non-square radicand");
  const Rational ratio = r.ratio();
  const SurdLine alpha(1, 0, ratio);
  const SurdLine beta = SurdLine::beta(ratio);
  const BigInt d = r.discriminant();
  const BigInt bound = pigeonhole_bound(d);
  const std::uint64_t max_rows = limits.max_steps.value_or(
      bound.fits_ulong_p() ? bound.get_ui() + 2 : std::numeric_limits<std::uint64_t>::max());
  // The alpha coefficient of q alpha - mu beta over lambda.
  const BigInt scale = r.q;
  const BigInt root_d = isqrt(d);

  auto make_row = [&](std::size_t k, SurdLine phi) {
    require_positive_below_beta(phi, k);
    // phi = (scale alpha - mu beta) / lambda
    const Rational lambda = scale / phi.c_alpha();
    const Rational mu = -phi.c_beta() * lambda;
    if (lambda.get_den() != 1 || mu.get_den() != 1) {
      throw std::logic_error("phi_" + std::to_string(k) + " is not of the form (q alpha - mu beta)/lambda");
    }
    const LineKind kind = classify(phi);
    return TraceStep{k, std::move(phi), lambda.get_num(), mu.get_num(), kind, {}, {}, {}};
  };

  EulerTrace trace{r, {}};
  std::map<std::pair<Rational, Rational>, std::size_t> seen;

  // First division: alpha = mu_1 beta + phi_1.
  const BigInt m = floor_in_beta(alpha);
  TraceStep first = make_row(1, alpha - beta.scaled(m));
  first.integer_part = m;
  seen.emplace(std::pair{first.phi.c_alpha(), first.phi.c_beta()}, 1);
  trace.rows.push_back(std::move(first));

  for (std::size_t k = 2;; ++k) {
    if (trace.rows.size() >= max_rows) throw StepLimitExceeded(max_rows, "trace of sqrt(" + r.str() + ")");
    const SurdLine& prev = trace.rows.back().phi;

    Inversion inv{conjugate(prev), {}, inverse_wrt_beta_squared(prev), {}, {}, {}};
    inv.product = line_mul(prev, inv.conjugate);
    inv.psi_kind = classify(inv.psi);
    // psi = I beta + phi_k with 0 < phi_k < beta, so I is the integral part.
    inv.quotient = floor_in_beta(inv.psi);
    const BigInt den = common_denominator(inv.psi);
    const Rational a = inv.psi.c_alpha() * den;
    const Rational b = inv.psi.c_beta() * den;
    if (a == scale && b.get_den() == 1) {
      inv.floor_fraction = std::pair{BigInt(root_d + b.get_num()), den};
    }

    TraceStep row = make_row(k, inv.psi - beta.scaled(inv.quotient));
    row.inversion = std::move(inv);
    auto [it, inserted] = seen.emplace(std::pair{row.phi.c_alpha(), row.phi.c_beta()}, k);
    if (!inserted) row.repeats = it->second;
    const bool done = row.repeats.has_value();
    trace.rows.push_back(std::move(row));
    if (done) return trace;
  }
}

std::string render(const EulerTrace& t) {
  std::ostringstream os;
  os << "alpha^2 = " << t.radicand.str() << " beta^2\n";
  for (const TraceStep& row : t.rows) {
    const std::string k = std::to_string(row.k);
    os << "step " << k;
    if (!row.inversion) {
      os << " | mu_" << k << " = " << row.integer_part;
    } else {
      const Inversion& inv = *row.inversion;
      const std::string j = std::to_string(row.k - 1);
      os << " | " << named("phi_" + j + "*", inv.conjugate);
      os << " | phi_" << j << " phi_" << j << "* = " << render(inv.product);
      os << " | " << named("psi_" + j, inv.psi) << " [" << to_string(inv.psi_kind) << "]";
      os << " | I_" << j << " = ";
      if (inv.floor_fraction) {
        os << "floor(" << inv.floor_fraction->first << "/" << inv.floor_fraction->second << ") = ";
      }
      os << inv.quotient;
    }
    os << " | " << named("phi_" + k, row.phi) << " [" << to_string(row.phi_kind) << "]";
    if (row.repeats) {
      os << " | phi_" << k << " = phi_" << *row.repeats
         << " (Logos criterion: period " << (row.k - *row.repeats) << ")";
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace anth::bookx
