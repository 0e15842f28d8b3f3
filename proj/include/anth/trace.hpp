#pragma once

// Euler-style expansion of sqrt(p/q) carried out purely in Book X terms:
// each increment factor phi_k is an apotome, its conjugate is a line of two
// names, conjugacy gives the inverse psi_k with phi_k psi_k = beta^2, and
// psi_k = I_k beta + phi_{k+1}. Stops when some phi repeats.
//
// This is derived from the line algebra alone and does not call the engine,
// so its quotients are an independent check on expand_sqrt.

#include "anth/engine.hpp"
#include "anth/lines.hpp"

#include <optional>
#include <string>
#include <vector>

namespace anth::bookx {

struct Inversion {
  SurdLine conjugate;  // phi_{k-1}*
  SurdArea product;    // phi_{k-1} phi_{k-1}*, a rational multiple of beta^2
  SurdLine psi;        // psi_{k-1}
  LineKind psi_kind = LineKind::other;
  BigInt quotient;     // I_{k-1}
  // I_{k-1} = floor(numerator / denominator) with alpha replaced by its integer part.
  std::optional<std::pair<BigInt, BigInt>> floor_fraction;
};

struct TraceStep {
  std::size_t k = 1;  // this row produces phi_k
  SurdLine phi;
  BigInt lambda;      // lambda_k phi_k = scale alpha - mu_k beta
  BigInt mu;
  LineKind phi_kind = LineKind::other;
  BigInt integer_part;               // mu_1 / scale, row 1 only
  std::optional<Inversion> inversion;  // rows k >= 2
  std::optional<std::size_t> repeats;  // j with phi_k = phi_j (last row)
};

struct EulerTrace {
  Radicand radicand;
  std::vector<TraceStep> rows;

  std::size_t period_length() const;
  std::vector<BigInt> quotients() const;  // I_1 .. I_l
};

// Throws std::domain_error for a square radicand and StepLimitExceeded when
// the limit runs out.
EulerTrace euler_trace(const Radicand& r, const StepLimit& limits = {});

// Text table, one row per line, newline-terminated.
std::string render(const EulerTrace& t);

}  // namespace anth::bookx
