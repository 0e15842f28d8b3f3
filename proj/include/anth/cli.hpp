#pragma once

// Command-line front end: surd-spec parsing, report rendering, the batch
// sweep, and the `anth` command dispatcher.

#include "anth/convergents.hpp"
#include "anth/engine.hpp"
#include "anth/palindrome.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace anth::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 2,
  kStepLimit = 3,
  kGoldenMismatch = 4,
  kTheoremFailure = 5,
};

class ParseError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

enum class Format { plain, json, csv };

Format parse_format(std::string_view s);

/// Parsed input. Grammar, whitespace-insensitive:
///   N                 sqrt(N)
///   sqrt(P) | sqrt(P/Q)
///   (P+sqrt(D))/Q     a general quadratic surd, P and Q may be negative
struct SurdSpec {
  enum class Kind { integer, sqrt_ratio, surd };
  Kind kind = Kind::integer;
  std::optional<Radicand> radicand;    // integer, sqrt_ratio
  std::optional<QuadraticSurd> surd;   // surd
  std::string label;                   // "sqrt(19)", "sqrt(7/3)", "(7+sqrt(54))/5"
};

SurdSpec parse_surd_spec(std::string_view text);

struct ExpandOptions {
  StepLimit limits;
  bool pell = false;
  bool negative_pell = false;
};

struct ExpandResult {
  SurdSpec spec;
  Expansion expansion;
  std::optional<palindrome::PalindromeReport> palindrome;
  std::optional<PellSolution> pell;
};

ExpandResult run_expand(const SurdSpec& spec, const ExpandOptions& opts);

// "[4; (2,1,3,1,2,8)]", "[1; 2]", "[(2,1,6,1,2,14)]"
std::string bracket_notation(const Expansion& e);

nlohmann::ordered_json to_json(const ExpandResult& r, const ExpandOptions& opts);
std::string render_expand(const ExpandResult& r, Format f, const ExpandOptions& opts);

struct SweepRecord {
  std::uint64_t n = 0;
  BigInt m;
  std::size_t period_len = 0;
  bool palindrome = false;
  std::optional<palindrome::ReflectionCase> reflection_case;
  std::size_t distinct_logoi = 0;
  std::size_t platonic_number = 0;
  std::optional<std::pair<BigInt, BigInt>> pell;

  bool operator==(const SweepRecord&) const = default;
};

struct SweepOptions {
  std::uint64_t n_max = 0;
  unsigned jobs = 1;
  bool pell = false;
  StepLimit limits;
};

// One record for the non-square n.
SweepRecord sweep_record(std::uint64_t n, const SweepOptions& opts);

// Records for every non-square 2 <= N <= n_max, ordered by N regardless of
// the worker count.
std::vector<SweepRecord> sweep(const SweepOptions& opts);

inline constexpr std::string_view kSweepCsvHeader =
    "N,m,period_len,palindrome,case,distinct_logoi,pell_x,pell_y";

nlohmann::ordered_json to_json(const SweepRecord& r);
SweepRecord sweep_record_from_json(const nlohmann::ordered_json& j);
std::string render_sweep_record(const SweepRecord& r, Format f);
std::string render_sweep(const std::vector<SweepRecord>& records, Format f);

// Runs `anth <args...>`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace anth::cli
