#include "anth/cli.hpp"

#include "anth/trace.hpp"
#include "anth/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <thread>

namespace anth::cli {

using nlohmann::ordered_json;

namespace {

std::string join(const std::vector<BigInt>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += sep;
    out += xs[i].get_str();
  }
  return out;
}

ordered_json string_array(const std::vector<BigInt>& xs) {
  ordered_json a = ordered_json::array();
  for (const BigInt& x : xs) a.push_back(x.get_str());
  return a;
}

BigInt parse_bigint(const std::string& s) {
  BigInt v;
  if (s.empty() || v.set_str(s, 10) != 0) throw ParseError("not an integer: '" + s + "'");
  return v;
}

const char* kind_name(SurdSpec::Kind k) {
  switch (k) {
    case SurdSpec::Kind::integer: return "sqrt";
    case SurdSpec::Kind::sqrt_ratio: return "sqrt";
    case SurdSpec::Kind::surd: return "surd";
  }
  return "?";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Format parse_format(std::string_view s) {
  if (s == "plain") return Format::plain;
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  throw ParseError("unknown format '" + std::string(s) + "'");
}

SurdSpec parse_surd_spec(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  static const std::regex integer_re(R"(^\+?(\d+)$)");
  static const std::regex sqrt_re(R"(^sqrt\((\d+)(?:/(\d+))?\)$)");
  static const std::regex surd_re(R"(^\(([+-]?\d+)\+sqrt\((\d+)\)\)/([+-]?\d+)$)");
  std::smatch mt;
  SurdSpec spec;
  if (std::regex_match(s, mt, integer_re)) {
    const BigInt n = parse_bigint(mt[1]);
    if (n < 1) throw ParseError("radicand must be positive: '" + s + "'");
    spec.kind = SurdSpec::Kind::integer;
    spec.radicand = Radicand(n);
    spec.label = "sqrt(" + n.get_str() + ")";
    return spec;
  }
  if (std::regex_match(s, mt, sqrt_re)) {
    const BigInt p = parse_bigint(mt[1]);
    const BigInt q = mt[2].matched ? parse_bigint(mt[2]) : BigInt(1);
    if (p < 1 || q < 1) throw ParseError("sqrt(P/Q) needs P, Q >= 1: '" + s + "'");
    spec.kind = SurdSpec::Kind::sqrt_ratio;
    spec.radicand = Radicand(p, q);
    spec.label = "sqrt(" + spec.radicand->str() + ")";
    return spec;
  }
  if (std::regex_match(s, mt, surd_re)) {
    BigInt p = parse_bigint(mt[1].str()[0] == '+' ? mt[1].str().substr(1) : mt[1].str());
    BigInt d = parse_bigint(mt[2]);
    BigInt q = parse_bigint(mt[3].str()[0] == '+' ? mt[3].str().substr(1) : mt[3].str());
    if (q == 0) throw ParseError("zero denominator: '" + s + "'");
    spec.kind = SurdSpec::Kind::surd;
    spec.surd = QuadraticSurd(std::move(p), std::move(d), std::move(q));
    spec.label = spec.surd->str();
    return spec;
  }
  throw ParseError("cannot parse '" + std::string(text) +
                   "'; expected N, sqrt(P/Q) or (P+sqrt(D))/Q");
}

ExpandResult run_expand(const SurdSpec& spec, const ExpandOptions& opts) {
  ExpandResult r{spec, {}, {}, {}};
  if (spec.kind == SurdSpec::Kind::surd) {
    r.expansion = expand_surd(normalize(*spec.surd), opts.limits);
  } else {
    r.expansion = expand_sqrt(*spec.radicand, opts.limits);
  }
  if (r.expansion.origin == Origin::square_root) {
    r.palindrome = palindrome::verify_palindrome(r.expansion, r.expansion.preperiod.at(0));
    if ((opts.pell || opts.negative_pell) && spec.radicand->is_integer()) {
      r.pell = pell_fundamental(r.expansion, spec.radicand->p);
    }
  }
  return r;
}

std::string bracket_notation(const Expansion& e) {
  std::string out = "[";
  if (!e.preperiod.empty()) {
    out += e.preperiod[0].get_str();
    if (e.preperiod.size() > 1 || !e.period.empty()) out += "; ";
    const std::vector<BigInt> rest(e.preperiod.begin() + 1, e.preperiod.end());
    out += join(rest, ", ");
    if (!rest.empty() && !e.period.empty()) out += ", ";
  }
  if (!e.period.empty()) out += "(" + join(e.period, ",") + ")";
  return out + "]";
}

ordered_json to_json(const ExpandResult& r, const ExpandOptions& opts) {
  const Expansion& e = r.expansion;
  ordered_json j;
  j["input"] = r.spec.label;
  j["kind"] = e.terminated ? "rational" : kind_name(r.spec.kind);
  j["terminated"] = e.terminated;
  j["preperiod"] = string_array(e.preperiod);
  j["period"] = string_array(e.period);
  j["period_len"] = e.period.size();
  if (r.palindrome) {
    j["palindromic"] = r.palindrome->holds;
    j["case"] = r.palindrome->reflection_case ? to_string(*r.palindrome->reflection_case) : "";
    j["center_index"] = r.palindrome->center_index;
  } else {
    j["palindromic"] = nullptr;
  }
  if (opts.pell) {
    if (r.pell) {
      j["pell"] = {{"x", r.pell->x.get_str()}, {"y", r.pell->y.get_str()}};
    } else {
      j["pell"] = nullptr;
    }
  }
  if (opts.negative_pell) {
    if (r.pell && r.pell->negative) {
      j["negative_pell"] = {{"x", r.pell->negative->first.get_str()},
                            {"y", r.pell->negative->second.get_str()}};
    } else {
      j["negative_pell"] = nullptr;
    }
  }
  return j;
}

std::string render_expand(const ExpandResult& r, Format f, const ExpandOptions& opts) {
  const Expansion& e = r.expansion;
  std::ostringstream os;
  switch (f) {
    case Format::json:
      os << to_json(r, opts).dump() << '\n';
      break;
    case Format::csv: {
      os << "input,kind,preperiod,period,period_len,palindrome,pell_x,pell_y\n";
      os << csv_field(r.spec.label) << ',' << (e.terminated ? "rational" : kind_name(r.spec.kind))
         << ',' << join(e.preperiod, " ") << ',' << join(e.period, " ") << ',' << e.period.size()
         << ',' << (r.palindrome ? (r.palindrome->holds ? "yes" : "no") : "") << ',';
      if (opts.pell && r.pell) os << r.pell->x << ',' << r.pell->y;
      else os << ',';
      os << '\n';
      break;
    }
    case Format::plain: {
      if (e.terminated) {
        os << "rational: " << bracket_notation(e) << '\n';
        break;
      }
      os << r.spec.label << " = " << bracket_notation(e) << " palindromic="
         << (r.palindrome ? (r.palindrome->holds ? "yes" : "no") : "n/a") << '\n';
      os << "period_len=" << e.period.size() << '\n';
      if (opts.pell) {
        if (r.pell) os << "pell: x=" << r.pell->x << " y=" << r.pell->y << '\n';
        else os << "pell: n/a\n";
      }
      if (opts.negative_pell) {
        if (r.pell && r.pell->negative) {
          os << "negative_pell: x=" << r.pell->negative->first << " y=" << r.pell->negative->second << '\n';
        } else {
          os << "negative_pell: none\n";
        }
      }
      break;
    }
  }
  return os.str();
}

SweepRecord sweep_record(std::uint64_t n, const SweepOptions& opts) {
  SweepRecord rec;
  rec.n = n;
  const Expansion e = expand_sqrt(BigInt(static_cast<unsigned long>(n)), opts.limits);
  rec.m = e.preperiod.at(0);
  rec.period_len = e.period.size();
  try {
    const palindrome::PalindromeReport rep = palindrome::verify_palindrome(e, rec.m, palindrome::Depth::integer);
    rec.palindrome = rep.holds;
    rec.reflection_case = rep.reflection_case;
  } catch (const std::logic_error&) {
    rec.palindrome = false;  // a failed reflection search falsifies the theorem
  }
  const palindrome::PeriodStats stats = palindrome::period_stats(e);
  rec.distinct_logoi = stats.distinct_logoi;
  rec.platonic_number = stats.platonic_number;
  if (opts.pell) {
    const PellSolution s = pell_fundamental(e, BigInt(static_cast<unsigned long>(n)));
    rec.pell = std::pair{s.x, s.y};
  }
  return rec;
}

std::vector<SweepRecord> sweep(const SweepOptions& opts) {
  std::vector<std::uint64_t> inputs;
  for (std::uint64_t n = 2; n <= opts.n_max; ++n) {
    const std::uint64_t r = isqrt(BigInt(static_cast<unsigned long>(n))).get_ui();
    if (r * r != n) inputs.push_back(n);
  }
  std::vector<SweepRecord> records(inputs.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(std::max(1u, opts.jobs));

  auto worker = [&](std::size_t id) {
    try {
      for (std::size_t i = next++; i < inputs.size(); i = next++) {
        records[i] = sweep_record(inputs[i], opts);
      }
    } catch (...) {
      errors[id] = std::current_exception();
      next = inputs.size();
    }
  };

  if (opts.jobs <= 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned id = 0; id < opts.jobs; ++id) pool.emplace_back(worker, id);
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return records;
}

ordered_json to_json(const SweepRecord& r) {
  ordered_json j;
  j["N"] = std::to_string(r.n);
  j["m"] = r.m.get_str();
  j["period_len"] = r.period_len;
  j["palindrome"] = r.palindrome;
  j["case"] = r.reflection_case ? to_string(*r.reflection_case) : "";
  j["distinct_logoi"] = r.distinct_logoi;
  j["platonic_number"] = r.platonic_number;
  if (r.pell) {
    j["pell_x"] = r.pell->first.get_str();
    j["pell_y"] = r.pell->second.get_str();
  }
  return j;
}

SweepRecord sweep_record_from_json(const ordered_json& j) {
  SweepRecord r;
  r.n = std::stoull(j.at("N").get<std::string>());
  r.m = parse_bigint(j.at("m").get<std::string>());
  r.period_len = j.at("period_len").get<std::size_t>();
  r.palindrome = j.at("palindrome").get<bool>();
  const std::string c = j.at("case").get<std::string>();
  if (c == "I") r.reflection_case = palindrome::ReflectionCase::I;
  else if (c == "II") r.reflection_case = palindrome::ReflectionCase::II;
  else if (!c.empty()) throw ParseError("unknown reflection case '" + c + "'");
  r.distinct_logoi = j.at("distinct_logoi").get<std::size_t>();
  r.platonic_number = j.at("platonic_number").get<std::size_t>();
  if (j.contains("pell_x")) {
    r.pell = std::pair{parse_bigint(j.at("pell_x").get<std::string>()),
                       parse_bigint(j.at("pell_y").get<std::string>())};
  }
  return r;
}

std::string render_sweep_record(const SweepRecord& r, Format f) {
  const std::string c = r.reflection_case ? to_string(*r.reflection_case) : "";
  std::ostringstream os;
  switch (f) {
    case Format::json:
      os << to_json(r).dump();
      break;
    case Format::csv:
      os << r.n << ',' << r.m << ',' << r.period_len << ',' << (r.palindrome ? "yes" : "no") << ','
         << c << ',' << r.distinct_logoi << ',';
      if (r.pell) os << r.pell->first << ',' << r.pell->second;
      else os << ',';
      break;
    case Format::plain:
      os << "N=" << r.n << " m=" << r.m << " period_len=" << r.period_len
         << " palindrome=" << (r.palindrome ? "yes" : "no") << " case=" << (c.empty() ? "-" : c)
         << " distinct_logoi=" << r.distinct_logoi << " platonic_number=" << r.platonic_number;
      if (r.pell) os << " pell=(" << r.pell->first << ',' << r.pell->second << ')';
      break;
  }
  return os.str();
}

std::string render_sweep(const std::vector<SweepRecord>& records, Format f) {
  std::string out;
  if (f == Format::csv) {
    out += kSweepCsvHeader;
    out += '\n';
  }
  for (const SweepRecord& r : records) {
    out += render_sweep_record(r, f);
    out += '\n';
  }
  return out;
}

namespace {

// Writes to --out when given, otherwise to `out`.
bool emit(const std::string& text, const std::string& path, std::ostream& out, std::ostream& err) {
  if (path.empty()) {
    out << text;
    return true;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    err << "anth: cannot write " << path << '\n';
    return false;
  }
  f << text;
  return static_cast<bool>(f);
}

StepLimit limits_from(std::uint64_t steps) {
  StepLimit l = StepLimit::from_env();
  if (steps > 0) l.max_steps = steps;
  return l;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Anthyphairesis of quadratic surds: periods, palindromes, Book X traces, Pell"};
  app.name("anth");
  app.require_subcommand(1);

  std::string format_name = "plain";
  std::string out_path;
  std::uint64_t steps = 0;
  bool pell = false;
  bool negative_pell = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format_name, "plain, json or csv")
        ->check(CLI::IsMember({"plain", "json", "csv"}));
    sub->add_option("--out", out_path, "write the report to FILE");
    sub->add_option("--steps", steps, "step limit (default: pigeonhole bound; env ANTH_MAX_STEPS)");
  };

  std::string input;
  auto* expand_cmd = app.add_subcommand("expand", "expand N, sqrt(P/Q) or (P+sqrt(D))/Q");
  expand_cmd->add_option("input", input, "surd spec")->required();
  expand_cmd->add_flag("--pell", pell, "also print the fundamental Pell solution");
  expand_cmd->add_flag("--negative-pell", negative_pell, "also print x^2 - N y^2 = -1 when solvable");
  add_common(expand_cmd);

  std::string golden;
  auto* trace_cmd = app.add_subcommand("trace", "Book X (Euler-style) trace of sqrt(N)");
  trace_cmd->add_option("input", input, "N or sqrt(P/Q)")->required();
  trace_cmd->add_option("--golden", golden, "compare against a stored table");
  trace_cmd->add_option("--out", out_path, "write the table to FILE");
  trace_cmd->add_option("--steps", steps, "step limit");

  std::uint64_t n_max = 0;
  unsigned jobs = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "check every non-square N <= N_max");
  sweep_cmd->add_option("n_max", n_max, "largest N")->required()->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 40));
  sweep_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 1024u));
  sweep_cmd->add_flag("--pell", pell, "include the fundamental Pell solution");
  add_common(sweep_cmd);

  auto* pell_cmd = app.add_subcommand("pell", "fundamental solution of x^2 - N y^2 = 1");
  pell_cmd->add_option("input", input, "N")->required();
  pell_cmd->add_flag("--negative-pell", negative_pell, "also solve x^2 - N y^2 = -1");
  add_common(pell_cmd);

  std::size_t count = 10;
  auto* approx_cmd = app.add_subcommand("approx", "first K convergents");
  approx_cmd->add_option("input", input, "N, sqrt(P/Q) or (P+sqrt(D))/Q")->required();
  approx_cmd->add_option("count", count, "K")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
  add_common(approx_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "run the invariant battery for one N");
  verify_cmd->add_option("input", input, "N or sqrt(P/Q)")->required();
  add_common(verify_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "anth: " << e.what() << '\n';
    return kParseError;
  }

  try {
    const Format fmt = parse_format(format_name);
    const StepLimit limits = limits_from(steps);

    if (expand_cmd->parsed()) {
      const ExpandOptions opts{limits, pell, negative_pell};
      const ExpandResult r = run_expand(parse_surd_spec(input), opts);
      return emit(render_expand(r, fmt, opts), out_path, out, err) ? kOk : kParseError;
    }

    if (trace_cmd->parsed()) {
      const SurdSpec spec = parse_surd_spec(input);
      if (spec.kind == SurdSpec::Kind::surd || spec.radicand->is_square()) {
        err << "anth: trace needs a non-square N or sqrt(P/Q)\n";
        return kParseError;
      }
      const std::string table = bookx::render(bookx::euler_trace(*spec.radicand, limits));
      if (!golden.empty()) {
        std::ifstream g(golden, std::ios::binary);
        if (!g) {
          err << "anth: cannot read golden file " << golden << '\n';
          return kParseError;
        }
        std::ostringstream expected;
        expected << g.rdbuf();
        if (expected.str() != table) {
          err << "anth: trace differs from golden " << golden << '\n';
          out << table;
          return kGoldenMismatch;
        }
      }
      return emit(table, out_path, out, err) ? kOk : kParseError;
    }

    if (sweep_cmd->parsed()) {
      const SweepOptions opts{n_max, jobs, pell, limits};
      const std::vector<SweepRecord> records = sweep(opts);
      const auto failures = std::count_if(records.begin(), records.end(),
                                          [](const SweepRecord& r) { return !r.palindrome; });
      if (!emit(render_sweep(records, fmt), out_path, out, err)) return kParseError;
      err << "sweep N<=" << n_max << ": " << records.size() << " records, " << failures
          << " palindrome failures\n";
      return failures == 0 ? kOk : kTheoremFailure;
    }

    if (pell_cmd->parsed()) {
      const SurdSpec spec = parse_surd_spec(input);
      if (spec.kind != SurdSpec::Kind::integer || spec.radicand->is_square()) {
        err << "anth: pell needs a non-square integer N\n";
        return kParseError;
      }
      const BigInt& n = spec.radicand->p;
      const PellSolution s = pell_fundamental(expand_sqrt(n, limits), n);
      std::ostringstream os;
      if (fmt == Format::json) {
        ordered_json j{{"N", n.get_str()}, {"x", s.x.get_str()}, {"y", s.y.get_str()}};
        if (negative_pell) {
          j["negative_pell"] = s.negative ? ordered_json{{"x", s.negative->first.get_str()},
                                                         {"y", s.negative->second.get_str()}}
                                          : ordered_json(nullptr);
        }
        os << j.dump() << '\n';
      } else if (fmt == Format::csv) {
        os << "N,x,y\n" << n << ',' << s.x << ',' << s.y << '\n';
      } else {
        os << "x^2 - " << n << " y^2 = 1: x=" << s.x << " y=" << s.y << '\n';
        if (negative_pell) {
          if (s.negative) {
            os << "x^2 - " << n << " y^2 = -1: x=" << s.negative->first << " y=" << s.negative->second << '\n';
          } else {
            os << "x^2 - " << n << " y^2 = -1: no solution (even period)\n";
          }
        }
      }
      return emit(os.str(), out_path, out, err) ? kOk : kParseError;
    }

    if (approx_cmd->parsed()) {
      const SurdSpec spec = parse_surd_spec(input);
      const Expansion e = spec.kind == SurdSpec::Kind::surd
                              ? expand_surd(normalize(*spec.surd), limits)
                              : expand_sqrt(*spec.radicand, limits);
      const std::vector<Convergent> cs = convergents(e, count);
      std::ostringstream os;
      if (fmt == Format::json) {
        ordered_json a = ordered_json::array();
        for (const Convergent& c : cs) {
          a.push_back({{"k", c.index}, {"p", c.p.get_str()}, {"q", c.q.get_str()}});
        }
        os << a.dump() << '\n';
      } else if (fmt == Format::csv) {
        os << "k,p,q\n";
        for (const Convergent& c : cs) os << c.index << ',' << c.p << ',' << c.q << '\n';
      } else {
        for (const Convergent& c : cs) os << c.index << ": " << c.p << '/' << c.q << '\n';
      }
      return emit(os.str(), out_path, out, err) ? kOk : kParseError;
    }

    if (verify_cmd->parsed()) {
      const SurdSpec spec = parse_surd_spec(input);
      if (spec.kind == SurdSpec::Kind::surd) {
        err << "anth: verify needs N or sqrt(P/Q)\n";
        return kParseError;
      }
      const std::vector<verify::Check> checks = verify::run_battery(*spec.radicand);
      std::ostringstream os;
      if (fmt == Format::json) {
        ordered_json a = ordered_json::array();
        for (const auto& c : checks) a.push_back({{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        os << a.dump() << '\n';
      } else {
        for (const auto& c : checks) {
          os << (c.passed ? "PASS " : "FAIL ") << c.name;
          if (!c.passed) os << ": " << c.detail;
          os << '\n';
        }
      }
      if (!emit(os.str(), out_path, out, err)) return kParseError;
      return verify::all_passed(checks) ? kOk : kTheoremFailure;
    }
  } catch (const StepLimitExceeded& e) {
    err << "anth: " << e.what() << '\n';
    return kStepLimit;
  } catch (const ParseError& e) {
    err << "anth: " << e.what() << '\n';
    return kParseError;
  } catch (const std::invalid_argument& e) {
    err << "anth: " << e.what() << '\n';
    return kParseError;
  } catch (const std::domain_error& e) {
    err << "anth: " << e.what() << '\n';
    return kParseError;
  }
  return kParseError;
}

}  // namespace anth::cli
