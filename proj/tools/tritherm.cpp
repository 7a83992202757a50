// Command-line shell over the library. The shell itself is single-threaded
// and stdout carries data only; every diagnostic is a single JSON object on
// stderr. Exit codes: 0 success, 1 generic/usage error, 2 out of domain,
// 3 precision exhausted (certified prefix still printed), 4 pole, 5 exact
// rational dependence.

#include <algorithm>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "tritherm/classify.hpp"
#include "tritherm/construct.hpp"
#include "tritherm/convergents.hpp"
#include "tritherm/errors.hpp"
#include "tritherm/io.hpp"
#include "tritherm/pair.hpp"
#include "tritherm/partition.hpp"
#include "tritherm/selftest.hpp"
#include "tritherm/trimap.hpp"

namespace {

using namespace tritherm;

void print_diag(const std::string& kind, const std::string& message,
                const json& extra = json::object()) {
  json d;
  d["error"] = kind;
  d["message"] = message;
  for (const auto& item : extra.items()) d[item.key()] = item.value();
  std::cerr << d.dump() << "\n";
}

long parse_long_strict(const std::string& text) {
  size_t used = 0;
  long v = std::stol(text, &used);
  if (used != text.size()) throw Error("trailing junk in number '" + text + "'");
  return v;
}

// "12" or "4..20"; the ceiling keeps runs desk-scale (2^28 terms, or 2^34
// with --force).
std::pair<long, long> parse_n_range(const std::string& text, bool force) {
  long lo = 0, hi = 0;
  try {
    size_t pos = text.find("..");
    if (pos == std::string::npos) {
      lo = hi = parse_long_strict(text);
    } else {
      lo = parse_long_strict(text.substr(0, pos));
      hi = parse_long_strict(text.substr(pos + 2));
    }
  } catch (const std::exception&) {
    throw Error("could not parse N range '" + text + "' (use e.g. 12 or 4..20)");
  }
  if (lo < 1 || hi < lo) throw OutOfDomain("need 1 <= first <= last in N range");
  long ceiling = force ? 34 : 28;
  if (hi > ceiling)
    throw OutOfDomain("N = " + std::to_string(hi) + " exceeds the ceiling of " +
                      std::to_string(ceiling) +
                      (force ? "" : " (--force raises it to 34)"));
  return {lo, hi};
}

DigitSequence parse_digit_list(const std::string& text) {
  DigitSequence ds;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove(tok.begin(), tok.end(), ' '), tok.end());
    if (tok.empty()) throw Error("empty entry in digit list");
    if (tok[0] == '-') throw OutOfDomain("digits must be nonnegative");
    try {
      ds.digits.emplace_back(tok);
    } catch (const std::exception&) {
      throw Error("could not parse digit '" + tok + "'");
    }
  }
  if (ds.empty()) throw Error("digit list is empty");
  return ds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"triangle continued fractions and partition-function thermodynamics"};
  app.require_subcommand(1);
  app.fallthrough();

  long precision = 256;
  unsigned threads = 0;
  app.add_option("--precision", precision, "working precision in bits")
      ->envname("TRITHERM_PRECISION")
      ->check(CLI::Range(64l, 1l << 22));
  app.add_option("--threads", threads,
                 "worker threads for the big sums (0 = all hardware threads)")
      ->envname("TRITHERM_THREADS")
      ->check(CLI::Range(0u, 4096u));

  int exit_code = 0;

  // tri-seq ------------------------------------------------------------------
  auto* tri = app.add_subcommand("tri-seq", "triangle digit sequence of a pair");
  std::string tri_pair;
  long tri_depth = 20;
  long tri_input_bits = -1;
  std::string tri_format = "json";
  tri->add_option("--pair", tri_pair,
                  "alpha,beta (exact rationals, decimals with --input-bits, or "
                  "cubic-fixed-point)")
      ->required();
  tri->add_option("--depth", tri_depth, "number of digits requested")
      ->check(CLI::Range(1l, 1000000l));
  tri->add_option("--input-bits", tri_input_bits,
                  "trusted bits of decimal input coordinates");
  tri->add_option("--format", tri_format, "json or plain")
      ->check(CLI::IsMember({"json", "plain"}));
  tri->callback([&] {
    PairRepr pair = parse_pair(tri_pair, tri_input_bits, precision);
    auto emit = [&](const DigitSequence& ds) {
      if (tri_format == "plain") {
        for (long i = 0; i < ds.size(); ++i)
          std::cout << (i ? " " : "") << ds[i].get_str();
        std::cout << "\n";
        if (ds.terminated) std::cout << "terminated\n";
      } else {
        std::cout << digits_json(ds).dump(2) << "\n";
      }
    };
    try {
      emit(triangle_sequence(pair, tri_depth));
    } catch (const PrecisionExhausted& e) {
      DigitSequence prefix;
      for (const std::string& d : e.certified_prefix()) prefix.digits.emplace_back(d);
      emit(prefix);
      throw;
    }
  });

  // partition ----------------------------------------------------------------
  auto* part = app.add_subcommand("partition",
                                  "free-energy trace of the partition function");
  std::string part_pair, part_n = "1..12", part_s = "3", part_k = "1";
  std::string part_format = "csv";
  long part_input_bits = -1;
  bool part_force = false, part_classic = false;
  part->add_option("--pair", part_pair, "alpha,beta or cubic-fixed-point")->required();
  part->add_option("--n", part_n, "word length N or range a..b");
  part->add_option("--s", part_s, "inverse-temperature exponent s > 0 (rational)");
  part->add_option("--k", part_k, "normalization exponent k (rational)");
  part->add_option("--input-bits", part_input_bits,
                   "trusted bits of decimal input coordinates");
  part->add_option("--format", part_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  part->add_flag("--force", part_force, "raise the N ceiling from 28 to 34");
  part->add_flag("--classic", part_classic,
                 "normalize by N alone instead of s*N^k");
  part->callback([&] {
    PairRepr pair = parse_pair(part_pair, part_input_bits, precision);
    auto [n_lo, n_hi] = parse_n_range(part_n, part_force);
    FreeEnergyTrace tr =
        free_energy_trace(pair, n_lo, n_hi, parse_rat(part_s), parse_rat(part_k),
                          precision, threads, part_classic);
    if (part_format == "csv")
      std::cout << trace_csv(tr);
    else
      std::cout << trace_json(tr).dump(2) << "\n";
    bool all_poles = !tr.entries.empty() &&
                     std::all_of(tr.entries.begin(), tr.entries.end(),
                                 [](const TraceEntry& e) { return e.z.pole; });
    if (all_poles)
      throw PoleError("every requested level hit a pole",
                      tr.entries.front().z.pole_word);
  });

  // verify -------------------------------------------------------------------
  auto* ver = app.add_subcommand("verify", "run the named invariant suite");
  unsigned long ver_seed = 20260822;
  ver->add_option("--seed", ver_seed, "seed for the sampled test cases");
  ver->callback([&] {
    std::vector<SelftestResult> results = run_selftests(ver_seed, precision, threads);
    long failed = 0;
    for (const SelftestResult& r : results) {
      if (r.passed) {
        std::cout << "PASS " << r.name << "\n";
      } else {
        ++failed;
        std::cout << "FAIL " << r.name << ": " << r.message << "\n";
      }
    }
    if (failed == 0) {
      std::cout << "all invariants passed\n";
    } else {
      print_diag("selftest-failure", std::to_string(failed) + " of " +
                                         std::to_string(results.size()) +
                                         " invariants failed");
      exit_code = 1;
    }
  });

  // construct ----------------------------------------------------------------
  auto* con = app.add_subcommand("construct",
                                 "nested-triangle enclosure for a digit prefix");
  std::string con_digits;
  std::string con_format = "json";
  con->add_option("--digits", con_digits, "comma-separated digits, e.g. 0,0,0")
      ->required();
  con->add_option("--format", con_format, "json or plain")
      ->check(CLI::IsMember({"json", "plain"}));
  con->callback([&] {
    Enclosure e = pair_from_digits(parse_digit_list(con_digits));
    if (con_format == "json") {
      std::cout << enclosure_json(e).dump(2) << "\n";
    } else {
      auto point = [](const RationalPoint2& p) {
        return rational_text(p.u) + "," + rational_text(p.v);
      };
      std::cout << "vertex " << point(e.vertices.v0) << "\n"
                << "vertex " << point(e.vertices.v1) << "\n"
                << "vertex " << point(e.vertices.v2) << "\n"
                << "representative " << point(e.representative) << "\n";
    }
  });

  // theorem1 -----------------------------------------------------------------
  auto* th1 = app.add_subcommand("theorem1",
                                 "divergence witness for a scheduled digit run");
  std::string th1_k = "1", th1_f = "linear", th1_fconst = "1", th1_s = "1";
  long th1_levels = 2, th1_a1 = 3, th1_enum_ceiling = 28;
  unsigned long th1_budget = 1ul << 20;
  th1->add_option("--k", th1_k, "exponent on N_m in the digit schedule (rational > 0)");
  th1->add_option("--f", th1_f, "growth preset: linear, log, or const")
      ->check(CLI::IsMember({"linear", "log", "const"}));
  th1->add_option("--f-const", th1_fconst, "value of f when --f const");
  th1->add_option("--s", th1_s, "exponent s > 0 for the normalized comparison");
  th1->add_option("--levels", th1_levels, "levels m to certify")
      ->check(CLI::Range(1l, 64l));
  th1->add_option("--a1", th1_a1, "first digit (must exceed 2)")
      ->check(CLI::Range(3l, 1000000l));
  th1->add_option("--enum-ceiling", th1_enum_ceiling,
                  "largest N_1 for the full-enumeration cross-check")
      ->check(CLI::Range(1l, 34l));
  th1->add_option("--bit-budget", th1_budget, "refuse digits wider than this");
  th1->callback([&] {
    Theorem1Config cfg;
    cfg.k = parse_rat(th1_k);
    cfg.f = th1_f == "linear" ? Theorem1Config::Growth::Linear
            : th1_f == "log"  ? Theorem1Config::Growth::Log
                              : Theorem1Config::Growth::Const;
    cfg.f_const = parse_rat(th1_fconst);
    cfg.m_max = th1_levels;
    cfg.a1 = Int(th1_a1);
    cfg.bit_budget = th1_budget;
    DivergenceReport rep =
        theorem1_witness(cfg, parse_rat(th1_s), precision, th1_enum_ceiling, threads);
    std::cout << divergence_json(rep).dump(2) << "\n";
  });

  // theorem2 -----------------------------------------------------------------
  auto* th2 = app.add_subcommand(
      "theorem2", "vanishing-free-energy experiment for an independent pair");
  std::string th2_pair, th2_n = "10..22", th2_s = "3", th2_k = "2";
  std::string th2_d = "2", th2_threshold = "1/20";
  long th2_bmax = 50, th2_tail = 10, th2_input_bits = -1;
  bool th2_force = false;
  th2->add_option("--pair", th2_pair, "alpha,beta or cubic-fixed-point")->required();
  th2->add_option("--n", th2_n, "word length range a..b");
  th2->add_option("--s", th2_s, "exponent s (rational)");
  th2->add_option("--k", th2_k, "normalization exponent k (rational)");
  th2->add_option("--d", th2_d, "Diophantine exponent d >= 2 (rational)");
  th2->add_option("--b-max", th2_bmax, "coefficient box bound for the (C,d) fit")
      ->check(CLI::Range(1l, 100000l));
  th2->add_option("--tail-start", th2_tail, "first N of the certified-decrease tail");
  th2->add_option("--threshold", th2_threshold,
                  "final normalized value must fall below this (rational)");
  th2->add_option("--input-bits", th2_input_bits,
                  "trusted bits of decimal input coordinates");
  th2->add_flag("--force", th2_force, "raise the N ceiling from 28 to 34");
  th2->callback([&] {
    PairRepr pair = parse_pair(th2_pair, th2_input_bits, precision);
    auto [n_lo, n_hi] = parse_n_range(th2_n, th2_force);
    Theorem2Report rep = theorem2_experiment(
        pair, parse_rat(th2_s), parse_rat(th2_k), n_lo, n_hi, parse_rat(th2_d),
        th2_bmax, precision, threads, th2_tail, parse_rat(th2_threshold));
    std::cout << theorem2_json(rep).dump(2) << "\n";
  });

  // diophantine --------------------------------------------------------------
  auto* dio = app.add_subcommand(
      "diophantine", "best (C,d) approximation constant over a coefficient box");
  std::string dio_pair, dio_d = "2";
  long dio_bmax = 50, dio_input_bits = -1;
  dio->add_option("--pair", dio_pair, "alpha,beta or cubic-fixed-point")->required();
  dio->add_option("--d", dio_d, "Diophantine exponent d >= 2 (rational)");
  dio->add_option("--b-max", dio_bmax, "coefficient box bound")
      ->check(CLI::Range(1l, 100000l));
  dio->add_option("--input-bits", dio_input_bits,
                  "trusted bits of decimal input coordinates");
  dio->callback([&] {
    PairRepr pair = parse_pair(dio_pair, dio_input_bits, precision);
    DiophantineFit fit =
        diophantine_check(pair, parse_rat(dio_d), dio_bmax, precision, threads);
    std::cout << fit_json(fit).dump(2) << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 1;
  } catch (const OutOfDomain& e) {
    print_diag("out-of-domain", e.what());
    return 2;
  } catch (const PrecisionExhausted& e) {
    json extra;
    extra["certified_digits"] = e.certified_digits();
    print_diag("precision-exhausted", e.what(), extra);
    return 3;
  } catch (const PoleError& e) {
    json extra;
    extra["word"] = e.word();
    print_diag("pole", e.what(), extra);
    return 4;
  } catch (const ExactZero& e) {
    json extra;
    extra["witness"] = e.witness();
    print_diag("exact-zero", e.what(), extra);
    return 5;
  } catch (const std::exception& e) {
    print_diag("error", e.what());
    return 1;
  }
  return exit_code;
}
