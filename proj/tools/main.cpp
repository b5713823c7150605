#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "natfun/algebra.hpp"
#include "natfun/arith.hpp"
#include "natfun/classify.hpp"
#include "natfun/conjecture.hpp"
#include "natfun/expr.hpp"
#include "natfun/report.hpp"

namespace {

using namespace natfun;

// Exit codes, also documented in the README.
enum ExitCode {
  kOk = 0,
  kFailure = 1,
  kSyntax = 2,
  kDomain = 3,
  kBudget = 4,
  kUnitInput = 5,
  kNotIncreasing = 6,
  kNotPolynomial = 7,
  kSizeLimit = 8,
  kExhausted = 9,
};

enum class Format { Table, Csv, Json };

struct GlobalOptions {
  std::uint64_t seed = 1;
  std::size_t budget_bits = EvalBudget{}.max_bits;
  std::string effort_name = "standard";
  std::string format_name = "table";
  int jobs = 0;  // 0 = hardware concurrency

  EvalBudget budget() const { return EvalBudget{budget_bits}; }
  Effort effort() const { return effort_from_string(effort_name); }
  Format format() const {
    if (format_name == "table") return Format::Table;
    if (format_name == "csv") return Format::Csv;
    if (format_name == "json") return Format::Json;
    throw DomainError("unknown format '" + format_name + "'");
  }
};

void print_rows(const GlobalOptions& opt, const std::vector<ScanRow>& rows) {
  switch (opt.format()) {
    case Format::Table: std::cout << scan_table(rows); break;
    case Format::Csv: std::cout << scan_csv(rows); break;
    case Format::Json: std::cout << scan_json(rows).dump(2) << '\n'; break;
  }
}

void print_witness(const GlobalOptions& opt, const std::string& function_text,
                   const CompositeWitness& w) {
  switch (opt.format()) {
    case Format::Table: std::cout << witness_table(function_text, w); break;
    case Format::Csv: std::cout << witness_csv(function_text, w); break;
    case Format::Json:
      std::cout << witness_json(function_text, w).dump(2) << '\n';
      break;
  }
}

void print_value(const GlobalOptions& opt, const std::string& key,
                 const std::string& value) {
  switch (opt.format()) {
    case Format::Table: std::cout << value << '\n'; break;
    case Format::Csv: std::cout << key << '\n' << value << '\n'; break;
    case Format::Json: {
      Json obj;
      obj[key] = value;
      std::cout << obj.dump(2) << '\n';
      break;
    }
  }
}

int run(CLI::App& app, const GlobalOptions& opt) {
  if (auto* cmd = app.get_subcommand("eval"); cmd->parsed()) {
    Expr e = parse(cmd->get_option("expr")->as<std::string>());
    long n = cmd->get_option("-n")->as<long>();
    print_value(opt, "value", evaluate(e, BigInt(n), opt.budget()).get_str());
    return kOk;
  }

  if (auto* cmd = app.get_subcommand("classify"); cmd->parsed()) {
    Expr e = parse(cmd->get_option("expr")->as<std::string>());
    Classification c = classify(e, opt.budget());
    std::string text = c.is_constant() ? "constant " + c.value->get_str()
                                       : std::string("strictly increasing");
    print_value(opt, "classification", text);
    return kOk;
  }

  if (auto* cmd = app.get_subcommand("normalize"); cmd->parsed()) {
    Expr e = parse(cmd->get_option("expr")->as<std::string>());
    print_value(opt, "normalized", render(normalize(e, opt.budget_bits)));
    return kOk;
  }

  if (auto* cmd = app.get_subcommand("shift"); cmd->parsed()) {
    Expr e = parse(cmd->get_option("expr")->as<std::string>());
    long k = cmd->get_option("-k")->as<long>();
    print_value(opt, "shifted", render(shift(e, BigInt(k))));
    return kOk;
  }

  if (auto* cmd = app.get_subcommand("equal"); cmd->parsed()) {
    Expr e1 = parse(cmd->get_option("expr1")->as<std::string>());
    Expr e2 = parse(cmd->get_option("expr2")->as<std::string>());
    long upto = cmd->get_option("--samples")->as<long>();
    std::vector<BigInt> samples;
    for (long n = 1; n <= upto; ++n) samples.emplace_back(n);
    auto diff = semantic_equal(e1, e2, samples, opt.budget());
    if (diff) {
      print_value(opt, "verdict",
                  "differ at n = " + diff->n.get_str() + ": " +
                      diff->lhs.get_str() + " vs " + diff->rhs.get_str());
    } else {
      print_value(opt, "verdict",
                  "agree on samples 1.." + std::to_string(upto) +
                      " (evidence, not proof)");
    }
    return kOk;
  }

  if (auto* cmd = app.get_subcommand("length"); cmd->parsed()) {
    Expr e = parse(cmd->get_option("expr")->as<std::string>());
    int max_ops = cmd->get_option("--max-ops")->as<int>();
    LengthResult r = syntactic_length(e, max_ops);
    print_value(opt, "length",
                std::to_string(r.length) +
                    (r.word.empty() ? std::string(" (symbol)")
                                    : " word " + word_to_string(r.word)));
    return kOk;
  }

  if (auto* cmd = app.get_subcommand("prime"); cmd->parsed()) {
    BigInt x(cmd->get_option("value")->as<std::string>(), 10);
    PrimalityVerdict v = is_prime(x);
    std::string text;
    switch (v.kind) {
      case Primality::Prime: text = "prime"; break;
      case Primality::Composite: text = "composite"; break;
      case Primality::ProbablePrime:
        text = "probable prime (error < 2^-" +
               std::to_string(v.error_bound_exponent) + ")";
        break;
    }
    print_value(opt, "verdict", text);
    return kOk;
  }

  if (auto* cmd = app.get_subcommand("factor"); cmd->parsed()) {
    BigInt x(cmd->get_option("value")->as<std::string>(), 10);
    Factorization f = factor(x, opt.effort(), opt.seed);
    print_value(opt, "factorization", factorization_text(f));
    return kOk;
  }

  if (auto* cmd = app.get_subcommand("witness"); cmd->parsed()) {
    std::string text = cmd->get_option("expr")->as<std::string>();
    Expr e = parse(text);
    long n_max = cmd->get_option("--n-max")->as<long>();
    SearchOutcome outcome =
        smallest_composite_witness(e, n_max, opt.budget(), opt.effort(), opt.seed);
    print_rows(opt, {outcome_row(render(e), outcome)});
    return outcome.exhausted() ? kExhausted : kOk;
  }

  if (auto* cmd = app.get_subcommand("certify-poly"); cmd->parsed()) {
    std::string text = cmd->get_option("expr")->as<std::string>();
    Expr e = parse(text);
    CompositeWitness w =
        polynomial_certificate(e, opt.budget(), opt.effort(), opt.seed);
    print_witness(opt, render(e), w);
    return kOk;
  }

  if (auto* cmd = app.get_subcommand("certify-exp"); cmd->parsed()) {
    BigInt a(cmd->get_option("-a")->as<std::string>(), 10);
    BigInt b(cmd->get_option("-b")->as<std::string>(), 10);
    CompositeWitness w = exponential_certificate(a, b, opt.effort(), opt.seed);
    print_witness(opt, render(exponential_expr(a, b)), w);
    return kOk;
  }

  if (auto* cmd = app.get_subcommand("scan"); cmd->parsed()) {
    long c_from = cmd->get_option("--c-from")->as<long>();
    long c_to = cmd->get_option("--c-to")->as<long>();
    long n_check = cmd->get_option("--n-check")->as<long>();
    auto rows = scan_family(c_from, c_to, n_check, opt.budget(), opt.effort(),
                            opt.seed, opt.jobs);
    print_rows(opt, rows);
    return kOk;
  }

  if (auto* cmd = app.get_subcommand("infinitude"); cmd->parsed()) {
    std::string text = cmd->get_option("expr")->as<std::string>();
    Expr e = parse(text);
    int count = cmd->get_option("--count")->as<int>();
    long per_shift = cmd->get_option("--per-shift-n-max")->as<long>();
    InfinitudeResult r = infinitude_samples(e, count, per_shift, opt.budget(),
                                            opt.effort(), opt.seed);
    std::vector<ScanRow> rows;
    BigInt prev(0);
    for (const CompositeWitness& w : r.witnesses) {
      ScanRow row;
      row.function_text = render(e);
      row.smallest_composite_index = mpz_get_si(w.index.get_mpz_t());
      row.composite_value = w.value;
      row.factorization = w.factorization;
      row.primes_before = mpz_get_si(BigInt(w.index - prev - 1).get_mpz_t());
      prev = w.index;
      rows.push_back(std::move(row));
    }
    print_rows(opt, rows);
    return r.complete ? kOk : kExhausted;
  }

  if (auto* cmd = app.get_subcommand("enumerate"); cmd->parsed()) {
    int max_ops = cmd->get_option("--max-ops")->as<int>();
    std::vector<std::string> const_strs =
        cmd->get_option("--consts")->as<std::vector<std::string>>();
    std::vector<BigInt> consts;
    for (const auto& s : const_strs) consts.emplace_back(s, 10);
    bool witness_all = cmd->get_option("--witness-all")->as<bool>();
    long n_max = cmd->get_option("--n-max")->as<long>();

    std::vector<Expr> corpus = enumerate_exprs(max_ops, consts);
    if (!witness_all) {
      for (const Expr& e : corpus) std::cout << render(e) << '\n';
      return kOk;
    }
    std::vector<ScanRow> rows;
    for (const Expr& e : corpus) {
      if (classify(e, opt.budget()).is_constant()) continue;
      ScanRow row;
      try {
        row = outcome_row(render(e), smallest_composite_witness(
                                         e, n_max, opt.budget(), opt.effort(),
                                         opt.seed));
      } catch (const BudgetExceededError& err) {
        row.function_text = render(e);
        row.budget_exceeded = true;
        row.primes_before = err.index_reached > 0 ? err.index_reached - 1 : 0;
      }
      rows.push_back(std::move(row));
    }
    print_rows(opt, rows);
    return kOk;
  }

  if (auto* cmd = app.get_subcommand("repro-paper"); cmd->parsed()) {
    std::string out_dir = cmd->get_option("--out-dir")->as<std::string>();
    std::filesystem::create_directories(out_dir);

    // Per-function witness table over the named double-exponential and
    // mixed examples.
    const std::vector<std::string> functions = {
        "2^2^n+1", "3^3^n+1", "n^n+n+1", "7^n+6", "2^2^n+93"};
    std::vector<ScanRow> table;
    for (const std::string& text : functions) {
      Expr e = parse(text);
      table.push_back(outcome_row(
          render(e), smallest_composite_witness(e, 8, opt.budget(),
                                                opt.effort(), opt.seed)));
    }
    std::ofstream(out_dir + "/functions.csv") << scan_csv(table);

    // Output-by-output table for 2^2^n + 93, n = 1..7.
    Expr f46 = parse("2^2^n+93");
    std::string c93 = "n,value,verdict,factorization\n";
    for (long n = 1; n <= 7; ++n) {
      BigInt v = evaluate(f46, BigInt(n), opt.budget());
      PrimalityVerdict verdict = is_prime(v);
      c93 += std::to_string(n) + "," + v.get_str() + ",";
      c93 += counts_as_prime(verdict)
                 ? (verdict.kind == Primality::Prime ? "prime" : "probable-prime")
                 : "composite";
      c93 += ",";
      if (!counts_as_prime(verdict)) {
        c93 += factorization_text(factor(v, opt.effort(), opt.seed));
      }
      c93 += "\n";
    }
    std::ofstream(out_dir + "/c93.csv") << c93;

    // The 2^2^n + 2k + 1 scan for 0 <= k <= 1300.
    auto rows = scan_family(1, 2601, 7, opt.budget(), opt.effort(), opt.seed,
                            opt.jobs);
    std::ofstream(out_dir + "/kscan.csv") << scan_csv(rows);

    long frequent = 0;
    for (const auto& row : rows) {
      if (row.primes_before >= 4) ++frequent;
    }
    std::cout << "wrote " << out_dir << "/functions.csv, c93.csv, kscan.csv\n"
              << "scan rows with at least four leading primes: " << frequent
              << "\n";
    return kOk;
  }

  std::cerr << "no subcommand given (try --help)\n";
  return kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"natural-function workbench: evaluation, classification, and "
               "composite-witness search for prime-output conjectures"};
  app.require_subcommand(0, 1);

  GlobalOptions opt;
  app.add_option("--seed", opt.seed, "seed for randomized factoring")
      ->capture_default_str();
  app.add_option("--budget-bits", opt.budget_bits,
                 "bit-length cap on intermediate values")
      ->capture_default_str();
  app.add_option("--effort", opt.effort_name, "factoring effort")
      ->check(CLI::IsMember({"quick", "standard", "deep"}))
      ->capture_default_str();
  app.add_option("--format", opt.format_name, "output format")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
  app.add_option("--jobs", opt.jobs, "worker threads for scans (0 = auto)")
      ->capture_default_str();

  // Let global flags appear after the subcommand as well.
  auto add_sub = [&app](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->fallthrough();
    return sub;
  };

  auto* eval_cmd = add_sub("eval", "evaluate an expression at n");
  eval_cmd->add_option("expr", "expression text")->required();
  eval_cmd->add_option("-n", "evaluation point (>= 1)")->required();

  auto* classify_cmd =
      add_sub("classify", "constant or strictly increasing");
  classify_cmd->add_option("expr", "expression text")->required();

  auto* normalize_cmd =
      add_sub("normalize", "best-effort normal form");
  normalize_cmd->add_option("expr", "expression text")->required();

  auto* shift_cmd =
      add_sub("shift", "substitute n := n + k");
  shift_cmd->add_option("expr", "expression text")->required();
  shift_cmd->add_option("-k", "shift amount (>= 1)")->required();

  auto* equal_cmd = app.add_subcommand(
      "equal", "compare two expressions on sample points");
  equal_cmd->add_option("expr1", "first expression")->required();
  equal_cmd->add_option("expr2", "second expression")->required();
  equal_cmd->add_option("--samples", "sample points 1..N")->default_val(10);

  auto* length_cmd = app.add_subcommand(
      "length", "minimal generator word for an expression");
  length_cmd->add_option("expr", "expression text")->required();
  length_cmd->add_option("--max-ops", "exact-search size bound")->default_val(12);

  auto* prime_cmd = add_sub("prime", "primality verdict");
  prime_cmd->add_option("value", "integer >= 1")->required();

  auto* factor_cmd = add_sub("factor", "factor an integer >= 2");
  factor_cmd->add_option("value", "integer >= 2")->required();

  auto* witness_cmd = app.add_subcommand(
      "witness", "smallest composite output of an increasing function");
  witness_cmd->add_option("expr", "expression text")->required();
  witness_cmd->add_option("--n-max", "search bound")->default_val(16);

  auto* certify_poly_cmd = app.add_subcommand(
      "certify-poly", "composite witness for a polynomial, by congruence");
  certify_poly_cmd->add_option("expr", "polynomial expression")->required();

  auto* certify_exp_cmd = app.add_subcommand(
      "certify-exp", "composite witness for a^n + b, by Fermat's little theorem");
  certify_exp_cmd->add_option("-a", "base a >= 2")->required();
  certify_exp_cmd->add_option("-b", "offset b >= 0")->default_val(std::string("0"));

  auto* scan_cmd = app.add_subcommand(
      "scan", "scan the family 2^2^n + c over odd c");
  scan_cmd->add_option("--c-from", "first odd c")->required();
  scan_cmd->add_option("--c-to", "last odd c")->required();
  scan_cmd->add_option("--n-check", "indices to test per function")->default_val(7);

  auto* infinitude_cmd = app.add_subcommand(
      "infinitude", "strictly increasing composite witnesses by shifting");
  infinitude_cmd->add_option("expr", "expression text")->required();
  infinitude_cmd->add_option("--count", "witnesses to collect")->default_val(2);
  infinitude_cmd->add_option("--per-shift-n-max", "search bound per shift")
      ->default_val(64);

  auto* enumerate_cmd = app.add_subcommand(
      "enumerate", "list expressions up to normalize-equality");
  enumerate_cmd->add_option("--max-ops", "operator bound")->required();
  enumerate_cmd->add_option("--consts", "constants, comma separated")
      ->required()
      ->delimiter(',');
  enumerate_cmd->add_flag("--witness-all",
                          "run the witness search over the whole corpus");
  enumerate_cmd->add_option("--n-max", "witness search bound")->default_val(12);

  auto* repro_cmd = app.add_subcommand(
      "repro-paper", "regenerate the experiment tables (CSV)");
  repro_cmd->add_option("--out-dir", "output directory")
      ->default_val(std::string("repro-out"));

  CLI11_PARSE(app, argc, argv);

  try {
    return run(app, opt);
  } catch (const SyntaxError& e) {
    std::cerr << "syntax error: " << e.what() << '\n';
    return kSyntax;
  } catch (const BudgetExceededError& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const UnitInputError& e) {
    std::cerr << "unit input: " << e.what() << '\n';
    return kUnitInput;
  } catch (const NotIncreasingError& e) {
    std::cerr << "not increasing: " << e.what() << '\n';
    return kNotIncreasing;
  } catch (const NotPolynomialError& e) {
    std::cerr << "not polynomial: " << e.what() << '\n';
    return kNotPolynomial;
  } catch (const SizeLimitError& e) {
    std::cerr << "size limit: " << e.what() << '\n';
    return kSizeLimit;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}
