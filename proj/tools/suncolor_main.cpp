// suncolor: SU(N) color-algebra toolkit.
//
// Subcommands:
//   tensors   emit the f/d structure tensors (sun-tensors v1, text or JSON)
//   verify    run the identity suite and print the report (report v1)
//   simplify  rewrite a color expression to normal form, oracle-checked
//   eval      numerically evaluate a color expression at concrete N

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "suncolor/oracle.hpp"
#include "suncolor/rewrite.hpp"
#include "suncolor/tensor_io.hpp"
#include "suncolor/verify.hpp"

namespace {

using namespace suncolor;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

void print_tensors_json(std::ostream& out, const Rank3Tensor& f, const Rank3Tensor& d) {
  char buf[64];
  auto entries = [&](const Rank3Tensor& t) {
    std::string s = "[";
    bool first = true;
    for (const auto& [key, value] : t.nonzeros()) {
      if (!first) s += ",";
      first = false;
      std::snprintf(buf, sizeof(buf), "[%d,%d,%d,%.17g]", key[0], key[1], key[2], value);
      s += buf;
    }
    return s + "]";
  };
  out << "{\"format\":\"sun-tensors\",\"version\":1,\"n\":" << f.n() << ",\"f\":" << entries(f)
      << ",\"d\":" << entries(d) << "}\n";
}

int cmd_tensors(int n, const std::string& out_path, const std::string& format) {
  const GeneratorBasis basis = build_basis(n);
  const Rank3Tensor f = extract_f(basis);
  const Rank3Tensor d = extract_d(basis);
  std::ostringstream body;
  if (format == "json") {
    print_tensors_json(body, f, d);
  } else {
    print_tensors(body, f, d);
  }
  const bool to_stdout = out_path.empty() || out_path == "-";
  if (to_stdout) {
    std::cout << body.str();
    std::cerr << "f nonzeros: " << f.nonzero_count() << ", d nonzeros: " << d.nonzero_count()
              << "\n";
  } else {
    std::ofstream file(out_path);
    if (!file) {
      std::cerr << "error: cannot open '" << out_path << "' for writing\n";
      return kExitFailure;
    }
    file << body.str();
    if (!file.good()) {
      std::cerr << "error: write to '" << out_path << "' failed\n";
      return kExitFailure;
    }
    std::cout << "f nonzeros: " << f.nonzero_count() << ", d nonzeros: " << d.nonzero_count()
              << "\n";
  }
  return 0;
}

int cmd_verify(int n, double tol, long long budget, unsigned long long seed, bool json) {
  const IdentityReport report = run_suite(n, tol, budget, seed);
  if (json) {
    print_report_json(std::cout, report);
  } else {
    print_report(std::cout, report);
  }
  return report.all_passed() ? 0 : kExitFailure;
}

int cmd_simplify(const std::string& text, const std::vector<int>& check_n, bool no_check,
                 bool trace, bool n3_pack, unsigned long long seed) {
  std::vector<int> ns = check_n;
  if (n3_pack) {
    // The pack encodes N=3-only identities; checking at any other N is
    // meaningless and rejected.
    for (const int n : ns) {
      if (n != 3) {
        std::cerr << "error: --n3-pack output is only valid at N = 3; use --check-n 3\n";
        return kExitUsage;
      }
    }
    if (ns.empty()) ns = {3};
  }
  ColorExpr input;
  try {
    input = parse(text);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  }
  RewriteOptions opts;
  opts.n3_pack = n3_pack;
  std::vector<RuleApplication> log;
  if (trace) opts.log = &log;
  const ColorExpr result = simplify(input, opts);
  if (trace) {
    for (const RuleApplication& app : log) {
      std::cerr << app.rule_id << " @ term" << app.term_index << "/factor" << app.factor_index
                << " : " << app.before << " => " << app.after << "\n";
    }
  }
  std::cout << print(result) << "\n";
  if (!no_check && !ns.empty()) {
    const SamplingVerdict verdict = equal_by_sampling(input, result, ns, 50, 1e-9, seed);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e", verdict.worst.residual);
    if (verdict.equal) {
      std::cout << "oracle: agree (worst residual " << buf << ")\n";
    } else {
      std::cout << "oracle: DISAGREE (worst residual " << buf << " at N="
                << verdict.worst.n << ")\n";
      return kExitFailure;
    }
  }
  return 0;
}

int cmd_eval(const std::string& text, int n, const std::vector<std::string>& bindings) {
  ColorExpr expr;
  try {
    expr = parse(text);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::map<std::string, int> assignment;
  for (const std::string& binding : bindings) {
    const auto eq = binding.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= binding.size()) {
      std::cerr << "error: bad --set binding '" << binding << "', expected name=value\n";
      return kExitUsage;
    }
    try {
      assignment[binding.substr(0, eq)] = std::stoi(binding.substr(eq + 1));
    } catch (const std::exception&) {
      std::cerr << "error: bad --set value in '" << binding << "'\n";
      return kExitUsage;
    }
  }
  const cplx value = oracle_eval(expr, n, assignment);
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", value.real(), value.imag());
  std::cout << buf;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SU(N) color-algebra toolkit: generators, structure tensors, identity "
               "verification, symbolic simplification and numeric evaluation"};
  app.require_subcommand(1);

  // tensors
  int n = 0;
  std::string out_path = "-";
  std::string format = "text";
  auto* tensors = app.add_subcommand("tensors", "emit f/d tensors (sun-tensors v1)");
  tensors->add_option("--n", n, "rank parameter N")->required();
  tensors->add_option("--out", out_path, "output path ('-' = stdout)");
  tensors->add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // verify
  double tol = 1e-10;
  long long budget = 20000;
  unsigned long long seed = 0;
  bool json = false;
  auto* verify = app.add_subcommand("verify", "run the identity suite");
  verify->add_option("--n", n, "rank parameter N")->required();
  verify->add_option("--tol", tol, "residual tolerance");
  verify->add_option("--budget", budget, "sample budget for four-index trace checks");
  verify->add_option("--seed", seed, "sampling seed");
  verify->add_flag("--json", json, "emit the report as JSON");

  // simplify
  std::string expr_text;
  std::vector<int> check_n = {2, 3, 4, 5};
  bool no_check = false;
  bool trace = false;
  bool n3_pack = false;
  auto* simplify_cmd = app.add_subcommand("simplify", "rewrite an expression to normal form");
  simplify_cmd->add_option("expr", expr_text, "color expression")->required();
  simplify_cmd->add_option("--check-n", check_n,
                           "N values for the oracle cross-check (default 2 3 4 5)");
  simplify_cmd->add_flag("--no-check", no_check, "skip the oracle cross-check");
  simplify_cmd->add_flag("--trace", trace, "log rule applications to stderr");
  simplify_cmd->add_flag("--n3-pack", n3_pack, "enable the N=3-only contraction pack");
  simplify_cmd->add_option("--seed", seed, "oracle sampling seed");

  // eval
  std::vector<std::string> bindings;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate an expression numerically");
  eval_cmd->add_option("expr", expr_text, "color expression")->required();
  eval_cmd->add_option("--n", n, "rank parameter N")->required();
  eval_cmd->add_option("--set", bindings, "free index assignment name=value (repeatable)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (tensors->parsed()) {
      if (n < 2) {
        std::cerr << "error: --n must be >= 2\n";
        return kExitUsage;
      }
      return cmd_tensors(n, out_path, format);
    }
    if (verify->parsed()) {
      if (n < 2) {
        std::cerr << "error: --n must be >= 2\n";
        return kExitUsage;
      }
      return cmd_verify(n, tol, budget, seed, json);
    }
    if (simplify_cmd->parsed()) {
      return cmd_simplify(expr_text, check_n, no_check, trace, n3_pack, seed);
    }
    if (eval_cmd->parsed()) {
      if (n < 2) {
        std::cerr << "error: --n must be >= 2\n";
        return kExitUsage;
      }
      return cmd_eval(expr_text, n, bindings);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return 0;
}
