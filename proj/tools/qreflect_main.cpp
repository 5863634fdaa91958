#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "qreflect/affine.hpp"
#include "qreflect/onsager.hpp"
#include "qreflect/rational.hpp"
#include "qreflect/reflection.hpp"
#include "qreflect/rep.hpp"
#include "qreflect/suite.hpp"

namespace {

const char* kUsage = R"(qreflect: exact verification of diagonal boundary operators

usage:
  qreflect verify [flags]       run check suites and print a report
  qreflect list-suites          print the suite selectors
  qreflect dump --what <op> [flags]   print one operator matrix exactly
  qreflect help                 this text

verify flags (defaults in parentheses):
  --suite <name>      all | glrep | affine | reflection | onsager | rational,
                      or a single check name such as reflection.loperator (all)
  --N <list>          comma-separated ranks (2,3)
  --m <list>          comma-separated module levels (0,1,2)
  --a <list|all>      block split positions (all admissible per check)
  --gradation <list>  comma-separated nonnegative parts, length N (principal)
  --q, --q-root, --x, --y, --u, --v, --ep, --em, --p
                      explicit scalar values; anything not given is drawn
                      from the seeded stream per check instance
  --mode exact|float  arithmetic mode (exact); exact mode requires rational
                      values like 3/2, decimals are rejected
  --seed <n>          64-bit seed for all parameter draws (1)
  --reps <n>          random draws per grid point (3)
  --format json|text  report format (text)
  --output <path>     write the report to a file instead of stdout
  --config <path>     key=value file, [section] headers allowed; flags win
  --negative-control  add a deliberately perturbed check; exit must be 1

default draws: q from {+/- p/r : 2 <= p,r <= 7, p != r}; all other scalars
nonzero rationals with |num|,|den| <= 5. Re-drawn (and logged as skipped)
when a draw hits a vanishing product factor.

environment: QREFLECT_THREADS caps the number of worker threads.
exit codes: 0 all checks pass, 1 at least one fail, 2 usage/config error.

dump flags:
  --what   gen | genbar | L | Lbar | R | Rbar | K | Khat | Z | Krat | Khatrat
  --N <n> (2)   --m <n> (1)   --a <n> (1)   --i, --j generator indices (1,2)
  --grad <list> (principal)   --variant ev|evbar (ev)   --solution 1|2 (1)
  --q (3/2)  --x (2/5)  --u (2/5)  --p (1/3)  --ep (2/5)  --em (-1/3)
)";

struct DumpArgs {
  std::map<std::string, std::string> kv;

  std::string get(const std::string& key, const std::string& dflt) const {
    auto it = kv.find(key);
    return it == kv.end() ? dflt : it->second;
  }
  int geti(const std::string& key, int dflt) const {
    auto it = kv.find(key);
    return it == kv.end() ? dflt : std::stoi(it->second);
  }
  qreflect::Scalar gets(const std::string& key, const std::string& dflt) const {
    return qreflect::Scalar::exact(qreflect::parse_rational(get(key, dflt)));
  }
};

int run_dump(const std::vector<std::string>& args) {
  using namespace qreflect;
  DumpArgs d;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i].rfind("--", 0) != 0 || i + 1 >= args.size())
      throw config_error("dump expects --key value pairs, got '" + args[i] + "'");
    d.kv[args[i].substr(2)] = args[i + 1];
    ++i;
  }
  std::string what = d.get("what", "");
  if (what.empty()) throw config_error("dump requires --what");

  int N = d.geti("N", 2);
  long m = d.geti("m", 1);
  int a = d.geti("a", 1);
  int i = d.geti("i", 1);
  int j = d.geti("j", 2);
  Scalar q = d.gets("q", "3/2");
  Scalar x = d.gets("x", "2/5");
  Scalar u = d.gets("u", "2/5");
  Scalar p = d.gets("p", "1/3");
  BoundaryParams bp{a, d.gets("ep", "2/5"), d.gets("em", "-1/3")};
  Gradation grad = Gradation::principal(N);
  if (d.kv.count("grad")) {
    std::vector<long> parts;
    std::string t = d.kv["grad"];
    for (size_t pos = 0; pos < t.size();) {
      size_t c = t.find(',', pos);
      if (c == std::string::npos) c = t.size();
      parts.push_back(std::stol(t.substr(pos, c - pos)));
      pos = c + 1;
    }
    grad = Gradation(parts);
  }
  EvVariant variant = d.get("variant", "ev") == "evbar" ? EvVariant::evbar : EvVariant::ev;

  Matrix out;
  if (what == "gen" || what == "genbar") {
    Rep rep = oscillator_rep(N, m, q);
    out = what == "gen" ? rep.gen(i, j) : rep.genbar(i, j);
  } else if (what == "L" || what == "Lbar") {
    Rep rep = oscillator_rep(N, m, q);
    out = (what == "L" ? build_L(rep, grad, x) : build_Lbar(rep, grad, x)).flatten();
  } else if (what == "R") {
    out = build_R(grad, q, x);
  } else if (what == "Rbar") {
    out = build_Rbar(grad, q, x);
  } else if (what == "K") {
    out = k_matrix(grad, x, bp, Mode::exact);
  } else if (what == "Khat") {
    out = k_operator(oscillator_rep(N, m, q), grad, x, bp);
  } else if (what == "Z") {
    Rep rep = oscillator_rep(N, m, q);
    out = build_Z(evaluate(rep, grad, x, variant), bp, j, i);
  } else if (what == "Krat") {
    out = rational_k_matrix(N, a, grad.total(), u, p, Mode::exact);
  } else if (what == "Khatrat") {
    out = rational_k_operator(classical_rep(N, m), a, grad.total(), u, p, d.geti("solution", 1));
  } else {
    throw config_error("unknown dump target '" + what + "'");
  }
  std::cout << out.str() << "\n";
  return 0;
}

int run_verify(const std::vector<std::string>& args) {
  using namespace qreflect;
  RunConfig cfg = parse_verify_args(args);
  SuiteResult result = run_suite(cfg);
  std::string report = emit_report(cfg, result.checks, cfg.format);
  if (cfg.output.empty()) {
    std::cout << report;
  } else {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) throw config_error("cannot write output file '" + cfg.output + "'");
    f << report;
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] == "help" || args[0] == "--help" || args[0] == "-h") {
    std::cout << kUsage;
    return args.empty() ? 2 : 0;
  }
  try {
    if (args[0] == "verify")
      return run_verify({args.begin() + 1, args.end()});
    if (args[0] == "list-suites") {
      for (const auto& s : qreflect::suite_names()) std::cout << s << "\n";
      return 0;
    }
    if (args[0] == "dump") return run_dump({args.begin() + 1, args.end()});
    std::cerr << "unknown subcommand '" << args[0] << "'; try: qreflect help\n";
    return 2;
  } catch (const qreflect::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
