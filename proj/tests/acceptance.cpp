// One pass/fail line per acceptance criterion, each with a wall-clock budget.
// Exit code = number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qreflect/suite.hpp"

using namespace qreflect;

namespace {

struct Outcome {
  bool ok = true;
  size_t rows = 0;
  std::string detail;
};

RunConfig base_cfg(std::string suite, std::vector<int> Ns, std::vector<long> ms, int reps = 3) {
  RunConfig cfg;
  cfg.suite = std::move(suite);
  cfg.Ns = std::move(Ns);
  cfg.ms = std::move(ms);
  cfg.repetitions = reps;
  return cfg;
}

Outcome expect_clean(const RunConfig& cfg, Outcome acc = {}) {
  SuiteResult r = run_suite(cfg);
  acc.rows += r.checks.size();
  if (r.exit_code != 0) {
    acc.ok = false;
    for (const auto& c : r.checks)
      if (c.status == Status::fail) {
        acc.detail = c.check + "/" + c.tag + " " + c.params;
        break;
      }
  }
  return acc;
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  struct Criterion {
    int id;
    const char* label;
    double budget_s;
    std::function<Outcome()> run;
  };

  std::vector<Criterion> criteria = {
      {1, "defining and appendix relations, exact", 30.0,
       [] { return expect_clean(base_cfg("glrep", {2, 3, 4}, {1, 2, 3})); }},

      {2, "loop relations and transport, both variants and gradations", 60.0,
       [] {
         Outcome acc = expect_clean(base_cfg("affine.defining", {2, 3}, {1, 2}));
         return expect_clean(base_cfg("affine.intertwine", {2, 3}, {1, 2}), acc);
       }},

      {3, "auxiliary-matrix consistency and cubic ratio identity", 10.0,
       [] {
         Outcome acc = expect_clean(base_cfg("affine.rmatrix", {2, 3, 4}, {1}));
         return expect_clean(base_cfg("affine.ybe", {2, 3}, {1}), acc);
       }},

      {4, "boundary equation, matrix solution, every split", 20.0,
       [] { return expect_clean(base_cfg("reflection.matrix", {2, 3, 4}, {1})); }},

      {5, "boundary equation, module solution, with negative control", 300.0,
       [] {
         Outcome acc = expect_clean(base_cfg("reflection.loperator", {2, 3}, {0, 1, 2, 3}));
         acc = expect_clean(base_cfg("reflection.loperator", {4}, {1}), acc);
         RunConfig nc = base_cfg("reflection.loperator", {2}, {1}, 1);
         nc.negative_control = true;
         SuiteResult bad = run_suite(nc);
         acc.rows += bad.checks.size();
         if (bad.exit_code != 1) {
           acc.ok = false;
           acc.detail = "negative control did not fail";
         }
         return acc;
       }},

      {6, "sufficiency constraints and evaluation-map match", 20.0,
       [] {
         RunConfig cfg = base_cfg("reflection.constraints", {2, 3, 4}, {1, 2});
         SuiteResult r = run_suite(cfg);
         Outcome acc;
         acc.rows = r.checks.size();
         acc.ok = r.exit_code == 0;
         bool rank2_noted = false;
         for (const auto& c : r.checks)
           rank2_noted = rank2_noted || (c.params.find("N=2") != std::string::npos &&
                                         c.note.find("identically at rank 2") != std::string::npos);
         if (!rank2_noted) {
           acc.ok = false;
           acc.detail = "rank-2 trivial branch not reported";
         }
         return expect_clean(base_cfg("affine.evmatch", {2, 3, 4}, {1, 2}), acc);
       }},

      {7, "two-sided product identity at the compatible deformation point", 60.0,
       [] { return expect_clean(base_cfg("affine.llbar", {2, 3}, {0, 1, 2, 3})); }},

      {8, "literal product variants against the normalized operator", 60.0,
       [] { return expect_clean(base_cfg("reflection.kvariants", {2, 3}, {0, 1, 2})); }},

      {9, "coupled-pair relation family and transport", 300.0,
       [] { return expect_clean(base_cfg("onsager", {2, 3, 4}, {1, 2})); }},

      {10, "additive degeneration, exact and limiting", 120.0,
       [] { return expect_clean(base_cfg("rational", {2, 3}, {1, 2, 3})); }},

      {11, "determinism and exit codes", 5.0,
       [] {
         Outcome acc;
         RunConfig cfg = base_cfg("reflection", {2}, {0, 1}, 2);
         cfg.seed = 17;
         SuiteResult a = run_suite(cfg);
         SuiteResult b = run_suite(cfg);
         acc.rows = a.checks.size() + b.checks.size();
         bool same = a.exit_code == b.exit_code && a.checks.size() == b.checks.size();
         for (size_t i = 0; same && i < a.checks.size(); ++i)
           same = a.checks[i].check == b.checks[i].check && a.checks[i].tag == b.checks[i].tag &&
                  a.checks[i].instance == b.checks[i].instance &&
                  a.checks[i].params == b.checks[i].params &&
                  a.checks[i].status == b.checks[i].status &&
                  a.checks[i].residual == b.checks[i].residual;
         if (!same) {
           acc.ok = false;
           acc.detail = "repeated run differs";
         }
         if (a.exit_code != 0) {
           acc.ok = false;
           acc.detail = "clean run has nonzero exit";
         }
         cfg.negative_control = true;
         if (run_suite(cfg).exit_code != 1) {
           acc.ok = false;
           acc.detail = "negative control exit code not 1";
         }
         return acc;
       }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    auto t0 = clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.ok = false;
      out.detail = e.what();
    }
    double secs = std::chrono::duration<double>(clock::now() - t0).count();
    bool in_budget = secs <= c.budget_s;
    bool ok = out.ok && in_budget;
    if (!ok) ++failures;
    std::printf("%s criterion %2d: %s (%.1fs of %.0fs budget, %zu rows)%s%s\n",
                ok ? "PASS" : "FAIL", c.id, c.label, secs, c.budget_s, out.rows,
                out.detail.empty() ? "" : " :: ", out.detail.c_str());
    std::fflush(stdout);
  }
  if (failures == 0) std::printf("acceptance: all %zu criteria hold\n", criteria.size());
  return failures;
}
