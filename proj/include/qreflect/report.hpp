#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "qreflect/matrix.hpp"

namespace qreflect {

enum class Status { pass, fail, skipped, finding };

std::string to_string(Status s);

/// One verified identity instance.
struct CheckResult {
  std::string check;     // check family, e.g. "glrep.defining"
  std::string tag;       // identity tag within the family, e.g. "serre"
  std::string instance;  // index assignment, e.g. "i=1 j=2"
  std::string params;    // parameter point, filled by the runner
  Status status = Status::pass;
  double residual = 0.0;  // max residual over the instance (0 for exact pass)
  bool exact = true;
  std::string note;
  double elapsed_ms = 0.0;

  std::string residual_str() const;
};

/// Collects CheckResult rows. equal()/zero() compare exactly in exact mode
/// and against the relative tolerance in float mode.
class Checker {
 public:
  Checker(std::string check_id, Mode mode, double tol = 1e-9);

  void equal(const std::string& tag, const std::string& instance, const Matrix& lhs,
             const Matrix& rhs);
  void zero(const std::string& tag, const std::string& instance, const Matrix& m);
  void scalar_equal(const std::string& tag, const std::string& instance, const Scalar& lhs,
                    const Scalar& rhs);
  /// Row that is reported but never asserted (exploratory result).
  void finding(const std::string& tag, const std::string& instance, const std::string& note);
  void skipped(const std::string& tag, const std::string& instance, const std::string& note);
  void note_on_last(const std::string& note);

  Mode mode() const { return mode_; }
  double tol() const { return tol_; }
  bool all_pass() const;
  size_t rows() const { return rows_.size(); }
  std::vector<CheckResult> take();

 private:
  CheckResult& push(const std::string& tag, const std::string& instance);

  std::string check_id_;
  Mode mode_;
  double tol_;
  std::vector<CheckResult> rows_;
  std::chrono::steady_clock::time_point mark_;
};

/// Residuals on a masked column set (float truncation of non-integer-weight
/// modules: only columns supported away from the cutoff boundary count).
double masked_residual(const Matrix& lhs, const Matrix& rhs, const std::vector<char>& col_mask);

}  // namespace qreflect
