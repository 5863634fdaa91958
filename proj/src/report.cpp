#include "qreflect/report.hpp"

#include <cstdio>

namespace qreflect {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
    case Status::finding: return "finding";
  }
  return "?";
}

std::string CheckResult::residual_str() const {
  if (exact && status == Status::pass) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", residual);
  return buf;
}

Checker::Checker(std::string check_id, Mode mode, double tol)
    : check_id_(std::move(check_id)), mode_(mode), tol_(tol), mark_(std::chrono::steady_clock::now()) {}

CheckResult& Checker::push(const std::string& tag, const std::string& instance) {
  CheckResult r;
  r.check = check_id_;
  r.tag = tag;
  r.instance = instance;
  r.exact = (mode_ == Mode::exact);
  auto now = std::chrono::steady_clock::now();
  r.elapsed_ms = std::chrono::duration<double, std::milli>(now - mark_).count();
  mark_ = now;
  rows_.push_back(std::move(r));
  return rows_.back();
}

void Checker::equal(const std::string& tag, const std::string& instance, const Matrix& lhs,
                    const Matrix& rhs) {
  CheckResult& r = push(tag, instance);
  if (mode_ == Mode::exact) {
    if (lhs == rhs) {
      r.status = Status::pass;
      r.residual = 0.0;
    } else {
      r.status = Status::fail;
      r.residual = rel_residual(lhs, rhs);
      for (int i = 0; i < lhs.dim() && r.note.empty(); ++i)
        for (int j = 0; j < lhs.dim(); ++j)
          if (lhs.at(i, j) != rhs.at(i, j)) {
            r.note = "first deviation at entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
            break;
          }
    }
    return;
  }
  r.residual = rel_residual(lhs, rhs);
  r.status = r.residual <= tol_ ? Status::pass : Status::fail;
}

void Checker::zero(const std::string& tag, const std::string& instance, const Matrix& m) {
  equal(tag, instance, m, Matrix(m.dim(), m.mode()));
}

void Checker::scalar_equal(const std::string& tag, const std::string& instance, const Scalar& lhs,
                           const Scalar& rhs) {
  CheckResult& r = push(tag, instance);
  if (mode_ == Mode::exact) {
    if (lhs == rhs) {
      r.status = Status::pass;
      r.residual = 0.0;
    } else {
      r.status = Status::fail;
      r.residual = (lhs - rhs).abs() / (1.0 + lhs.abs());
    }
    return;
  }
  r.residual = (lhs - rhs).abs() / (1.0 + lhs.abs());
  r.status = r.residual <= tol_ ? Status::pass : Status::fail;
}

void Checker::finding(const std::string& tag, const std::string& instance, const std::string& note) {
  CheckResult& r = push(tag, instance);
  r.status = Status::finding;
  r.note = note;
}

void Checker::skipped(const std::string& tag, const std::string& instance, const std::string& note) {
  CheckResult& r = push(tag, instance);
  r.status = Status::skipped;
  r.note = note;
}

void Checker::note_on_last(const std::string& note) {
  if (!rows_.empty()) {
    if (!rows_.back().note.empty()) rows_.back().note += "; ";
    rows_.back().note += note;
  }
}

bool Checker::all_pass() const {
  for (const CheckResult& r : rows_)
    if (r.status == Status::fail) return false;
  return true;
}

std::vector<CheckResult> Checker::take() { return std::move(rows_); }

double masked_residual(const Matrix& lhs, const Matrix& rhs, const std::vector<char>& col_mask) {
  double diff = 0.0, scale = 0.0;
  for (int i = 0; i < lhs.dim(); ++i)
    for (int j = 0; j < lhs.dim(); ++j) {
      if (!col_mask[static_cast<size_t>(j)]) continue;
      diff = std::max(diff, (lhs.at(i, j) - rhs.at(i, j)).abs());
      scale = std::max(scale, lhs.at(i, j).abs());
    }
  return diff / (1.0 + scale);
}

}  // namespace qreflect
