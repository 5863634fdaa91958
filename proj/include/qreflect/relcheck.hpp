#pragma once

#include <string>
#include <vector>

#include "qreflect/rep.hpp"
#include "qreflect/report.hpp"

namespace qreflect {

inline std::string kv(const char* k, long v) { return std::string(k) + "=" + std::to_string(v); }

inline std::string inst2(const char* k1, long v1, const char* k2, long v2) {
  return kv(k1, v1) + " " + kv(k2, v2);
}

inline std::string inst3(const char* k1, long v1, const char* k2, long v2, const char* k3,
                         long v3) {
  return inst2(k1, v1, k2, v2) + " " + kv(k3, v3);
}

inline std::string inst4(long a, long b, long c, long d) {
  return inst2("a", a, "b", b) + " " + inst2("c", c, "d", d);
}

/// Repeats each column flag `times` times, matching the composite index
/// (v, i) -> (v-1)*times + (i-1) of a flattened two-leg space whose first
/// leg is the module.
inline std::vector<char> expand_mask(const std::vector<char>& m, int times) {
  if (m.empty()) return m;
  std::vector<char> out;
  out.reserve(m.size() * static_cast<size_t>(times));
  for (char c : m)
    for (int t = 0; t < times; ++t) out.push_back(c);
  return out;
}

inline Matrix mask_columns(const Matrix& m, const std::vector<char>& mask) {
  Matrix out = m;
  for (int j = 0; j < out.dim(); ++j) {
    if (mask[j]) continue;
    for (int i = 0; i < out.dim(); ++i) out.at(i, j) = Scalar::zero(out.mode());
  }
  return out;
}

/// Checker wrapper that restricts residuals to interior columns when the
/// module carries a hard occupation cutoff, so boundary-layer truncation
/// artifacts never count against a relation.
struct RelChecker {
  Checker ck;
  std::vector<char> mask;

  RelChecker(const std::string& id, const Rep& r, double tol = 1e-9) : ck(id, r.mode, tol) {
    if (r.truncated) mask = r.interior_mask();
  }

  RelChecker(const std::string& id, Mode mode, std::vector<char> col_mask, double tol = 1e-9)
      : ck(id, mode, tol), mask(std::move(col_mask)) {}

  void equal(const std::string& tag, const std::string& inst, const Matrix& lhs,
             const Matrix& rhs) {
    if (mask.empty())
      ck.equal(tag, inst, lhs, rhs);
    else
      ck.equal(tag, inst, mask_columns(lhs, mask), mask_columns(rhs, mask));
  }

  void zero(const std::string& tag, const std::string& inst, const Matrix& m) {
    if (mask.empty())
      ck.zero(tag, inst, m);
    else
      ck.zero(tag, inst, mask_columns(m, mask));
  }
};

}  // namespace qreflect
