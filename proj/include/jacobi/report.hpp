#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "jacobi/cmatrix.hpp"

namespace jacobi {

struct CheckResult {
  std::string name;
  double residual = 0.0;
};

// Named residuals from an identity suite; callers decide the tolerance.
class ReportCard {
public:
  void add(std::string name, double residual) { items_.push_back({std::move(name), residual}); }

  void merge(const ReportCard& other) {
    items_.insert(items_.end(), other.items_.begin(), other.items_.end());
  }

  const std::vector<CheckResult>& items() const { return items_; }

  double max_residual() const {
    double m = 0.0;
    for (const auto& it : items_) m = std::max(m, it.residual);
    return m;
  }

  double residual_of(const std::string& name) const {
    for (const auto& it : items_)
      if (it.name == name) return it.residual;
    return -1.0;
  }

  bool all_below(double tol) const { return max_residual() < tol; }

private:
  std::vector<CheckResult> items_;
};

/// ||got - want||_op scaled by max(1, ||want||_op); the workhorse residual.
inline double rel_residual(const CMat& got, const CMat& want) {
  return op_norm(got - want) / std::max(1.0, op_norm(want));
}

inline double rel_residual(Complex got, Complex want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace jacobi
