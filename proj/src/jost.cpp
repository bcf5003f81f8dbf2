#include "jacobi/jost.hpp"

namespace jacobi {

SolutionFrame step_recurrence(const CoefficientProfile& p, Complex z, const SolutionFrame& frame,
                              StepDirection direction) {
  const Complex lambda = lambda_of_z(z, p.tail());
  const int n = frame.n;
  if (direction == StepDirection::forward) {
    // recurrence at index n+1 solved for psi(n+2)
    const CMat rhs = lambda * p.w(n + 1) * frame.next - p.b(n + 1) * frame.next -
                     p.a(n + 1).adjoint() * frame.value;
    return {n + 1, frame.next, inverse(p.a(n + 2)) * rhs};
  }
  // recurrence at index n solved for psi(n-1)
  const CMat rhs =
      lambda * p.w(n) * frame.value - p.b(n) * frame.value - p.a(n + 1) * frame.next;
  return {n - 1, CMat(inverse(CMat(p.a(n).adjoint())) * rhs), frame.value};
}

SolutionMap jost_left(const CoefficientProfile& p, Complex z, IndexRange range) {
  if (range.first > range.last) return {};
  SolutionMap out;
  const CMat id = identity(p.q());
  const int free_start = p.n_max() + 1;  // z^n I is exact from here on
  for (int n = std::max(range.first, free_start); n <= range.last; ++n)
    out.emplace(n, CMat(zpow(z, n) * id));
  if (range.first < free_start) {
    SolutionFrame frame{free_start, CMat(zpow(z, free_start) * id),
                        CMat(zpow(z, free_start + 1) * id)};
    while (frame.n > range.first) {
      frame = step_recurrence(p, z, frame, StepDirection::backward);
      if (frame.n <= range.last) out.emplace(frame.n, frame.value);
    }
  }
  return out;
}

SolutionMap jost_right(const CoefficientProfile& p, Complex z, IndexRange range) {
  if (range.first > range.last) return {};
  SolutionMap out;
  const CMat id = identity(p.q());
  const int free_end = p.n_min() - 1;  // z^{-n} I is exact up to here
  for (int n = range.first; n <= std::min(range.last, free_end); ++n)
    out.emplace(n, CMat(zpow(z, -n) * id));
  if (range.last > free_end) {
    SolutionFrame frame{free_end - 1, CMat(zpow(z, -(free_end - 1)) * id),
                        CMat(zpow(z, -free_end) * id)};
    while (frame.n + 1 < range.last) {
      frame = step_recurrence(p, z, frame, StepDirection::forward);
      const int site = frame.n + 1;
      if (site >= range.first) out.emplace(site, frame.next);
    }
  }
  return out;
}

JostPair compute_jost_pair(const CoefficientProfile& p, Complex z, IndexRange range) {
  return {jost_left(p, z, range), jost_right(p, z, range), z};
}

CMat wronskian(const CoefficientProfile& p, const std::pair<CMat, CMat>& alpha,
               const std::pair<CMat, CMat>& beta, int n) {
  const CMat an1 = p.a(n + 1);
  return alpha.first * an1 * beta.second - alpha.second * an1.adjoint() * beta.first;
}

std::pair<CMat, CMat> adjoint_pair(const SolutionMap& sol, int n) {
  return {sol.at(n).adjoint(), sol.at(n + 1).adjoint()};
}

std::pair<CMat, CMat> value_pair(const SolutionMap& sol, int n) {
  return {sol.at(n), sol.at(n + 1)};
}

}  // namespace jacobi
