#pragma once

#include <map>
#include <utility>

#include "jacobi/lattice.hpp"

namespace jacobi {

// Inclusive lattice index range.
struct IndexRange {
  int first = 0;
  int last = 0;
};

// Two consecutive solution values (psi(n), psi(n+1)) seeding the recurrence.
struct SolutionFrame {
  int n = 0;
  CMat value;  // psi(n)
  CMat next;   // psi(n+1)
};

enum class StepDirection { forward, backward };

/// One step of a(n+1) psi(n+1) + b(n) psi(n) + a(n)^+ psi(n-1) = lambda w(n) psi(n):
/// forward returns the frame at n+1 (computing psi(n+2)), backward the frame at
/// n-1 (computing psi(n-1)).
SolutionFrame step_recurrence(const CoefficientProfile& p, Complex z, const SolutionFrame& frame,
                              StepDirection direction);

using SolutionMap = std::map<int, CMat>;

/// Left Jost solution: z^n I exactly for n >= n_max+1, back-propagated below.
SolutionMap jost_left(const CoefficientProfile& p, Complex z, IndexRange range);

/// Right Jost solution: z^{-n} I exactly for n <= n_min-1, forward-propagated above.
SolutionMap jost_right(const CoefficientProfile& p, Complex z, IndexRange range);

struct JostPair {
  SolutionMap f_l;
  SolutionMap f_r;
  Complex z;
};

JostPair compute_jost_pair(const CoefficientProfile& p, Complex z, IndexRange range);

/// Discrete Wronskian [alpha; beta](n) = alpha(n) a(n+1) beta(n+1) - alpha(n+1) a(n+1)^+ beta(n).
/// alpha and beta are (value at n, value at n+1) pairs.
CMat wronskian(const CoefficientProfile& p, const std::pair<CMat, CMat>& alpha,
               const std::pair<CMat, CMat>& beta, int n);

/// (value at n, value at n+1) of a solution map, adjointed; convenience for Wronskians.
std::pair<CMat, CMat> adjoint_pair(const SolutionMap& sol, int n);
std::pair<CMat, CMat> value_pair(const SolutionMap& sol, int n);

}  // namespace jacobi
