#pragma once

#include <utility>

#include "jacobi/jost.hpp"
#include "jacobi/report.hpp"

namespace jacobi {

// The four q x q scattering coefficients at one spectral point.
struct ScatteringData {
  SpectralPoint point;
  CMat Tl;  // left transmission
  CMat Tr;  // right transmission
  CMat L;   // left reflection
  CMat R;   // right reflection

  int q() const { return static_cast<int>(Tl.rows()); }
};

// 2q x 2q block matrix [[Tl, R], [L, Tr]]; unitary on the unit circle.
struct SMatrix {
  SpectralPoint point;
  CMat s;
};

/// Scattering coefficients from Wronskians of Jost solutions, evaluated at
/// n = n_max+1 where the left Jost solution is an exact plane wave.
/// Throws SingularMatrixError when a transmission inverse is singular or its
/// condition estimate exceeds kConditionLimit.
ScatteringData extract_scattering(const CoefficientProfile& p, const SpectralPoint& zp);

ScatteringData identity_scattering(const SpectralPoint& zp, int q);

SMatrix assemble_smatrix(const ScatteringData& d);

/// ||S^+ S - I||_op.
double unitarity_residual(const ScatteringData& d);

/// Physical solutions Psi_l = f_l Tl and Psi_r = f_r Tr on the range.
std::pair<SolutionMap, SolutionMap> physical_solutions(const CoefficientProfile& p,
                                                       const SpectralPoint& zp,
                                                       const ScatteringData& d, IndexRange range);

/// Residuals for unitarity, the conjugation symmetries, and every Wronskian
/// relation between Jost solutions and scattering coefficients, each Wronskian
/// evaluated at three lattice sites (left free region, window, right free region).
ReportCard identity_suite(const CoefficientProfile& p, const SpectralPoint& zp,
                          const ScatteringData& d);

}  // namespace jacobi
