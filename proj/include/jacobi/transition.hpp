#pragma once

#include <vector>

#include "jacobi/scattering.hpp"

namespace jacobi {

// 2q x 2q solution frames at site n. Column structure: top row holds the two
// solutions at n, bottom row a(n+1) times the solutions at n+1.
//   left  = [f_l, g_l], right = [g_r, f_r], mixed = [f_l, f_r].
struct FundamentalFrame {
  int n = 0;
  CMat left;
  CMat right;
  CMat mixed;
};

enum class TransitionKind { left, right };

struct TransitionMatrix {
  SpectralPoint point;
  TransitionKind kind = TransitionKind::left;
  CMat m;
};

struct TransitionPair {
  TransitionMatrix left;   // multiplies frames left-to-right
  TransitionMatrix right;  // its inverse
  double cross_residual = 0.0;
};

FundamentalFrame build_frames(const CoefficientProfile& p, const SpectralPoint& zp, int n);

struct FrameInverses {
  CMat left_inv;
  CMat right_inv;
  CMat mixed_inv;
};

/// Closed-form frame inverses built from adjointed Jost values and the
/// transmission coefficients; independent of the LU path.
FrameInverses closed_form_inverses(const CoefficientProfile& p, const SpectralPoint& zp, int n,
                                   const ScatteringData& d);

/// Transition matrices from scattering data at z alone, using the adjoint
/// block forms valid on the unit circle.
TransitionPair build_transition(const ScatteringData& d);

/// Same, plus a cross-check against the block forms written with data at 1/z.
TransitionPair build_transition(const ScatteringData& d, const ScatteringData& d_at_inv_z);

/// Residuals of the frame relations: left = right * Lambda, right = left * Sigma,
/// and both factorizations of the mixed frame through the scattering data.
ReportCard relate_frames(const FundamentalFrame& frame, const TransitionMatrix& left,
                         const TransitionMatrix& right);

/// Determinant identity suite over the window: site-to-site determinant
/// ratios, finite-product formulas, free-region values, det S, transition
/// determinants, and the equal-determinant simplifications when det a(n) is real.
ReportCard determinant_suite(const CoefficientProfile& p, const SpectralPoint& zp,
                             const std::vector<FundamentalFrame>& frames,
                             const ScatteringData& d);

/// Convenience overload: frames built over [n_min-2, n_max+1].
ReportCard determinant_suite(const CoefficientProfile& p, const SpectralPoint& zp,
                             const ScatteringData& d);

}  // namespace jacobi
