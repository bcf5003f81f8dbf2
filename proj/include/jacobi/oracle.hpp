#pragma once

#include "jacobi/scattering.hpp"

namespace jacobi {

enum class Region { left, right };

// Coefficients of the free two-wave form z^n * outgoing + z^{-n} * incoming.
struct PlaneWaveFit {
  CMat outgoing;
  CMat incoming;
  Region region = Region::left;
};

/// Exact blockwise solve of the two-site system
///   value_at_n = z^n c3 + z^{-n} c4,  value_at_next = z^{n+1} c3 + z^{-n-1} c4.
/// Throws DegenerateFitError when |z - 1/z| is too small to solve.
PlaneWaveFit fit_plane_waves(const CMat& value_at_n, const CMat& value_at_next, int n, Complex z,
                             Region region);

/// Brute-force extraction: propagate each Jost solution across the window and
/// read the coefficients off the exact plane-wave form in the far free region.
ScatteringData oracle_scattering(const CoefficientProfile& p, const SpectralPoint& zp);

}  // namespace jacobi
