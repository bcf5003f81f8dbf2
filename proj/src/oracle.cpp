#include "jacobi/oracle.hpp"

namespace jacobi {

PlaneWaveFit fit_plane_waves(const CMat& value_at_n, const CMat& value_at_next, int n, Complex z,
                             Region region) {
  const Complex det = 1.0 / z - z;  // z^n z^{-n-1} - z^{-n} z^{n+1}
  if (std::abs(det) < 1e-9)
    throw DegenerateFitError("plane-wave fit: z too close to an exceptional point");
  PlaneWaveFit fit;
  fit.region = region;
  fit.outgoing = (zpow(z, -n - 1) * value_at_n - zpow(z, -n) * value_at_next) / det;
  fit.incoming = (-zpow(z, n + 1) * value_at_n + zpow(z, n) * value_at_next) / det;
  return fit;
}

ScatteringData oracle_scattering(const CoefficientProfile& p, const SpectralPoint& zp) {
  const Complex z = zp.z;
  // first sites where the free two-wave form is exact
  const int left_hi = p.n_min() - 1;
  const int right_lo = p.n_max() + 1;

  const SolutionMap fl = jost_left(p, z, {left_hi - 1, left_hi});
  const SolutionMap fr = jost_right(p, z, {right_lo, right_lo + 1});

  const PlaneWaveFit left_fit =
      fit_plane_waves(fl.at(left_hi - 1), fl.at(left_hi), left_hi - 1, z, Region::left);
  const PlaneWaveFit right_fit =
      fit_plane_waves(fr.at(right_lo), fr.at(right_lo + 1), right_lo, z, Region::right);

  // f_l = z^n Tl^{-1} + z^{-n} L Tl^{-1} on the left; f_r mirrored on the right
  ScatteringData d;
  d.point = zp;
  d.Tl = inverse(left_fit.outgoing);
  d.L = left_fit.incoming * d.Tl;
  d.Tr = inverse(right_fit.incoming);
  d.R = right_fit.outgoing * d.Tr;
  return d;
}

}  // namespace jacobi
