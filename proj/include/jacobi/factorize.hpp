#pragma once

#include <span>
#include <vector>

#include "jacobi/transition.hpp"

namespace jacobi {

// Strictly increasing cut points m_1 < ... < m_P splitting the lattice into
// P+1 fragments (-inf, m_1], [m_1+1, m_2], ..., [m_P+1, +inf).
struct Partition {
  std::vector<int> cuts;
};

struct Fragment {
  int index = 0;  // 1-based position, left to right
  CoefficientProfile profile;
};

/// Fragment profiles carry the parent coefficients on their piece and the tail
/// elsewhere; site m belongs to the left fragment and a(m+1) to the right one.
/// Throws InvalidPartitionError unless the cuts are strictly increasing and nonempty.
std::vector<Fragment> fragment(const CoefficientProfile& p, const Partition& part);

/// Residuals of Lambda = Lambda_1 ... Lambda_{P+1} and Sigma = Sigma_{P+1} ... Sigma_1.
ReportCard factorization_check(const CoefficientProfile& p, const Partition& part,
                               const SpectralPoint& zp);

/// Full-line coefficients from a left and a right fragment's coefficients.
/// Throws SingularMatrixError if I - R_1 L_2 is numerically singular.
ScatteringData compose_scattering(const ScatteringData& left, const ScatteringData& right);

/// Ordered left-to-right fold of the pairwise composition.
ScatteringData compose_scattering(std::span<const ScatteringData> ordered);

/// Closed-form coefficients for a profile whose nonhomogeneity sits at one site.
/// Throws NotPointDefectError when the stored sites span more than one point.
ScatteringData point_defect_closed_form(const CoefficientProfile& p, const SpectralPoint& zp);

/// With a single cut m: residuals of the half-line Jost identities (fragment
/// Jost solutions agreeing with the parent's on their side, exact plane-wave
/// forms on the far side, boundary coupling through a(m+1)) and of both
/// fragment-side representations of the mixed frame at the cut.
ReportCard fragment_jost_relations(const CoefficientProfile& p, const Partition& part,
                                   const SpectralPoint& zp);

}  // namespace jacobi
