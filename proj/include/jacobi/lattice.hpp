#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jacobi/cmatrix.hpp"

namespace jacobi {

// Spatial-infinity scalars of the coefficient triple.
struct Tail {
  double a_inf = 1.0;
  double b_inf = 0.0;
  double w_inf = 1.0;
};

using SiteMap = std::map<int, CMat>;

// Coefficient triple (a(n), b(n), w(n)) on the integer lattice with a finite
// perturbation window [n_min, n_max]; outside the window (and for unset sites
// inside it) the coefficients equal the tail scalars times the identity.
// The a-map may additionally carry the site n_max+1, which couples the last
// window site to the right free region.
class CoefficientProfile {
public:
  CoefficientProfile(int q, int n_min, int n_max, SiteMap a, SiteMap b, SiteMap w, Tail tail);

  static CoefficientProfile free_profile(int q, Tail tail);

  int q() const { return q_; }
  int n_min() const { return n_min_; }
  int n_max() const { return n_max_; }
  bool window_empty() const { return n_min_ > n_max_; }
  const Tail& tail() const { return tail_; }

  CMat a(int n) const;
  CMat b(int n) const;
  CMat w(int n) const;

  const SiteMap& a_sites() const { return a_; }
  const SiteMap& b_sites() const { return b_; }
  const SiteMap& w_sites() const { return w_; }

private:
  int q_;
  int n_min_, n_max_;
  SiteMap a_, b_, w_;
  Tail tail_;
};

inline constexpr double kDefaultExclusionEps = 1e-6;
inline constexpr double kUnitCircleTol = 1e-12;

// A point z on the unit circle away from +-1, together with the spectral
// parameter lambda = (a_inf (z + 1/z) + b_inf) / w_inf it corresponds to.
struct SpectralPoint {
  Complex z;
  Complex lambda;
};

/// lambda = (a_inf (z + 1/z) + b_inf) / w_inf; throws DomainError at z = 0.
Complex lambda_of_z(Complex z, const Tail& tail);

/// Validates |z| = 1 within kUnitCircleTol and distance to +-1 above exclusion_eps.
SpectralPoint make_spectral_point(Complex z, const Tail& tail,
                                  double exclusion_eps = kDefaultExclusionEps);

/// n_points at half-step offsets on the open upper and lower half-circles,
/// with candidates inside the +-1 exclusion bands dropped.
/// Throws EmptyGridError when nothing survives.
std::vector<SpectralPoint> make_spectral_grid(const Tail& tail, int n_points,
                                              double exclusion_eps = kDefaultExclusionEps);

enum class LatticeKind { jacobi_like, schroedinger_like };

std::string to_string(LatticeKind kind);

struct ValidationItem {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationItem> items;
  std::optional<LatticeKind> classification;

  bool all_passed() const {
    for (const auto& it : items)
      if (!it.passed) return false;
    return true;
  }
};

/// Admissibility checks: (a) b,w selfadjoint; (b) a invertible, w positive;
/// (c) tail scalars valid plus Jacobi-like / Schroedinger-like classification;
/// (d) the perturbation moments vanish outside the window (finite support).
ValidationReport validate_profile(const CoefficientProfile& p);

// Weight-free form of the system: a_tilde -> I and b_tilde -> 0 off the
// enlarged window [n_min, n_max+1]; the implied tail is (1, 0, 1).
struct ReducedProfile {
  int q = 1;
  int n_min = 0;
  int n_max = -1;
  SiteMap a_tilde;
  SiteMap b_tilde;

  CoefficientProfile to_profile() const;
};

/// a_tilde(n) = (w_inf/a_inf) w(n-1)^{-1/2} a(n) w(n)^{-1/2},
/// b_tilde(n) = (w_inf/a_inf) w(n)^{-1/2} b(n) w(n)^{-1/2} - (b_inf/a_inf) I.
ReducedProfile reduce(const CoefficientProfile& p);

// ---- profile config I/O (UTF-8 JSON; complex numbers as [re, im] pairs) ----

struct ProfileConfig {
  CoefficientProfile profile;
  bool expect_unequal_det = false;
};

ProfileConfig parse_profile_json(const std::string& text);
ProfileConfig load_profile_file(const std::string& path);
std::string profile_to_json(const CoefficientProfile& p, bool expect_unequal_det = false);
void save_profile_file(const std::string& path, const CoefficientProfile& p,
                       bool expect_unequal_det = false);

}  // namespace jacobi
