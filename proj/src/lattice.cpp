#include "jacobi/lattice.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace jacobi {

namespace {

void check_site_matrix(const CMat& m, int q, const char* which, int n) {
  if (m.rows() != q || m.cols() != q) {
    std::ostringstream os;
    os << "profile: " << which << "(" << n << ") is " << m.rows() << "x" << m.cols()
       << ", expected " << q << "x" << q;
    throw DimensionError(os.str());
  }
}

}  // namespace

CoefficientProfile::CoefficientProfile(int q, int n_min, int n_max, SiteMap a, SiteMap b,
                                       SiteMap w, Tail tail)
    : q_(q), n_min_(n_min), n_max_(n_max), a_(std::move(a)), b_(std::move(b)),
      w_(std::move(w)), tail_(tail) {
  if (q_ < 1) throw DomainError("profile: q must be a positive integer");
  if (n_min_ > n_max_) {
    // canonical empty window
    n_min_ = 0;
    n_max_ = -1;
    if (!a_.empty() || !b_.empty() || !w_.empty())
      throw DomainError("profile: sites given but window is empty");
  }
  for (const auto& [n, m] : a_) {
    check_site_matrix(m, q_, "a", n);
    if (n < n_min_ || n > n_max_ + 1)
      throw DomainError("profile: a-site " + std::to_string(n) + " outside [n_min, n_max+1]");
  }
  for (const auto& [n, m] : b_) {
    check_site_matrix(m, q_, "b", n);
    if (n < n_min_ || n > n_max_)
      throw DomainError("profile: b-site " + std::to_string(n) + " outside window");
  }
  for (const auto& [n, m] : w_) {
    check_site_matrix(m, q_, "w", n);
    if (n < n_min_ || n > n_max_)
      throw DomainError("profile: w-site " + std::to_string(n) + " outside window");
  }
}

CoefficientProfile CoefficientProfile::free_profile(int q, Tail tail) {
  return CoefficientProfile(q, 0, -1, {}, {}, {}, tail);
}

CMat CoefficientProfile::a(int n) const {
  auto it = a_.find(n);
  if (it != a_.end()) return it->second;
  return tail_.a_inf * identity(q_);
}

CMat CoefficientProfile::b(int n) const {
  auto it = b_.find(n);
  if (it != b_.end()) return it->second;
  return tail_.b_inf * identity(q_);
}

CMat CoefficientProfile::w(int n) const {
  auto it = w_.find(n);
  if (it != w_.end()) return it->second;
  return tail_.w_inf * identity(q_);
}

Complex lambda_of_z(Complex z, const Tail& tail) {
  if (z == Complex(0.0, 0.0)) throw DomainError("lambda_of_z: z = 0");
  return (tail.a_inf * (z + 1.0 / z) + tail.b_inf) / tail.w_inf;
}

SpectralPoint make_spectral_point(Complex z, const Tail& tail, double exclusion_eps) {
  if (std::abs(std::abs(z) - 1.0) > kUnitCircleTol)
    throw DomainError("spectral point: |z| differs from 1 beyond tolerance");
  if (std::abs(z - 1.0) <= exclusion_eps || std::abs(z + 1.0) <= exclusion_eps)
    throw DomainError("spectral point: z inside the exclusion band around +-1");
  return {z, lambda_of_z(z, tail)};
}

std::vector<SpectralPoint> make_spectral_grid(const Tail& tail, int n_points,
                                              double exclusion_eps) {
  if (n_points < 1) throw DomainError("spectral grid: need at least one point");
  const double pi = std::numbers::pi;
  const int n_upper = (n_points + 1) / 2;
  const int n_lower = n_points / 2;
  std::vector<SpectralPoint> grid;
  grid.reserve(static_cast<size_t>(n_points));
  auto try_add = [&](double theta) {
    const Complex z = std::polar(1.0, theta);
    if (std::abs(z - 1.0) <= exclusion_eps || std::abs(z + 1.0) <= exclusion_eps) return;
    grid.push_back({z, lambda_of_z(z, tail)});
  };
  for (int j = 0; j < n_upper; ++j) try_add(pi * (j + 0.5) / n_upper);
  for (int j = 0; j < n_lower; ++j) try_add(pi + pi * (j + 0.5) / n_lower);
  if (grid.empty()) throw EmptyGridError("spectral grid: exclusion bands removed every point");
  return grid;
}

std::string to_string(LatticeKind kind) {
  return kind == LatticeKind::jacobi_like ? "Jacobi-like" : "Schroedinger-like";
}

ValidationReport validate_profile(const CoefficientProfile& p) {
  ValidationReport report;
  const int q = p.q();
  const Tail& tail = p.tail();

  // (a) b and w selfadjoint on the window
  {
    bool ok = true;
    std::string detail;
    for (int n = p.n_min(); n <= p.n_max(); ++n) {
      if (!is_hermitian(p.b(n))) {
        ok = false;
        detail = "b(" + std::to_string(n) + ") is not selfadjoint";
        break;
      }
      if (!is_hermitian(p.w(n))) {
        ok = false;
        detail = "w(" + std::to_string(n) + ") is not selfadjoint";
        break;
      }
    }
    report.items.push_back({"b,w selfadjoint", ok, detail});
  }

  // (b) a invertible, w positive definite
  {
    bool ok = true;
    std::string detail;
    for (int n = p.n_min(); n <= p.n_max() + 1 && ok; ++n) {
      try {
        (void)inverse(p.a(n));
      } catch (const SingularMatrixError&) {
        ok = false;
        detail = "a(" + std::to_string(n) + ") is singular";
      }
    }
    for (int n = p.n_min(); n <= p.n_max() && ok; ++n) {
      try {
        (void)hermitian_sqrt(p.w(n));
      } catch (const Error&) {
        ok = false;
        detail = "w(" + std::to_string(n) + ") is not positive definite";
      }
    }
    report.items.push_back({"a invertible, w positive", ok, detail});
  }

  // (c) tail scalars and classification
  {
    bool ok = tail.w_inf > 0.0 && tail.a_inf != 0.0;
    std::string detail;
    if (tail.w_inf <= 0.0) detail = "w_inf must be positive";
    else if (tail.a_inf == 0.0) detail = "a_inf must be nonzero";
    report.items.push_back({"tail scalars", ok, detail});
    if (ok)
      report.classification =
          tail.a_inf > 0.0 ? LatticeKind::jacobi_like : LatticeKind::schroedinger_like;
  }

  // (d) finite support: the perturbation moments vanish off [n_min, n_max+1],
  // so the weighted summability over the lattice is a finite sum.
  {
    bool ok = true;
    std::string detail;
    const ValidationItem& positivity = report.items[1];
    if (!positivity.passed || tail.w_inf <= 0.0 || tail.a_inf == 0.0) {
      ok = false;
      detail = "moments undefined (requires positive w and valid tail)";
    } else {
      double sum = 0.0;
      const double ratio = tail.w_inf / tail.a_inf;
      const double shift = tail.b_inf / tail.a_inf;
      for (int n = p.n_min(); n <= p.n_max() + 1; ++n) {
        const CMat wl = hermitian_sqrt(p.w(n - 1));
        const CMat wr = hermitian_sqrt(p.w(n));
        const CMat pm = ratio * inverse(wl) * p.a(n) * inverse(wr) - identity(q);
        const CMat qm =
            ratio * inverse(wr) * p.b(n) * inverse(wr) - shift * identity(q);
        sum += std::abs(n) * (op_norm(pm) + op_norm(qm));
      }
      detail = "weighted moment sum = " + std::to_string(sum);
    }
    report.items.push_back({"finitely supported perturbation", ok, detail});
  }

  return report;
}

CoefficientProfile ReducedProfile::to_profile() const {
  SiteMap b_win = b_tilde;
  // b_tilde lives on [n_min, n_max]; a_tilde may extend one site past it.
  return CoefficientProfile(q, n_min, n_max, a_tilde, std::move(b_win), {}, Tail{1.0, 0.0, 1.0});
}

ReducedProfile reduce(const CoefficientProfile& p) {
  ReducedProfile out;
  out.q = p.q();
  out.n_min = p.n_min();
  out.n_max = p.n_max();
  if (p.window_empty()) return out;

  const Tail& tail = p.tail();
  const double ratio = tail.w_inf / tail.a_inf;
  const double shift = tail.b_inf / tail.a_inf;
  std::map<int, CMat> inv_sqrt;
  for (int n = p.n_min() - 1; n <= p.n_max() + 1; ++n)
    inv_sqrt.emplace(n, inverse(hermitian_sqrt(p.w(n))));

  for (int n = p.n_min(); n <= p.n_max() + 1; ++n)
    out.a_tilde.emplace(n, CMat(ratio * inv_sqrt.at(n - 1) * p.a(n) * inv_sqrt.at(n)));
  for (int n = p.n_min(); n <= p.n_max(); ++n)
    out.b_tilde.emplace(
        n, CMat(ratio * inv_sqrt.at(n) * p.b(n) * inv_sqrt.at(n) - shift * identity(p.q())));
  return out;
}

}  // namespace jacobi
