#pragma once

#include <random>

#include "jacobi/factorize.hpp"
#include "jacobi/oracle.hpp"

namespace jacobi::testing {

inline double max_block_residual(const ScatteringData& got, const ScatteringData& want) {
  return std::max({rel_residual(got.Tl, want.Tl), rel_residual(got.Tr, want.Tr),
                   rel_residual(got.L, want.L), rel_residual(got.R, want.R)});
}

inline CMat random_gaussian(std::mt19937_64& rng, int q) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMat m(q, q);
  for (int r = 0; r < q; ++r)
    for (int c = 0; c < q; ++c) m(r, c) = Complex(gauss(rng), gauss(rng));
  return m;
}

inline CMat random_unitary(std::mt19937_64& rng, int q) {
  Eigen::HouseholderQR<CMat> qr(random_gaussian(rng, q));
  CMat u = qr.householderQ();
  return u;
}

// Invertible with singular values in [0.8, 2.0]; entries stay below the norm bound.
inline CMat random_invertible(std::mt19937_64& rng, int q) {
  std::uniform_real_distribution<double> sv(0.8, 2.0);
  Eigen::VectorXd d(q);
  for (int i = 0; i < q; ++i) d(i) = sv(rng);
  return random_unitary(rng, q) * d.asDiagonal() * random_unitary(rng, q);
}

inline CMat random_hermitian(std::mt19937_64& rng, int q, double scale = 1.2) {
  const CMat g = random_gaussian(rng, q);
  CMat h = 0.5 * (g + g.adjoint());
  const double top = h.cwiseAbs().maxCoeff();
  if (top > 0.0) h *= scale / std::max(1.0, top);
  return h;
}

// Hermitian with eigenvalues in roughly [0.6, 1.8].
inline CMat random_positive(std::mt19937_64& rng, int q) {
  std::uniform_real_distribution<double> ev(0.6, 1.8);
  Eigen::VectorXd d(q);
  for (int i = 0; i < q; ++i) d(i) = ev(rng);
  const CMat u = random_unitary(rng, q);
  CMat w = u * d.asDiagonal() * u.adjoint();
  return 0.5 * (w + w.adjoint());
}

struct EnsembleOptions {
  int max_window = 6;
  bool hermitian_a = false;   // force selfadjoint a(n)
  bool identity_w = false;    // keep the weight free
};

inline CoefficientProfile random_profile_unchecked(std::mt19937_64& rng,
                                                   const EnsembleOptions& opt) {
  std::uniform_int_distribution<int> pick_q(1, 3);
  std::uniform_int_distribution<int> pick_len(0, opt.max_window);
  std::uniform_int_distribution<int> pick_lo(-3, 3);
  std::uniform_real_distribution<double> mag(0.7, 1.5);
  std::uniform_real_distribution<double> real_in(-1.0, 1.0);
  std::bernoulli_distribution coin(0.5);

  const int q = pick_q(rng);
  const int len = pick_len(rng);
  Tail tail;
  tail.a_inf = (coin(rng) ? 1.0 : -1.0) * mag(rng);
  tail.b_inf = real_in(rng);
  tail.w_inf = mag(rng);

  if (len == 0) return CoefficientProfile::free_profile(q, tail);
  const int n_min = pick_lo(rng);
  const int n_max = n_min + len - 1;
  SiteMap a, b, w;
  for (int n = n_min; n <= n_max; ++n) {
    if (coin(rng)) {
      CMat an = random_invertible(rng, q);
      if (opt.hermitian_a) an = hermitian_sqrt(CMat(an.adjoint() * an));
      a.emplace(n, an);
    }
    if (coin(rng)) b.emplace(n, random_hermitian(rng, q));
    if (!opt.identity_w && coin(rng)) w.emplace(n, random_positive(rng, q));
  }
  if (coin(rng)) {
    CMat an = random_invertible(rng, q);
    if (opt.hermitian_a) an = hermitian_sqrt(CMat(an.adjoint() * an));
    a.emplace(n_max + 1, an);
  }
  return CoefficientProfile(q, n_min, n_max, std::move(a), std::move(b), std::move(w), tail);
}

// Admissible random profile: q in {1,2,3}, window length <= max_window,
// entries bounded, w positive by construction. Draws whose transmission nearly
// collapses somewhere on the circle are rejected: huge |T^{-1}| makes every
// identity residual scale with the cancellation and the tolerances meaningless.
inline CoefficientProfile random_profile(std::mt19937_64& rng, const EnsembleOptions& opt = {}) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    CoefficientProfile p = random_profile_unchecked(rng, opt);
    bool tame = true;
    try {
      for (const auto& zp : make_spectral_grid(p.tail(), 13)) {
        const ScatteringData d = extract_scattering(p, zp);
        if (op_norm(inverse(d.Tl)) > 50.0 || op_norm(inverse(d.Tr)) > 50.0) {
          tame = false;
          break;
        }
      }
    } catch (const Error&) {
      tame = false;
    }
    if (tame) return p;
  }
  throw Error("random_profile: no tame draw found");
}

inline SpectralPoint random_point(std::mt19937_64& rng, const Tail& tail) {
  std::uniform_real_distribution<double> angle(0.12, std::acos(-1.0) - 0.12);
  std::bernoulli_distribution coin(0.5);
  const double theta = angle(rng) * (coin(rng) ? 1.0 : -1.0);
  return make_spectral_point(std::polar(1.0, theta), tail);
}

// ---- profiles from the worked examples ----

// Discrete Schroedinger system: a = -I, b(n) = V(n) + 2I, w = I.
inline CoefficientProfile schroedinger_profile(const std::map<int, CMat>& potentials, int q) {
  SiteMap b;
  int lo = 0, hi = -1;
  bool first = true;
  for (const auto& [n, v] : potentials) {
    b.emplace(n, CMat(v + 2.0 * identity(q)));
    lo = first ? n : std::min(lo, n);
    hi = first ? n : std::max(hi, n);
    first = false;
  }
  return CoefficientProfile(q, lo, hi, {}, std::move(b), {}, Tail{-1.0, 2.0, 1.0});
}

inline CMat pauli_like_v0() {
  CMat v(2, 2);
  v << 1.0, Complex(0, 1), Complex(0, -1), 2.0;
  return v;
}

inline CMat pauli_like_v1() {
  CMat v(2, 2);
  v << 3.0, Complex(0, -7), Complex(0, 7), 4.0;
  return v;
}

// Two-defect 2x2 Schroedinger system with the concrete potentials above.
inline CoefficientProfile two_defect_profile() {
  return schroedinger_profile({{0, pauli_like_v0()}, {1, pauli_like_v1()}}, 2);
}

// Single-site a-defect with free b, w and unit tails.
inline CoefficientProfile a_defect_profile(const CMat& am, int m = 0) {
  SiteMap a;
  a.emplace(m, am);
  return CoefficientProfile(static_cast<int>(am.rows()), m, m, std::move(a), {}, {},
                            Tail{1.0, 0.0, 1.0});
}

// Closed-form scattering coefficients of the two-defect system, as rational
// matrices in z with a common quartic denominator.
struct TwoDefectClosedForm {
  CMat Tl, Tr, L, R;
  Complex det_T;
};

inline TwoDefectClosedForm two_defect_closed_form(Complex z) {
  const Complex i(0.0, 1.0);
  const Complex P = 33.0 * zpow(z, 4) + 114.0 * zpow(z, 3) + 17.0 * z * z - 10.0 * z - 1.0;
  const Complex zm = z - 1.0, zp = z + 1.0;
  TwoDefectClosedForm out;
  out.Tl.resize(2, 2);
  out.Tl << zm * zp * (6.0 * z + 1.0), 3.0 * i * z * zm * zp * (z + 2.0),
      -i * z * zm * zp * (11.0 * z + 6.0), -zm * zm * zp * (5.0 * z + 1.0);
  out.Tl /= P;
  out.Tr.resize(2, 2);
  out.Tr << zm * zp * (6.0 * z + 1.0), i * z * zm * zp * (11.0 * z + 6.0),
      -3.0 * i * z * zm * zp * (z + 2.0), -zm * zm * zp * (5.0 * z + 1.0);
  out.Tr /= P;
  out.L.resize(2, 2);
  out.L << -z * (77.0 * zpow(z, 4) + 57.0 * zpow(z, 3) + 28.0 * z * z - 8.0 * z - 1.0),
      i * z * zm * zp * (4.0 * z - 1.0) * (11.0 * z + 1.0),
      -i * z * zm * zp * (4.0 * z - 1.0) * (11.0 * z + 1.0),
      -z * (41.0 * zpow(z, 4) + 64.0 * zpow(z, 3) + 65.0 * z * z - 15.0 * z - 2.0);
  out.L /= P;
  out.R.resize(2, 2);
  out.R << 3.0 * zpow(z, 4) - 21.0 * zpow(z, 3) - 110.0 * z * z - 28.0 * z + 3.0,
      i * zm * zp * (6.0 * z * z + 21.0 * z + 7.0),
      -i * zm * zp * (6.0 * z * z + 21.0 * z + 7.0),
      zpow(z, 4) - 24.0 * zpow(z, 3) - 109.0 * z * z - 25.0 * z + 4.0;
  out.R /= (z * P);
  out.det_T = -(z * z - 1.0) * (z * z - 1.0) / P;
  return out;
}

}  // namespace jacobi::testing
