#include "jacobi/scattering.hpp"

namespace jacobi {

namespace {

CMat guarded_inverse(const CMat& m, const char* what) {
  InverseDet id = lu_inverse_det(m);
  if (op_norm(m) * op_norm(id.inverse) > kConditionLimit) {
    throw SingularMatrixError(std::string(what) + ": condition estimate exceeds limit");
  }
  return id.inverse;
}

}  // namespace

ScatteringData extract_scattering(const CoefficientProfile& p, const SpectralPoint& zp) {
  const Complex z = zp.z;
  const int q = p.q();
  const CMat id = identity(q);
  const int n0 = p.n_max() + 1;  // f_l(z, n) = z^n I exactly from here on
  const Complex denom = (z - 1.0 / z) * p.tail().a_inf;

  const SolutionMap fr_z = jost_right(p, z, {n0, n0 + 1});
  const SolutionMap fr_c = jost_right(p, std::conj(z), {n0, n0 + 1});

  auto plane_pair = [&](Complex zz) {
    return std::pair<CMat, CMat>{CMat(zpow(zz, n0) * id), CMat(zpow(zz, n0 + 1) * id)};
  };
  auto adjointed = [](std::pair<CMat, CMat> pr) {
    return std::pair<CMat, CMat>{pr.first.adjoint(), pr.second.adjoint()};
  };

  const auto fl_z = plane_pair(z);
  const auto fl_c = plane_pair(std::conj(z));

  // [f_l(z*)^+ ; f_r(z)] = -(z - 1/z) a_inf Tr^{-1}
  const CMat Tr_inv = -wronskian(p, adjointed(fl_c), value_pair(fr_z, n0), n0) / denom;
  // [f_l(z)^+ ; f_r(z)] = (z - 1/z) a_inf R Tr^{-1}
  const CMat RTr_inv = wronskian(p, adjointed(fl_z), value_pair(fr_z, n0), n0) / denom;
  // [f_r(z*)^+ ; f_l(z)] = (z - 1/z) a_inf Tl^{-1}
  const CMat Tl_inv = wronskian(p, adjoint_pair(fr_c, n0), fl_z, n0) / denom;
  // second form of the mixed relation: L Tl^{-1} = -(R Tr^{-1})^+
  const CMat LTl_inv = -RTr_inv.adjoint();

  ScatteringData d;
  d.point = zp;
  d.Tl = guarded_inverse(Tl_inv, "extract_scattering: Tl");
  d.Tr = guarded_inverse(Tr_inv, "extract_scattering: Tr");
  d.L = LTl_inv * d.Tl;
  d.R = RTr_inv * d.Tr;
  return d;
}

ScatteringData identity_scattering(const SpectralPoint& zp, int q) {
  ScatteringData d;
  d.point = zp;
  d.Tl = identity(q);
  d.Tr = identity(q);
  d.L = CMat::Zero(q, q);
  d.R = CMat::Zero(q, q);
  return d;
}

SMatrix assemble_smatrix(const ScatteringData& d) {
  const int q = d.q();
  CMat s(2 * q, 2 * q);
  s.topLeftCorner(q, q) = d.Tl;
  s.topRightCorner(q, q) = d.R;
  s.bottomLeftCorner(q, q) = d.L;
  s.bottomRightCorner(q, q) = d.Tr;
  return {d.point, s};
}

double unitarity_residual(const ScatteringData& d) {
  const CMat s = assemble_smatrix(d).s;
  return op_norm(s.adjoint() * s - CMat::Identity(s.rows(), s.cols()));
}

std::pair<SolutionMap, SolutionMap> physical_solutions(const CoefficientProfile& p,
                                                       const SpectralPoint& zp,
                                                       const ScatteringData& d,
                                                       IndexRange range) {
  SolutionMap psi_l, psi_r;
  for (auto& [n, v] : jost_left(p, zp.z, range)) psi_l.emplace(n, CMat(v * d.Tl));
  for (auto& [n, v] : jost_right(p, zp.z, range)) psi_r.emplace(n, CMat(v * d.Tr));
  return {std::move(psi_l), std::move(psi_r)};
}

ReportCard identity_suite(const CoefficientProfile& p, const SpectralPoint& zp,
                          const ScatteringData& d) {
  ReportCard card;
  const Complex z = zp.z;
  const int q = p.q();
  const double a_inf = p.tail().a_inf;
  const CMat id = identity(q);
  const CMat big_id = identity(2 * q);

  const ScatteringData dc = extract_scattering(p, make_spectral_point(std::conj(z), p.tail()));
  const ScatteringData di = extract_scattering(p, make_spectral_point(1.0 / z, p.tail()));

  const CMat s = assemble_smatrix(d).s;
  card.add("S'S = I", op_norm(s.adjoint() * s - big_id));
  card.add("SS' = I", op_norm(s * s.adjoint() - big_id));

  card.add("L(z*) = L(z)'", rel_residual(dc.L, CMat(d.L.adjoint())));
  card.add("R(z*) = R(z)'", rel_residual(dc.R, CMat(d.R.adjoint())));
  card.add("Tl(z*) = Tr(z)'", rel_residual(dc.Tl, CMat(d.Tr.adjoint())));
  card.add("Tr(z*) = Tl(z)'", rel_residual(dc.Tr, CMat(d.Tl.adjoint())));

  // swap-block conjugation of the scattering matrix
  CMat swap = CMat::Zero(2 * q, 2 * q);
  swap.topRightCorner(q, q) = id;
  swap.bottomLeftCorner(q, q) = id;
  const CMat sc = assemble_smatrix(dc).s;
  card.add("S(z)' = Q S(z*) Q", rel_residual(CMat(s.adjoint()), CMat(swap * sc * swap)));

  // Wronskian relations, each at three distinct sites spanning the free
  // regions and the window.
  const int lo = p.n_min() - 2;
  const int hi = p.n_max() + 1;
  int mid = p.window_empty() ? 0 : (p.n_min() + p.n_max()) / 2;
  if (mid <= lo || mid >= hi) mid = lo + 1;
  const std::vector<int> sites = {lo, mid, hi};

  const IndexRange span{lo, hi + 1};
  const SolutionMap fl = jost_left(p, z, span);
  const SolutionMap fr = jost_right(p, z, span);
  const SolutionMap gl = jost_left(p, 1.0 / z, span);
  const SolutionMap gr = jost_right(p, 1.0 / z, span);
  const SolutionMap fl_c = jost_left(p, std::conj(z), span);
  const SolutionMap fr_c = jost_right(p, std::conj(z), span);

  const Complex dd = (z - 1.0 / z) * a_inf;
  const CMat Tl_inv = inverse(d.Tl);
  const CMat Tr_inv = inverse(d.Tr);
  const CMat Tlc_inv = inverse(dc.Tl);
  const CMat Tli_inv = inverse(di.Tl);
  const CMat Trc_inv = inverse(dc.Tr);

  struct Relation {
    std::string name;
    const SolutionMap* alpha;       // adjointed side
    const SolutionMap* beta;
    CMat plus;                      // value as n -> +inf
    CMat minus;                     // value as n -> -inf
  };

  std::vector<Relation> rels;
  rels.push_back({"W[fl',fl]", &fl, &fl, CMat(dd * id),
                  CMat(dd * Tl_inv.adjoint() * (id - d.L.adjoint() * d.L) * Tl_inv)});
  rels.push_back({"W[fl',gl]", &fl, &gl, CMat::Zero(q, q),
                  CMat(dd * di.Tl.adjoint() * (di.L - d.L.adjoint()) * Tli_inv)});
  rels.push_back({"W[gl',fl]", &gl, &fl, CMat::Zero(q, q),
                  CMat(dd * Tlc_inv.adjoint() * (dc.L.adjoint() - d.L) * Tl_inv)});
  rels.push_back({"W[gl',gl]", &gl, &gl, CMat(-dd * id),
                  CMat(-dd * Tli_inv.adjoint() * (id - di.L.adjoint() * di.L) * Tli_inv)});
  rels.push_back({"W[fr',fr]", &fr, &fr,
                  CMat(-dd * Tr_inv.adjoint() * (id - d.R.adjoint() * d.R) * Tr_inv),
                  CMat(-dd * id)});
  rels.push_back({"W[gr',fr]", &gr, &fr,
                  CMat(-dd * Trc_inv.adjoint() * (dc.R.adjoint() - d.R) * Tr_inv),
                  CMat::Zero(q, q)});
  rels.push_back({"W[fl',fr]", &fl, &fr, CMat(dd * d.R * Tr_inv),
                  CMat(-dd * Tl_inv.adjoint() * d.L.adjoint())});
  rels.push_back({"W[fl*',fr]", &fl_c, &fr, CMat(-dd * Tr_inv),
                  CMat(-dd * Tlc_inv.adjoint())});
  rels.push_back({"W[fr*',fl]", &fr_c, &fl, CMat(dd * Trc_inv.adjoint()),
                  CMat(dd * Tl_inv)});

  for (const auto& rel : rels) {
    double worst_plus = 0.0, worst_minus = 0.0;
    for (int n : sites) {
      const CMat w = wronskian(p, adjoint_pair(*rel.alpha, n), value_pair(*rel.beta, n), n);
      worst_plus = std::max(worst_plus, rel_residual(w, rel.plus));
      worst_minus = std::max(worst_minus, rel_residual(w, rel.minus));
    }
    card.add(rel.name + " right form", worst_plus);
    card.add(rel.name + " left form", worst_minus);
  }

  return card;
}

}  // namespace jacobi
