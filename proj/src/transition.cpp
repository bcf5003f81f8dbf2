#include "jacobi/transition.hpp"

namespace jacobi {

namespace {

CMat two_by_two_blocks(const CMat& m11, const CMat& m12, const CMat& m21, const CMat& m22) {
  const Eigen::Index q = m11.rows();
  CMat out(2 * q, 2 * q);
  out.topLeftCorner(q, q) = m11;
  out.topRightCorner(q, q) = m12;
  out.bottomLeftCorner(q, q) = m21;
  out.bottomRightCorner(q, q) = m22;
  return out;
}

}  // namespace

FundamentalFrame build_frames(const CoefficientProfile& p, const SpectralPoint& zp, int n) {
  const Complex z = zp.z;
  const IndexRange span{n, n + 1};
  const SolutionMap fl = jost_left(p, z, span);
  const SolutionMap fr = jost_right(p, z, span);
  const SolutionMap gl = jost_left(p, 1.0 / z, span);
  const SolutionMap gr = jost_right(p, 1.0 / z, span);
  const CMat an1 = p.a(n + 1);

  FundamentalFrame frame;
  frame.n = n;
  frame.left = two_by_two_blocks(fl.at(n), gl.at(n), CMat(an1 * fl.at(n + 1)),
                                 CMat(an1 * gl.at(n + 1)));
  frame.right = two_by_two_blocks(gr.at(n), fr.at(n), CMat(an1 * gr.at(n + 1)),
                                  CMat(an1 * fr.at(n + 1)));
  frame.mixed = two_by_two_blocks(fl.at(n), fr.at(n), CMat(an1 * fl.at(n + 1)),
                                  CMat(an1 * fr.at(n + 1)));
  return frame;
}

FrameInverses closed_form_inverses(const CoefficientProfile& p, const SpectralPoint& zp, int n,
                                   const ScatteringData& d) {
  const Complex z = zp.z;
  const Complex scale = 1.0 / (p.tail().a_inf * (z - 1.0 / z));
  const IndexRange span{n, n + 1};
  const SolutionMap fl = jost_left(p, z, span);
  const SolutionMap fr = jost_right(p, z, span);
  const SolutionMap gl = jost_left(p, 1.0 / z, span);
  const SolutionMap gr = jost_right(p, 1.0 / z, span);
  const SolutionMap fl_c = jost_left(p, std::conj(z), span);
  const SolutionMap fr_c = jost_right(p, std::conj(z), span);
  const CMat an1_adj = p.a(n + 1).adjoint();
  const int q = p.q();

  FrameInverses out;
  out.left_inv = scale * two_by_two_blocks(CMat(-fl.at(n + 1).adjoint() * an1_adj),
                                           fl.at(n).adjoint(),
                                           CMat(gl.at(n + 1).adjoint() * an1_adj),
                                           CMat(-gl.at(n).adjoint()));
  out.right_inv = scale * two_by_two_blocks(CMat(-gr.at(n + 1).adjoint() * an1_adj),
                                            gr.at(n).adjoint(),
                                            CMat(fr.at(n + 1).adjoint() * an1_adj),
                                            CMat(-fr.at(n).adjoint()));
  CMat trans_diag = CMat::Zero(2 * q, 2 * q);
  trans_diag.topLeftCorner(q, q) = d.Tl;
  trans_diag.bottomRightCorner(q, q) = d.Tr;
  out.mixed_inv =
      scale * trans_diag *
      two_by_two_blocks(CMat(-fr_c.at(n + 1).adjoint() * an1_adj), fr_c.at(n).adjoint(),
                        CMat(fl_c.at(n + 1).adjoint() * an1_adj), CMat(-fl_c.at(n).adjoint()));
  return out;
}

TransitionPair build_transition(const ScatteringData& d) {
  const CMat Tl_inv = inverse(d.Tl);
  const CMat Tr_inv = inverse(d.Tr);
  const CMat Tl_adj_inv = inverse(CMat(d.Tl.adjoint()));
  const CMat Tr_adj_inv = inverse(CMat(d.Tr.adjoint()));

  TransitionPair pair;
  pair.left.point = d.point;
  pair.left.kind = TransitionKind::left;
  pair.left.m = two_by_two_blocks(Tl_inv, CMat(d.L.adjoint() * Tr_adj_inv),
                                  CMat(d.L * Tl_inv), Tr_adj_inv);
  pair.right.point = d.point;
  pair.right.kind = TransitionKind::right;
  pair.right.m = two_by_two_blocks(Tl_adj_inv, CMat(d.R * Tr_inv),
                                   CMat(d.R.adjoint() * Tl_adj_inv), Tr_inv);
  return pair;
}

TransitionPair build_transition(const ScatteringData& d, const ScatteringData& d_at_inv_z) {
  TransitionPair pair = build_transition(d);
  const CMat Tl_inv = inverse(d.Tl);
  const CMat Tr_inv = inverse(d.Tr);
  const CMat Tli_inv = inverse(d_at_inv_z.Tl);
  const CMat Tri_inv = inverse(d_at_inv_z.Tr);
  const CMat left_direct = two_by_two_blocks(Tl_inv, CMat(d_at_inv_z.L * Tli_inv),
                                             CMat(d.L * Tl_inv), Tli_inv);
  const CMat right_direct = two_by_two_blocks(Tri_inv, CMat(d.R * Tr_inv),
                                              CMat(d_at_inv_z.R * Tri_inv), Tr_inv);
  pair.cross_residual = std::max(rel_residual(pair.left.m, left_direct),
                                 rel_residual(pair.right.m, right_direct));
  return pair;
}

ReportCard relate_frames(const FundamentalFrame& frame, const TransitionMatrix& left,
                         const TransitionMatrix& right) {
  ReportCard card;
  const Eigen::Index q = frame.left.rows() / 2;
  card.add("left frame = right frame * Lambda",
           rel_residual(frame.left, CMat(frame.right * left.m)));
  card.add("right frame = left frame * Sigma",
           rel_residual(frame.right, CMat(frame.left * right.m)));

  // mixed = left * [[I, R Tr^-1], [0, Tr^-1]]; the right column of Sigma holds both blocks
  CMat via_right_col = CMat::Zero(2 * q, 2 * q);
  via_right_col.topLeftCorner(q, q) = identity(q);
  via_right_col.topRightCorner(q, q) = right.m.topRightCorner(q, q);
  via_right_col.bottomRightCorner(q, q) = right.m.bottomRightCorner(q, q);
  card.add("mixed frame via left frame",
           rel_residual(frame.mixed, CMat(frame.left * via_right_col)));

  // mixed = right * [[Tl^-1, 0], [L Tl^-1, I]]; the left column of Lambda holds both blocks
  CMat via_left_col = CMat::Zero(2 * q, 2 * q);
  via_left_col.topLeftCorner(q, q) = left.m.topLeftCorner(q, q);
  via_left_col.bottomLeftCorner(q, q) = left.m.bottomLeftCorner(q, q);
  via_left_col.bottomRightCorner(q, q) = identity(q);
  card.add("mixed frame via right frame",
           rel_residual(frame.mixed, CMat(frame.right * via_left_col)));
  return card;
}

ReportCard determinant_suite(const CoefficientProfile& p, const SpectralPoint& zp,
                             const std::vector<FundamentalFrame>& frames,
                             const ScatteringData& d) {
  ReportCard card;
  const Complex z = zp.z;
  const int q = p.q();
  const Complex free_det = zpow(1.0 / z - z, q) * zpow(Complex(p.tail().a_inf, 0.0), q);

  std::map<int, Complex> det_left, det_right, det_mixed;
  for (const auto& f : frames) {
    det_left[f.n] = determinant(f.left);
    det_right[f.n] = determinant(f.right);
    det_mixed[f.n] = determinant(f.mixed);
  }

  auto ratio_at = [&](int n) {
    const Complex da = determinant(p.a(n));
    return std::conj(da) / da;
  };

  // site-to-site determinant steps
  double worst_step = 0.0;
  for (const auto& f : frames) {
    const int n = f.n;
    if (!det_left.count(n - 1)) continue;
    const Complex r = ratio_at(n);
    worst_step = std::max(worst_step, rel_residual(det_left[n], r * det_left[n - 1]));
    worst_step = std::max(worst_step, rel_residual(det_right[n], r * det_right[n - 1]));
    worst_step = std::max(worst_step, rel_residual(det_mixed[n], r * det_mixed[n - 1]));
  }
  card.add("det frame site step ratio", worst_step);

  // finite products over the window (factors outside it equal one exactly)
  const Complex det_Tl = determinant(d.Tl);
  const Complex det_Tr = determinant(d.Tr);
  auto phase_product = [&](int from, int to) {
    Complex prod(1.0, 0.0);
    for (int j = from; j <= to; ++j) prod *= ratio_at(j);
    return prod;
  };
  double worst_prod = 0.0;
  for (const auto& f : frames) {
    const int n = f.n;
    // det left frame = free_det * prod_{j>n} det a(j) / conj(det a(j))
    worst_prod = std::max(
        worst_prod,
        rel_residual(det_left[n], free_det / phase_product(n + 1, p.n_max() + 1)));
    worst_prod = std::max(
        worst_prod, rel_residual(det_right[n], free_det * phase_product(p.n_min(), n)));
    worst_prod = std::max(
        worst_prod,
        rel_residual(det_mixed[n], free_det / det_Tl * phase_product(p.n_min(), n)));
  }
  card.add("det frame finite products", worst_prod);

  // frame determinants against transmission determinants
  double worst_rel = 0.0;
  for (const auto& f : frames) {
    worst_rel = std::max(worst_rel, rel_residual(det_left[f.n], det_mixed[f.n] * det_Tr));
    worst_rel = std::max(worst_rel, rel_residual(det_right[f.n], det_mixed[f.n] * det_Tl));
    worst_rel = std::max(
        worst_rel, rel_residual(det_left[f.n] / det_right[f.n], det_Tr / det_Tl));
  }
  card.add("det frame transmission ratios", worst_rel);

  // exact free-region values
  const int hi = p.n_max() + 1;
  const int lo = p.n_min() - 2;
  if (det_left.count(hi)) {
    card.add("det left frame at right edge", rel_residual(det_left[hi], free_det));
    card.add("det right frame at right edge",
             rel_residual(det_right[hi], free_det * det_Tl / det_Tr));
    card.add("det mixed frame at right edge", rel_residual(det_mixed[hi], free_det / det_Tr));
  }
  if (det_left.count(lo)) {
    card.add("det right frame at left edge", rel_residual(det_right[lo], free_det));
    card.add("det left frame at left edge",
             rel_residual(det_left[lo], free_det * det_Tr / det_Tl));
    card.add("det mixed frame at left edge", rel_residual(det_mixed[lo], free_det / det_Tl));
  }

  // transmission determinant phase product over the full window
  card.add("det Tl / det Tr phase product",
           rel_residual(det_Tl / det_Tr, phase_product(p.n_min(), p.n_max() + 1)));

  // det S = det Tr / conj(det Tl)
  const Complex det_S = determinant(assemble_smatrix(d).s);
  card.add("det S = det Tr / conj(det Tl)", rel_residual(det_S, det_Tr / std::conj(det_Tl)));

  // transition determinants
  const TransitionPair tp = build_transition(d);
  const Complex det_lambda = determinant(tp.left.m);
  const Complex det_sigma = determinant(tp.right.m);
  card.add("det Lambda = det Tr / det Tl", rel_residual(det_lambda, det_Tr / det_Tl));
  card.add("det Lambda * det Sigma = 1", std::abs(det_lambda * det_sigma - 1.0));

  // mixed-frame conjugation: mixed(z*) = mixed(z) [[-R, Tl], [Tr, -L]]
  if (!frames.empty()) {
    const FundamentalFrame& f = frames[frames.size() / 2];
    const FundamentalFrame fc = build_frames(p, make_spectral_point(std::conj(z), p.tail()), f.n);
    const CMat block = two_by_two_blocks(CMat(-d.R), d.Tl, d.Tr, CMat(-d.L));
    card.add("mixed frame conjugation", rel_residual(fc.mixed, CMat(f.mixed * block)));
  }

  // simplifications under real det a(n)
  bool all_real = true;
  for (int n = p.n_min(); n <= p.n_max() + 1; ++n) {
    const Complex da = determinant(p.a(n));
    if (std::abs(da.imag()) > 1e-12 * std::abs(da)) {
      all_real = false;
      break;
    }
  }
  if (all_real) {
    card.add("det Tl = det Tr (real det a)", rel_residual(det_Tl, det_Tr));
    card.add("det Lambda = 1 (real det a)", std::abs(det_lambda - 1.0));
    card.add("det Sigma = 1 (real det a)", std::abs(det_sigma - 1.0));
  }

  return card;
}

ReportCard determinant_suite(const CoefficientProfile& p, const SpectralPoint& zp,
                             const ScatteringData& d) {
  std::vector<FundamentalFrame> frames;
  for (int n = p.n_min() - 2; n <= p.n_max() + 1; ++n) frames.push_back(build_frames(p, zp, n));
  return determinant_suite(p, zp, frames, d);
}

}  // namespace jacobi
