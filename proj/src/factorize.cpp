#include "jacobi/factorize.hpp"

#include <limits>

namespace jacobi {

namespace {

void check_partition(const Partition& part) {
  if (part.cuts.empty()) throw InvalidPartitionError("partition: needs at least one cut");
  for (size_t i = 1; i < part.cuts.size(); ++i)
    if (part.cuts[i] <= part.cuts[i - 1])
      throw InvalidPartitionError("partition: cuts must be strictly increasing");
}

CMat guarded_inverse(const CMat& m, const char* what) {
  InverseDet id = lu_inverse_det(m);
  if (op_norm(m) * op_norm(id.inverse) > kConditionLimit)
    throw SingularMatrixError(std::string(what) + ": condition estimate exceeds limit");
  return id.inverse;
}

}  // namespace

std::vector<Fragment> fragment(const CoefficientProfile& p, const Partition& part) {
  check_partition(part);
  const int n_pieces = static_cast<int>(part.cuts.size()) + 1;
  std::vector<Fragment> out;
  out.reserve(static_cast<size_t>(n_pieces));
  const int big = std::numeric_limits<int>::max() / 2;

  for (int j = 0; j < n_pieces; ++j) {
    const int piece_lo = j == 0 ? -big : part.cuts[static_cast<size_t>(j - 1)] + 1;
    const int piece_hi = j == n_pieces - 1 ? big : part.cuts[static_cast<size_t>(j)];

    SiteMap a, b, w;
    for (const auto& [n, m] : p.a_sites())
      if (n >= piece_lo && n <= piece_hi) a.emplace(n, m);
    for (const auto& [n, m] : p.b_sites())
      if (n >= piece_lo && n <= piece_hi) b.emplace(n, m);
    for (const auto& [n, m] : p.w_sites())
      if (n >= piece_lo && n <= piece_hi) w.emplace(n, m);

    int lo = std::max(piece_lo, p.n_min());
    int hi = std::min(piece_hi, p.n_max());
    if (a.empty() && b.empty() && w.empty()) {
      if (lo > hi) {
        lo = 0;
        hi = -1;
      }
    } else if (lo > hi) {
      hi = lo;  // piece holds only the a-site coupling into the right free region
    }
    out.push_back(
        {j + 1, CoefficientProfile(p.q(), lo, hi, std::move(a), std::move(b), std::move(w),
                                   p.tail())});
  }
  return out;
}

ReportCard factorization_check(const CoefficientProfile& p, const Partition& part,
                               const SpectralPoint& zp) {
  ReportCard card;
  const TransitionPair whole = build_transition(extract_scattering(p, zp));

  const std::vector<Fragment> pieces = fragment(p, part);
  const int q2 = 2 * p.q();
  CMat left_product = identity(q2);
  CMat right_product = identity(q2);
  for (const Fragment& frag : pieces) {
    const TransitionPair tp = build_transition(extract_scattering(frag.profile, zp));
    left_product = left_product * tp.left.m;    // ordered left to right
    right_product = tp.right.m * right_product; // ordered right to left
  }
  card.add("Lambda = ordered product of fragment Lambdas",
           rel_residual(whole.left.m, left_product));
  card.add("Sigma = reverse-ordered product of fragment Sigmas",
           rel_residual(whole.right.m, right_product));
  return card;
}

ScatteringData compose_scattering(const ScatteringData& left, const ScatteringData& right) {
  if (std::abs(left.point.z - right.point.z) > 1e-12)
    throw DomainError("compose_scattering: fragment data taken at different z");
  // data at 1/z enters only through the circle symmetries
  // Tr1(1/z)^+ = Tl1, Tl2(1/z)^+ = Tr2, R1(1/z) = R1^+, L2(1/z) = L2^+.
  const int q = left.q();
  const CMat mix_l =
      guarded_inverse(CMat(identity(q) - left.R * right.L), "compose_scattering: I - R1 L2");
  const CMat mix_r =
      guarded_inverse(CMat(identity(q) - right.L * left.R), "compose_scattering: I - L2 R1");

  ScatteringData d;
  d.point = left.point;
  d.Tl = right.Tl * mix_l * left.Tl;
  d.L = inverse(CMat(left.Tr.adjoint())) * (right.L - left.R.adjoint()) * mix_l * left.Tl;
  d.Tr = left.Tr * mix_r * right.Tr;
  d.R = right.Tl * mix_l * (left.R - right.L.adjoint()) * inverse(CMat(right.Tr.adjoint()));
  return d;
}

ScatteringData compose_scattering(std::span<const ScatteringData> ordered) {
  if (ordered.empty()) throw DomainError("compose_scattering: no fragments");
  ScatteringData acc = ordered[0];
  for (size_t j = 1; j < ordered.size(); ++j) acc = compose_scattering(acc, ordered[j]);
  return acc;
}

ScatteringData point_defect_closed_form(const CoefficientProfile& p, const SpectralPoint& zp) {
  // locate the single nonhomogeneity site
  bool have_site = false;
  int m = p.n_min();
  auto visit = [&](const SiteMap& sites) {
    for (const auto& [n, mat] : sites) {
      (void)mat;
      if (!have_site) {
        m = n;
        have_site = true;
      } else if (n != m) {
        throw NotPointDefectError("point defect: stored sites span more than one point");
      }
    }
  };
  visit(p.a_sites());
  visit(p.b_sites());
  visit(p.w_sites());
  if (!p.window_empty() && p.n_min() != p.n_max())
    throw NotPointDefectError("point defect: window wider than one site");

  const Complex z = zp.z;
  const int q = p.q();
  const CMat id = identity(q);
  const double a_inf = p.tail().a_inf;
  const double b_inf = p.tail().b_inf;
  const double w_inf = p.tail().w_inf;

  const CMat am = p.a(m);
  const CMat am_inv = inverse(am);
  const CMat am_adj_inv = inverse(CMat(am.adjoint()));
  const CMat wm = p.w(m);
  const CMat bm = p.b(m);

  const CMat q1 = (a_inf / w_inf) * wm * am_inv;
  const CMat q2 = (b_inf / w_inf) * wm * am_inv - bm * am_inv;
  const CMat q3 = (a_inf / w_inf) * wm * am_inv - am.adjoint() / a_inf;

  const Complex zi = 1.0 / z;
  const Complex dm = zi - z;  // z^{-1} - z

  const CMat Tr_inv = (q1 * zi + q2 + (q3 - a_inf * am_inv) * z) / dm;
  const CMat RTr_inv = (CMat(q1 - a_inf * am_inv) * zpow(z, -2 * m - 1) + q2 * zpow(z, -2 * m) +
                        q3 * zpow(z, -2 * m + 1)) /
                       (-dm);
  const CMat Tl_inv =
      (CMat(q1.adjoint()) * zi + q2.adjoint() + CMat(q3.adjoint() - a_inf * am_adj_inv) * z) / dm;
  const CMat LTl_inv = -RTr_inv.adjoint();

  ScatteringData d;
  d.point = zp;
  d.Tl = guarded_inverse(Tl_inv, "point defect: Tl");
  d.Tr = guarded_inverse(Tr_inv, "point defect: Tr");
  d.L = LTl_inv * d.Tl;
  d.R = RTr_inv * d.Tr;
  return d;
}

ReportCard fragment_jost_relations(const CoefficientProfile& p, const Partition& part,
                                   const SpectralPoint& zp) {
  check_partition(part);
  if (part.cuts.size() != 1)
    throw InvalidPartitionError("fragment_jost_relations: needs exactly one cut");
  const int m = part.cuts[0];
  const Complex z = zp.z;
  const int q = p.q();
  const CMat id = identity(q);
  const double a_inf = p.tail().a_inf;

  const std::vector<Fragment> pieces = fragment(p, part);
  const CoefficientProfile& left_piece = pieces[0].profile;
  const CoefficientProfile& right_piece = pieces[1].profile;

  const IndexRange span{m - 2, m + 2};
  const SolutionMap fr_parent = jost_right(p, z, span);
  const SolutionMap fl_parent = jost_left(p, z, span);
  const SolutionMap fr_1 = jost_right(left_piece, z, span);
  const SolutionMap fl_2 = jost_left(right_piece, z, span);

  ReportCard card;

  double worst = 0.0;
  for (int n = m - 2; n <= m; ++n)
    worst = std::max(worst, rel_residual(fr_1.at(n), fr_parent.at(n)));
  card.add("right Jost of left fragment matches parent below the cut", worst);

  card.add("boundary coupling of right Jost through a(m+1)",
           rel_residual(fr_1.at(m + 1), CMat(p.a(m + 1) * fr_parent.at(m + 1) / a_inf)));

  worst = 0.0;
  for (int n = m; n <= m + 2; ++n)
    worst = std::max(worst, rel_residual(fl_2.at(n), fl_parent.at(n)));
  card.add("left Jost of right fragment matches parent above the cut", worst);

  const ScatteringData d1 = extract_scattering(left_piece, zp);
  const ScatteringData d2 = extract_scattering(right_piece, zp);
  const CMat Tr1_inv = inverse(d1.Tr);
  const CMat Tl2_inv = inverse(d2.Tl);

  worst = 0.0;
  for (int n = m; n <= m + 2; ++n) {
    const CMat plane = zpow(z, -n) * Tr1_inv + zpow(z, n) * d1.R * Tr1_inv;
    worst = std::max(worst, rel_residual(fr_1.at(n), plane));
  }
  card.add("right Jost of left fragment is a plane wave above the cut", worst);

  worst = 0.0;
  for (int n = m - 2; n <= m; ++n) {
    const CMat plane = zpow(z, n) * Tl2_inv + zpow(z, -n) * d2.L * Tl2_inv;
    worst = std::max(worst, rel_residual(fl_2.at(n), plane));
  }
  card.add("left Jost of right fragment is a plane wave below the cut", worst);

  {
    const CMat lhs = p.a(m + 1) * fl_2.at(m + 1) / a_inf;
    const CMat rhs = zpow(z, m + 1) * Tl2_inv + zpow(z, -m - 1) * d2.L * Tl2_inv;
    card.add("boundary coupling of left Jost through a(m+1)", rel_residual(lhs, rhs));
  }

  // two representations of the mixed frame at the cut
  const ScatteringData d = extract_scattering(p, zp);
  const FundamentalFrame frame = build_frames(p, zp, m);
  const TransitionPair tp2 = build_transition(d2);
  const TransitionPair tp1 = build_transition(d1);
  const CMat Tr_inv = inverse(d.Tr);
  const CMat Tl_inv = inverse(d.Tl);

  CMat scale = CMat::Zero(2 * q, 2 * q);
  scale.topLeftCorner(q, q) = id;
  scale.bottomRightCorner(q, q) = a_inf * id;
  CMat waves(2 * q, 2 * q);
  waves.topLeftCorner(q, q) = zpow(z, m) * id;
  waves.topRightCorner(q, q) = zpow(z, -m) * id;
  waves.bottomLeftCorner(q, q) = zpow(z, m + 1) * id;
  waves.bottomRightCorner(q, q) = zpow(z, -m - 1) * id;

  CMat right_factor = CMat::Zero(2 * q, 2 * q);
  right_factor.topLeftCorner(q, q) = id;
  right_factor.topRightCorner(q, q) = d.R * Tr_inv;
  right_factor.bottomRightCorner(q, q) = Tr_inv;
  const CMat via_lambda2 = scale * waves * tp2.left.m * right_factor;

  CMat left_factor = CMat::Zero(2 * q, 2 * q);
  left_factor.topLeftCorner(q, q) = Tl_inv;
  left_factor.bottomLeftCorner(q, q) = d.L * Tl_inv;
  left_factor.bottomRightCorner(q, q) = id;
  const CMat via_sigma1 = scale * waves * tp1.right.m * left_factor;

  card.add("mixed frame at the cut via right-fragment data", rel_residual(frame.mixed, via_lambda2));
  card.add("mixed frame at the cut via left-fragment data", rel_residual(frame.mixed, via_sigma1));
  card.add("the two mixed-frame forms agree", rel_residual(via_lambda2, via_sigma1));

  return card;
}

}  // namespace jacobi
