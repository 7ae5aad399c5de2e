// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "opmod/commuting.hpp"

#include <cmath>

namespace opmod {

namespace {

using C = std::complex<double>;

struct JointSpectral {
  std::vector<std::pair<C, C>> pairs;  // (lambda_S, lambda_T)
  std::vector<blk::MatList> projections;
};

// Simultaneous diagonalization of the two z-transforms, blockwise:
// diagonalize z_S, group its eigenvalues, then diagonalize z_T restricted
// to each group (commutation makes the groups z_T-invariant up to tol).
JointSpectral joint_spectral(const CommutingPair& pair, double tol) {
  if (!pair.certified) throw NotCommuting("pair is not certified");
  const auto& zs = pair.s.z().blocks();
  const auto& zt = pair.t.z().blocks();

  JointSpectral out;
  std::vector<std::pair<C, C>> reps;
  std::vector<std::vector<std::pair<int, Eigen::VectorXcd>>> members;  // per rep: (block, vec)

  for (size_t k = 0; k < zs.size(); ++k) {
    if (zs[k].rows() == 0) continue;
    Eigen::MatrixXcd u;
    Eigen::VectorXcd lam;
    blk::diagonalize_normal(zs[k], kEigenvalueMergeTol, u, lam);

    int start = 0;
    const int n = static_cast<int>(u.cols());
    while (start < n) {
      int end = start + 1;
      while (end < n && std::abs(lam(end) - lam(start)) <= kEigenvalueMergeTol) ++end;
      const int len = end - start;
      const Eigen::MatrixXcd q = u.middleCols(start, len);
      const Eigen::MatrixXcd restricted = q.adjoint() * zt[k] * q;
      Eigen::MatrixXcd w;
      Eigen::VectorXcd mu;
      blk::diagonalize_normal(restricted, kEigenvalueMergeTol, w, mu);
      const Eigen::MatrixXcd refined = q * w;
      for (int j = 0; j < len; ++j) {
        const C cs = lam(start + j), ct = mu(j);
        int idx = -1;
        for (size_t r = 0; r < reps.size(); ++r)
          if (std::abs(reps[r].first - cs) <= kEigenvalueMergeTol &&
              std::abs(reps[r].second - ct) <= kEigenvalueMergeTol) {
            idx = static_cast<int>(r);
            break;
          }
        if (idx < 0) {
          reps.push_back({cs, ct});
          members.emplace_back();
          idx = static_cast<int>(reps.size()) - 1;
        }
        members[idx].push_back({static_cast<int>(k), refined.col(j)});
      }
      start = end;
    }
  }

  for (size_t r = 0; r < reps.size(); ++r) {
    const C cs = functions::clamp_to_open_disc(reps[r].first, kEigFloor);
    const C ct = functions::clamp_to_open_disc(reps[r].second, kEigFloor);
    out.pairs.push_back({functions::zmap_inverse_point(cs), functions::zmap_inverse_point(ct)});
    blk::MatList proj;
    for (const auto& b : zs) proj.push_back(Eigen::MatrixXcd::Zero(b.rows(), b.cols()));
    for (const auto& [k, vec] : members[r]) proj[k] += vec * vec.adjoint();
    out.projections.push_back(std::move(proj));
  }
  (void)tol;
  return out;
}

}  // namespace

bool commutes(const RegularOp& s, const RegularOp& t, double tol) {
  if (!classify(s, std::max(tol, kDefaultTol)).normal ||
      !classify(t, std::max(tol, kDefaultTol)).normal)
    throw NotNormal("commutation criterion needs normal operators");
  if (s.domain() != t.domain() || s.codomain() != t.codomain()) throw DescriptorMismatch();
  const auto& a = s.z().blocks();
  const auto& b = t.z().blocks();
  return blk::opnorm(blk::sub(blk::mul(a, b), blk::mul(b, a))) <= tol;
}

CommutingPair make_commuting_pair(const RegularOp& s, const RegularOp& t, double tol) {
  if (!commutes(s, t, tol)) throw NotCommuting("z-transforms do not commute within tolerance");
  return {s, t, true};
}

RegularOp joint_calculus(const JointFunction& h, const CommutingPair& pair,
                         const CompatibleSet& f_set, const CompatibleSet& g_set, double tol) {
  if (!check_compatible(f_set, pair.s, tol))
    throw NotCompatible("set '" + f_set.name + "' incompatible with the first operator");
  if (!check_compatible(g_set, pair.t, tol))
    throw NotCompatible("set '" + g_set.name + "' incompatible with the second operator");
  const JointSpectral js = joint_spectral(pair, tol);

  blk::MatList z;
  for (const auto& b : pair.s.z().blocks())
    z.push_back(Eigen::MatrixXcd::Zero(b.rows(), b.cols()));
  for (size_t i = 0; i < js.pairs.size(); ++i) {
    const auto& [ls, lt] = js.pairs[i];
    if (!h.defined(ls, lt))
      throw FunctionUndefinedAtSpectrum(h.name + " undefined at joint spectral point");
    const C w = functions::zmap_point(h.eval(ls, lt));
    for (size_t k = 0; k < z.size(); ++k) z[k] += w * js.projections[i][k];
  }
  return RegularOp::from_z(AdjointableOp(pair.s.domain(), pair.s.codomain(), std::move(z)));
}

RegularOp dot_product(const CommutingPair& pair, double tol) {
  return joint_calculus({"st", [](C a, C b) { return a * b; }}, pair, sets::whole_plane(),
                        sets::whole_plane(), tol);
}

RegularOp dot_sum(const CommutingPair& pair, double tol) {
  return joint_calculus({"s+t", [](C a, C b) { return a + b; }}, pair, sets::whole_plane(),
                        sets::whole_plane(), tol);
}

FpReport fuglede_putnam_check(const AdjointableOp& u, const RegularOp& s, const RegularOp& t,
                              const std::vector<ScalarFunction>& fs, double tol) {
  if (!classify(s, std::max(tol, kDefaultTol)).normal ||
      !classify(t, std::max(tol, kDefaultTol)).normal)
    throw NotNormal("Fuglede-Putnam needs normal operators");
  const AdjointableOp bs = s.bounded(), bt = t.bounded();

  FpReport rep;
  rep.bound = 10.0 * tol;
  rep.intertwine_residual = (u * bs - bt * u).norm();
  if (rep.intertwine_residual > tol)
    throw IntertwiningViolated("||US - TU|| = " + std::to_string(rep.intertwine_residual) +
                               " exceeds " + std::to_string(tol));

  rep.adjoint_residual = (u * bs.adjoint() - bt.adjoint() * u).norm();
  rep.passed = rep.adjoint_residual <= rep.bound;
  for (const auto& f : fs) {
    const AdjointableOp fsb = apply_function(f, s, sets::whole_plane(), tol).bounded();
    const AdjointableOp ftb = apply_function(f, t, sets::whole_plane(), tol).bounded();
    const double r = (u * fsb - ftb * u).norm();
    const bool ok = r <= rep.bound;
    rep.entries.push_back({f.name, r, ok});
    rep.passed = rep.passed && ok;
  }
  return rep;
}

}  // namespace opmod
