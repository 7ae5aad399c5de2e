// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "opmod/verify.hpp"

#include <algorithm>
#include <cmath>

#include "opmod/canonical_json.hpp"
#include "opmod/commuting.hpp"
#include "opmod/rng.hpp"
#include "opmod/tensor.hpp"
#include "opmod/unbounded.hpp"

namespace opmod {

namespace {

using C = std::complex<double>;

// ---------------------------------------------------------------------
// Random inputs. Everything goes through Rng streams keyed by (seed,
// trial), so trial order never matters.
// ---------------------------------------------------------------------

struct Sampler {
  Rng rng;
  explicit Sampler(Rng r) : rng(r) {}

  AlgebraDescriptor algebra(int max_blocks = 2, int max_dim = 3) {
    const int nb = rng.uniform_int(1, max_blocks);
    std::vector<int> dims;
    for (int i = 0; i < nb; ++i) dims.push_back(rng.uniform_int(1, max_dim));
    return AlgebraDescriptor(dims);
  }

  ModuleDescriptor module(int max_rank = 4, int max_blocks = 2, int max_dim = 3) {
    return ModuleDescriptor(algebra(max_blocks, max_dim), rng.uniform_int(1, max_rank));
  }

  Eigen::MatrixXcd cmatrix(int rows, int cols, double scale = 1.0) {
    Eigen::MatrixXcd m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = scale * rng.cgaussian();
    return m;
  }

  AdjointableOp op(const ModuleDescriptor& dom, const ModuleDescriptor& cod) {
    blk::MatList blocks;
    for (int k = 0; k < dom.algebra().blocks(); ++k) {
      const int d = dom.algebra().dim(k);
      const int r = cod.rank() * d, c = dom.rank() * d;
      blocks.push_back(cmatrix(r, c, 1.0 / std::sqrt(static_cast<double>(std::max(r, c)))));
    }
    return AdjointableOp(dom, cod, std::move(blocks));
  }

  AdjointableOp endo(const ModuleDescriptor& d) { return op(d, d); }

  Eigen::MatrixXcd unitary_matrix(int n) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(cmatrix(n, n));
    Eigen::MatrixXcd q = qr.householderQ();
    return q;
  }

  AdjointableOp unitary(const ModuleDescriptor& d) {
    blk::MatList blocks;
    for (int k = 0; k < d.algebra().blocks(); ++k)
      blocks.push_back(unitary_matrix(d.rank() * d.algebra().dim(k)));
    return AdjointableOp(d, d, std::move(blocks));
  }

  /// U diag(lambda) U* with complex eigenvalues in a disc of the given radius.
  AdjointableOp normal(const ModuleDescriptor& d, double radius = 2.0, bool real_spectrum = false,
                       double spectrum_floor = -1e9) {
    blk::MatList blocks;
    for (int k = 0; k < d.algebra().blocks(); ++k) {
      const int n = d.rank() * d.algebra().dim(k);
      Eigen::VectorXcd lam(n);
      for (int i = 0; i < n; ++i) {
        C v = rng.cuniform(radius);
        if (real_spectrum) v = C(v.real(), 0.0);
        if (v.real() < spectrum_floor) v = C(spectrum_floor + (spectrum_floor - v.real()), v.imag());
        lam(i) = v;
      }
      const Eigen::MatrixXcd u = unitary_matrix(n);
      blocks.push_back(u * lam.asDiagonal() * u.adjoint());
    }
    return AdjointableOp(d, d, std::move(blocks));
  }

  AdjointableOp selfadjoint(const ModuleDescriptor& d, double radius = 2.0) {
    return normal(d, radius, /*real_spectrum=*/true);
  }

  /// Spectrum inside [floor, floor + width].
  AdjointableOp positive_definite(const ModuleDescriptor& d, double floor = 0.2,
                                  double width = 1.8) {
    blk::MatList blocks;
    for (int k = 0; k < d.algebra().blocks(); ++k) {
      const int n = d.rank() * d.algebra().dim(k);
      Eigen::VectorXcd lam(n);
      for (int i = 0; i < n; ++i) lam(i) = floor + width * rng.uniform();
      const Eigen::MatrixXcd u = unitary_matrix(n);
      blocks.push_back(u * lam.asDiagonal() * u.adjoint());
    }
    return AdjointableOp(d, d, std::move(blocks));
  }

  /// Commuting normal pair: one unitary, two spectra.
  std::pair<AdjointableOp, AdjointableOp> commuting_normals(const ModuleDescriptor& d,
                                                            bool positive = false) {
    blk::MatList as, bs;
    for (int k = 0; k < d.algebra().blocks(); ++k) {
      const int n = d.rank() * d.algebra().dim(k);
      const Eigen::MatrixXcd u = unitary_matrix(n);
      Eigen::VectorXcd la(n), lb(n);
      for (int i = 0; i < n; ++i) {
        la(i) = positive ? C(0.2 + 1.8 * rng.uniform(), 0.0) : rng.cuniform(2.0);
        lb(i) = positive ? C(0.2 + 1.8 * rng.uniform(), 0.0) : rng.cuniform(2.0);
      }
      as.push_back(u * la.asDiagonal() * u.adjoint());
      bs.push_back(u * lb.asDiagonal() * u.adjoint());
    }
    return {AdjointableOp(d, d, std::move(as)), AdjointableOp(d, d, std::move(bs))};
  }

  AlgebraElement density(const AlgebraDescriptor& a, bool allow_degenerate = true) {
    std::vector<Eigen::MatrixXcd> blocks;
    for (int k = 0; k < a.blocks(); ++k) {
      const int d = a.dim(k);
      Eigen::MatrixXcd b = cmatrix(d, d);
      Eigen::MatrixXcd rho = b.adjoint() * b;
      if (allow_degenerate && rng.uniform() < 0.25) {
        Eigen::VectorXcd v = cmatrix(d, 1);
        rho = v * v.adjoint();  // rank one
      }
      blocks.push_back(rho);
    }
    return AlgebraElement(a, std::move(blocks));
  }

  AlgebraElement full_rank_density(const AlgebraDescriptor& a) {
    std::vector<Eigen::MatrixXcd> blocks;
    for (int k = 0; k < a.blocks(); ++k) {
      const int d = a.dim(k);
      Eigen::MatrixXcd b = cmatrix(d, d);
      blocks.push_back(
          Eigen::MatrixXcd(b.adjoint() * b + 0.1 * Eigen::MatrixXcd::Identity(d, d)));
    }
    return AlgebraElement(a, std::move(blocks));
  }

  ModuleVector vector(const ModuleDescriptor& d) {
    std::vector<Eigen::MatrixXcd> blocks;
    for (int k = 0; k < d.algebra().blocks(); ++k) {
      const int dim = d.algebra().dim(k);
      blocks.push_back(cmatrix(d.rank() * dim, dim));
    }
    return ModuleVector(d, std::move(blocks));
  }

  RationalSymbol symbol(int max_deg = 3) {
    auto poly = [&](int deg, bool certify_nonzero) {
      for (;;) {
        std::vector<C> coeffs;
        for (int i = 0; i <= deg; ++i)
          coeffs.push_back(C(rng.uniform_int(-3, 3), rng.uniform_int(-2, 2)));
        if (std::abs(coeffs.back()) == 0.0) coeffs.back() = C(rng.uniform_int(1, 3), 0);
        Polynomial p{coeffs};
        if (!certify_nonzero || p.nowhere_zero_on_naturals()) return p;
      }
    };
    const int dn = rng.uniform_int(0, max_deg), dd = rng.uniform_int(0, max_deg);
    return RationalSymbol(poly(dn, false), poly(dd, true));
  }
};

int block_rank(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > kRankRelTol * sv(0)) ++r;
  return r;
}

int op_rank(const AdjointableOp& x) {
  int r = 0;
  for (const auto& b : x.blocks()) r += block_rank(b);
  return r;
}

int colspan_rank(const AdjointableOp& x, const AdjointableOp& y) {
  int r = 0;
  for (size_t k = 0; k < x.blocks().size(); ++k) {
    Eigen::MatrixXcd joined(x.blocks()[k].rows(), x.blocks()[k].cols() + y.blocks()[k].cols());
    joined << x.blocks()[k], y.blocks()[k];
    r += block_rank(joined);
  }
  return r;
}

double flag_residual(bool ok) { return ok ? 0.0 : 1.0; }

// Independent eigenvalue route: dense (non-unitary) diagonalization of the
// flattened blocks, bypassing the z-machinery entirely.
std::vector<C> direct_eigenvalues(const AdjointableOp& x) {
  std::vector<C> out;
  for (const auto& b : x.blocks()) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(b);
    for (int i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i));
  }
  return out;
}

// ---------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------

std::vector<PropertyRecord> suite_ztransform(int trials, std::uint64_t seed) {
  PropertyRecord roundtrip{"roundtrip", "T = z_T (1 - z_T* z_T)^{-1/2}", 1e-9};
  PropertyRecord adjoint{"adjoint", "z_{T*} = (z_T)*", 1e-12};
  PropertyRecord lance{"lance", "(1 + T*T)^{-1} = 1 - z_T* z_T", 1e-10};
  PropertyRecord classify_sa{"classify", "T normal/selfadjoint/positive <=> z_T is", 0.5};
  PropertyRecord kernel_range{"kernel-range", "Ran(T*T)~ = Ran(T*)~ and ker T*T = ker T", 0.5};
  PropertyRecord abs_range{"absvalue-range", "Ran|T|~ = Ran(T*)~ and ker|T| = ker T", 0.5};
  PropertyRecord normality{"normality", "T normal <=> T*T = TT*", 0.5};

  for (int t = 0; t < trials; ++t) {
    Sampler s(Rng::stream(seed, t));
    const ModuleDescriptor d = s.module();
    const AdjointableOp x = s.endo(d);
    const RegularOp r = RegularOp::from_bounded(x);
    roundtrip.record((r.bounded() - x).norm());
    adjoint.record((r.adjoint().z() - r.z().adjoint()).norm());

    {
      // Both Lance routes: direct inverse vs the stored defect square.
      blk::MatList one_plus;
      const auto w = blk::mul(blk::adjoint(x.blocks()), x.blocks());
      for (const auto& b : w)
        one_plus.push_back(
            Eigen::MatrixXcd((Eigen::MatrixXcd::Identity(b.rows(), b.cols()) + b).inverse()));
      const auto ztz = blk::mul(blk::adjoint(r.z().blocks()), r.z().blocks());
      blk::MatList defect2;
      for (const auto& b : ztz)
        defect2.push_back(Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(b.rows(), b.cols()) - b));
      lance.record(blk::opnorm(blk::sub(one_plus, defect2)));
    }

    {
      // Classification against an eigenvalue-sign oracle on an independent
      // diagonalization route.
      const bool sa_case = t % 2 == 0;
      const AdjointableOp y = sa_case ? s.selfadjoint(d) : s.normal(d);
      const OpFlags flags = classify(RegularOp::from_bounded(y));
      const std::vector<C> eigs = direct_eigenvalues(y);
      double max_im = 0.0, min_re = 1e300;
      for (const auto& lam : eigs) {
        max_im = std::max(max_im, std::abs(lam.imag()));
        min_re = std::min(min_re, lam.real());
      }
      const bool oracle_sa = max_im <= 1e-9;
      const bool oracle_pos = oracle_sa && min_re >= -1e-9;
      bool ok = flags.normal;  // both generators produce normal inputs
      ok = ok && (flags.selfadjoint == oracle_sa);
      ok = ok && (flags.positive == oracle_pos);
      classify_sa.record(flag_residual(ok));
    }

    {
      const AdjointableOp tst = x.adjoint() * x;
      bool ok = op_rank(tst) == op_rank(x);
      ok = ok && colspan_rank(tst, x.adjoint()) == op_rank(x.adjoint());
      kernel_range.record(flag_residual(ok));

      const AdjointableOp abs_t = absolute_value(r).bounded();
      bool ok2 = op_rank(abs_t) == op_rank(x.adjoint());
      ok2 = ok2 && colspan_rank(abs_t, x.adjoint()) == op_rank(x.adjoint());
      abs_range.record(flag_residual(ok2));
    }

    {
      const bool make_normal = t % 2 == 0;
      const AdjointableOp y = make_normal ? s.normal(d) : s.endo(d);
      const double comm =
          blk::opnorm(blk::sub(blk::mul(blk::adjoint(y.blocks()), y.blocks()),
                               blk::mul(y.blocks(), blk::adjoint(y.blocks()))));
      const bool oracle = comm <= 1e-9;
      // Skip borderline draws: a generic endomorphism is safely abnormal.
      if (oracle || comm > 1e-3) {
        const bool flag = classify(RegularOp::from_bounded(y)).normal;
        normality.record(flag_residual(flag == oracle));
      } else {
        normality.record(0.0);
      }
    }
  }
  return {roundtrip, adjoint, lance, classify_sa, kernel_range, abs_range, normality};
}

std::vector<PropertyRecord> suite_calculus(int trials, std::uint64_t seed) {
  PropertyRecord jmap{"jmap", "sigma(z_T) = closure{ c/(1+|c|^2)^{1/2} : c in sigma(T) }", 1e-9};
  PropertyRecord spec_sa{"spectrum-selfadjoint", "T selfadjoint <=> sigma(T) in R", 1e-9};
  PropertyRecord spec_pos{"spectrum-positive", "T positive <=> sigma(T) in R+", 1e-9};
  PropertyRecord mult{"multiplicative", "(f g)(T) = f(T) g(T)", 1e-9};
  PropertyRecord add{"additive", "(f + g)(T) = f(T) + g(T)", 1e-9};
  PropertyRecord star_p{"star", "conj(f)(T) = f(T)*", 1e-9};
  PropertyRecord iota{"iota", "pi(iota) = T", 1e-10};
  PropertyRecord compose{"compose", "g(f(T)) = (g o f)(T)", 1e-9};
  PropertyRecord restrict{"restrict", "f(T) = (f_G)(T) for compatible G in H", 1e-10};
  PropertyRecord specmap{"spectral-mapping", "sigma(f(T)) = closure f(sigma(T))", 1e-9};
  PropertyRecord resolvent_id{
      "resolvent-identity", "(T-c)^{-1} - (T-d)^{-1} = (c-d)(T-c)^{-1}(T-d)^{-1}", 1e-9};
  PropertyRecord smeasure{"spectral-measure", "f(T_omega) = sum f(lambda) P_lambda", 1e-9};
  PropertyRecord injective{"injectivity", "calculus on G in sigma(T) is injective", 1e-9};
  PropertyRecord analytic{"analytic", "z -> S^{iz} v satisfies Cauchy-Riemann", 1e-5};
  PropertyRecord balanced{"balanced", "T . f(T*T) = f(TT*) . T", 1e-9};
  PropertyRecord balanced_z{"balanced-zmap", "z_T = T . (1 + T*T)^{-1/2}", 1e-10};

  const std::vector<ScalarFunction> bounded_fns = {functions::id(), functions::conj(),
                                                   functions::sq(), functions::exp(),
                                                   functions::zmap()};

  for (int t = 0; t < trials; ++t) {
    Sampler s(Rng::stream(seed, t));
    const ModuleDescriptor d = s.module();
    const AdjointableOp n = s.normal(d);
    const RegularOp r = RegularOp::from_bounded(n);

    {
      SpectrumSet zspec;
      zspec.points = direct_eigenvalues(r.z());
      SpectrumSet mapped;
      for (const auto& lam : spectrum(r).points)
        mapped.points.push_back(functions::zmap_point(lam));
      jmap.record(hausdorff_distance(zspec, mapped));
    }

    {
      const RegularOp sa = RegularOp::from_bounded(s.selfadjoint(d));
      double max_im = 0.0;
      for (const auto& lam : spectrum(sa).points) max_im = std::max(max_im, std::abs(lam.imag()));
      spec_sa.record(max_im);

      const RegularOp pos = RegularOp::from_bounded(s.positive_definite(d, 0.0, 2.0));
      double worst = 0.0;
      for (const auto& lam : spectrum(pos).points)
        worst = std::max({worst, -lam.real(), std::abs(lam.imag())});
      spec_pos.record(worst);
    }

    {
      // Law checks run on a unit-ball spectrum so iterated registry
      // functions (exp of exp, exp of sq) stay at desk scale, where the
      // z-representation holds the stated absolute tolerances.
      const AdjointableOp nl = s.normal(d, 1.2);
      const RegularOp rl = RegularOp::from_bounded(nl);
      const auto& f = bounded_fns[s.rng.uniform_int(0, bounded_fns.size() - 1)];
      const auto& g = bounded_fns[s.rng.uniform_int(0, bounded_fns.size() - 1)];
      const CompatibleSet all = sets::whole_plane();
      const AdjointableOp fb = apply_function(f, rl, all).bounded();
      const AdjointableOp gb = apply_function(g, rl, all).bounded();
      ScalarFunction prod{"fg", [&](C c) { return f.eval(c) * g.eval(c); }};
      ScalarFunction sum{"f+g", [&](C c) { return f.eval(c) + g.eval(c); }};
      ScalarFunction conj_f{"conj f", [&](C c) { return std::conj(f.eval(c)); }};
      mult.record((apply_function(prod, rl, all).bounded() - fb * gb).norm());
      add.record((apply_function(sum, rl, all).bounded() - (fb + gb)).norm());
      star_p.record((apply_function(conj_f, rl, all).bounded() - fb.adjoint()).norm());
      iota.record((apply_function(functions::id(), rl, all).bounded() - nl).norm());

      const auto [lhs, rhs] = compose_check(g, f, rl, all, all);
      compose.record((lhs.bounded() - rhs.bounded()).norm());

      const auto [spec_f, image_f] = spectral_mapping_check(f, rl, all);
      specmap.record(hausdorff_distance(spec_f, image_f));
    }

    {
      // Shrinking the compatible set does not change the calculus.
      const RegularOp pd = RegularOp::from_bounded(s.positive_definite(d));
      const AdjointableOp big = apply_function(functions::sq(), pd, sets::whole_plane()).bounded();
      const AdjointableOp small =
          apply_function(functions::sq(), pd, sets::strict_positive_halfline()).bounded();
      restrict.record((big - small).norm());
    }

    {
      const SpectrumSet sp = spectrum(r);
      C c = s.rng.cuniform(3.0), dd = s.rng.cuniform(3.0);
      auto far = [&](C p) {
        double dist = 1e300;
        for (const auto& lam : sp.points) dist = std::min(dist, std::abs(p - lam));
        return dist > 0.3;
      };
      while (!far(c)) c += C(0.45, 0.31);
      while (!far(dd) || std::abs(c - dd) < 1e-3) dd += C(0.27, 0.52);
      const AdjointableOp rc = resolvent(r, c), rd = resolvent(r, dd);
      resolvent_id.record((rc - rd - (rc * rd) * (c - dd)).norm());
    }

    {
      // Spectral-measure consistency on the localized operator.
      const LocalizedSpace space = localize(d, s.full_rank_density(d.algebra()));
      const Eigen::MatrixXcd tw = localize_op(space, n);
      const auto& f = bounded_fns[s.rng.uniform_int(0, bounded_fns.size() - 1)];
      const Eigen::MatrixXcd via_module =
          localize_op(space, apply_function(f, r, sets::whole_plane()).bounded());
      // Independent route: eigenvectors of T_omega itself.
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(tw);
      Eigen::MatrixXcd direct = Eigen::MatrixXcd::Zero(tw.rows(), tw.cols());
      const Eigen::MatrixXcd vinv = es.eigenvectors().inverse();
      for (int i = 0; i < es.eigenvalues().size(); ++i)
        direct += f.eval(es.eigenvalues()(i)) * es.eigenvectors().col(i) * vinv.row(i);
      smeasure.record((via_module - direct).norm());
    }

    {
      // Two functions separated at one spectral point produce operators at
      // least that far apart (projections have norm one).
      const Eigen::MatrixXcd m = (Eigen::MatrixXcd(2, 2) << 1, 0, 0, 2).finished();
      const RegularOp tt = RegularOp::from_bounded(AdjointableOp::from_complex_matrix(m));
      const double gap = 0.5 + s.rng.uniform();
      ScalarFunction f{"f", [](C c) { return c; }};
      ScalarFunction g{"g", [gap](C c) { return std::abs(c - 2.0) < 0.5 ? c + gap : c; }};
      const double dist = (apply_function(f, tt, sets::whole_plane()).bounded() -
                           apply_function(g, tt, sets::whole_plane()).bounded())
                              .norm();
      injective.record(std::max(0.0, gap - dist));
    }

    {
      const RegularOp spos = RegularOp::from_bounded(s.positive_definite(d));
      const ModuleVector v = s.vector(d);
      const C z0 = s.rng.cuniform(0.5);
      const double h = 1e-4;
      auto F = [&](C z) {
        return power_complex(spos, C(0, 1) * z).bounded().apply(v);
      };
      const ModuleVector dx = (F(z0 + h) - F(z0 - h)) * (1.0 / (2 * h));
      const ModuleVector dy = (F(z0 + C(0, h)) - F(z0 - C(0, h))) * (1.0 / (2 * h));
      analytic.record((dy - dx * C(0, 1)).norm());
    }

    {
      const AdjointableOp x = s.endo(d);
      const RegularOp rx = RegularOp::from_bounded(x);
      const CompatibleSet pos = sets::positive_halfline();
      const std::vector<ScalarFunction> balanced_fns = {
          {"(1+t)^{-1/2}", [](C c) { return 1.0 / std::sqrt(1.0 + c); }},
          {"exp(-t)", [](C c) { return std::exp(-c); }},
          functions::powk(1.0)};
      const auto& f = balanced_fns[s.rng.uniform_int(0, 2)];
      const AdjointableOp lhs = balanced_product(rx, f, pos).bounded();
      const AdjointableOp rhs =
          apply_function(f, t_star_t(rx.adjoint()), pos).bounded() * x;
      balanced.record((lhs - rhs).norm());
      const AdjointableOp z_route =
          balanced_product(rx, balanced_fns[0], pos).bounded();
      balanced_z.record((z_route - rx.z()).norm());
    }
  }
  return {jmap,    spec_sa, spec_pos,     mult,     add,      star_p,   iota,       compose,
          restrict, specmap, resolvent_id, smeasure, injective, analytic, balanced,   balanced_z};
}

std::vector<PropertyRecord> suite_powers(int trials, std::uint64_t seed) {
  PropertyRecord add_law{"additive", "T^{s+t} = T^s T^t", 1e-8};
  PropertyRecord mul_law{"multiplicative", "(T^s)^t = T^{st}", 1e-8};
  PropertyRecord unitary{"unitary", "T^{is} is unitary", 1e-10};
  PropertyRecord group{"group", "T^{is} T^{it} = T^{i(s+t)}", 1e-9};
  PropertyRecord continuity{"continuity", "s -> T^{is} is norm continuous", 1e-9};
  PropertyRecord ln_exp{"ln-exp", "ln(e^T) = T for selfadjoint T", 1e-9};
  PropertyRecord exp_ln{"exp-ln", "e^{ln T} = T for strictly positive T", 1e-9};
  PropertyRecord exp_spos{"exp-positive", "e^T strictly positive for selfadjoint T", 0.5};
  PropertyRecord low{"low-powers", "T^0 = 1 and T^1 = T", 1e-10};
  PropertyRecord norm_pow{"norm", "||T^s|| = ||T||^s", 1e-8};

  for (int t = 0; t < trials; ++t) {
    Sampler smp(Rng::stream(seed, t));
    const ModuleDescriptor d = smp.module();
    // Spectrum inside [1/4, 3/2]: iterated powers with s, t up to 3 stay
    // below norm 40, where bounded-representative comparisons sit well
    // under the 1e-8 gate.
    const RegularOp r = RegularOp::from_bounded(smp.positive_definite(d, 0.25, 1.25));
    const double s1 = 3.0 * smp.rng.uniform(), s2 = 3.0 * smp.rng.uniform();

    add_law.record(
        (power_real(r, s1 + s2).bounded() - power_real(r, s1).bounded() * power_real(r, s2).bounded())
            .norm());
    mul_law.record(
        (power_real(power_real(r, s1), s2).bounded() - power_real(r, s1 * s2).bounded()).norm());

    const double u1 = smp.rng.uniform(-2.0, 2.0), u2 = smp.rng.uniform(-2.0, 2.0);
    const AdjointableOp tu1 = power_complex(r, C(0, u1)).bounded();
    const AdjointableOp tu2 = power_complex(r, C(0, u2)).bounded();
    unitary.record(
        (tu1.adjoint() * tu1 - AdjointableOp::identity(d)).norm());
    group.record((tu1 * tu2 - power_complex(r, C(0, u1 + u2)).bounded()).norm());

    {
      const double delta = 1e-6;
      double max_ln = 0.0;
      for (const auto& lam : spectrum(r).points)
        max_ln = std::max(max_ln, std::abs(std::log(lam.real())));
      const double diff =
          (power_complex(r, C(0, u1 + delta)).bounded() - tu1).norm();
      continuity.record(std::max(0.0, diff - delta * max_ln));
    }

    {
      const RegularOp sa = RegularOp::from_bounded(smp.selfadjoint(d, 1.5));
      const RegularOp esa = exp_op(sa);
      ln_exp.record((ln_op(esa).bounded() - sa.bounded()).norm());
      exp_spos.record(flag_residual(classify(esa).strictly_positive));
      exp_ln.record((exp_op(ln_op(r)).bounded() - r.bounded()).norm());
    }

    low.record(std::max((power_real(r, 0.0).bounded() - AdjointableOp::identity(d)).norm(),
                        (power_real(r, 1.0).bounded() - r.bounded()).norm()));
    norm_pow.record(std::abs(power_real(r, s1).bounded().norm() -
                             std::pow(r.bounded().norm(), s1)));
  }
  return {add_law, mul_law, unitary, group, continuity, ln_exp, exp_ln, exp_spos, low, norm_pow};
}

std::vector<PropertyRecord> suite_fuglede_putnam(int trials, std::uint64_t seed) {
  PropertyRecord adj{"adjoint-transfer", "U S = T U implies U S* = T* U", 1e-9};
  PropertyRecord cal{"calculus-transfer", "U S = T U implies U f(S) = f(T) U", 1e-8};
  PropertyRecord trivial{"trivial", "identity and zero intertwiners transfer exactly", 1e-12};

  const std::vector<ScalarFunction> fns = {functions::id(), functions::conj(), functions::sq(),
                                           functions::exp(), functions::zmap()};

  for (int t = 0; t < trials; ++t) {
    Sampler smp(Rng::stream(seed, t));
    const ModuleDescriptor d = smp.module();
    const AdjointableOp sn = smp.normal(d);
    const RegularOp s = RegularOp::from_bounded(sn);
    const AdjointableOp v = smp.unitary(d);
    // T = V S V*, intertwined by U = V g(S) for a bounded g commuting with S.
    const AdjointableOp tt = v * sn * v.adjoint();
    const RegularOp tr = RegularOp::from_bounded(tt);
    AdjointableOp u = v;
    if (t % 3 == 1) u = v * apply_function(functions::zmap(), s, sets::whole_plane()).bounded();
    if (t % 3 == 2) u = v * apply_function(functions::exp(), s, sets::whole_plane()).bounded();

    const FpReport rep = fuglede_putnam_check(u, s, tr, fns, 1e-9);
    adj.record(rep.adjoint_residual);
    double worst = 0.0;
    for (const auto& e : rep.entries) worst = std::max(worst, e.residual);
    cal.record(worst);

    const FpReport same = fuglede_putnam_check(AdjointableOp::identity(d), s, s, fns, 1e-9);
    const FpReport zero =
        fuglede_putnam_check(AdjointableOp::zero(d, d), s, s, fns, 1e-9);
    double tri = std::max(same.adjoint_residual, zero.adjoint_residual);
    for (const auto& e : same.entries) tri = std::max(tri, e.residual);
    for (const auto& e : zero.entries) tri = std::max(tri, e.residual);
    trivial.record(tri);
  }
  return {adj, cal, trivial};
}

std::vector<PropertyRecord> suite_commuting(int trials, std::uint64_t seed) {
  PropertyRecord factor{"factorization", "(f (x) g)(S,T) = f(S) g(T)", 1e-9};
  PropertyRecord proj{"projection", "(f (x) 1)(S,T) = f(S)", 1e-9};
  PropertyRecord dot_pow{"dot-power", "(S . T)^n = S^n . T^n", 1e-8};
  PropertyRecord symmetry{"symmetry", "S . T = T . S and S + T = T + S", 1e-9};
  PropertyRecord grid{"unitary-grid", "commute <=> S^{is} T^{it} = T^{it} S^{is}", 1e-8};
  PropertyRecord criterion{"criterion", "commute <=> z_S z_T = z_T z_S", 0.5};

  for (int t = 0; t < trials; ++t) {
    Sampler smp(Rng::stream(seed, t));
    const ModuleDescriptor d = smp.module(3, 2, 2);
    auto [a, b] = smp.commuting_normals(d);
    const RegularOp s = RegularOp::from_bounded(a), tr = RegularOp::from_bounded(b);
    const CommutingPair pair = make_commuting_pair(s, tr, 1e-8);

    {
      const ScalarFunction f = functions::zmap(), g = functions::exp();
      JointFunction h{"f(x)g", [&](C x, C y) { return f.eval(x) * g.eval(y); }};
      const AdjointableOp joint =
          joint_calculus(h, pair, sets::whole_plane(), sets::whole_plane()).bounded();
      const AdjointableOp split = apply_function(f, s, sets::whole_plane()).bounded() *
                                  apply_function(g, tr, sets::whole_plane()).bounded();
      factor.record((joint - split).norm());

      JointFunction hf{"f(x)1", [&](C x, C) { return f.eval(x); }};
      proj.record((joint_calculus(hf, pair, sets::whole_plane(), sets::whole_plane()).bounded() -
                   apply_function(f, s, sets::whole_plane()).bounded())
                      .norm());
    }

    {
      auto [pa, pb] = smp.commuting_normals(d, /*positive=*/true);
      const RegularOp ps = RegularOp::from_bounded(pa), pt = RegularOp::from_bounded(pb);
      const CommutingPair ppair = make_commuting_pair(ps, pt, 1e-8);
      const RegularOp prod = dot_product(ppair);
      const int n = 2 + (t % 2);
      const RegularOp lhs = power_real(prod, n);
      const CommutingPair powered =
          make_commuting_pair(power_real(ps, n), power_real(pt, n), 1e-7);
      dot_pow.record((lhs.bounded() - dot_product(powered).bounded()).norm());

      // Unitary-group criterion on the strictly positive pair.
      double worst = 0.0;
      for (const double gs : {1.0, -1.0, 0.37, -0.37})
        for (const double gt : {1.0, -1.0, 0.37, -0.37}) {
          const AdjointableOp us = power_complex(ps, C(0, gs)).bounded();
          const AdjointableOp ut = power_complex(pt, C(0, gt)).bounded();
          worst = std::max(worst, (us * ut - ut * us).norm());
        }
      grid.record(worst);
    }

    {
      const CommutingPair swapped{pair.t, pair.s, true};
      symmetry.record(std::max(
          (dot_product(pair).bounded() - dot_product(swapped).bounded()).norm(),
          (dot_sum(pair).bounded() - dot_sum(swapped).bounded()).norm()));
    }

    {
      // The z-commutator criterion must reject a genuinely non-commuting pair.
      const Eigen::MatrixXcd m1 = (Eigen::MatrixXcd(2, 2) << 1, 0, 0, -1).finished();
      const Eigen::MatrixXcd m2 = (Eigen::MatrixXcd(2, 2) << 0, 1, 1, 0).finished();
      const RegularOp n1 = RegularOp::from_bounded(AdjointableOp::from_complex_matrix(m1));
      const RegularOp n2 = RegularOp::from_bounded(AdjointableOp::from_complex_matrix(m2));
      bool ok = commutes(s, tr, 1e-8) && !commutes(n1, n2, 1e-8);
      // And the unitary grid detects the same failure.
      const AdjointableOp p1 =
          power_complex(RegularOp::from_bounded(AdjointableOp::from_complex_matrix(
                            (Eigen::MatrixXcd(2, 2) << 2, 0, 0, 1).finished())),
                        C(0, 1))
              .bounded();
      const AdjointableOp p2 =
          power_complex(RegularOp::from_bounded(AdjointableOp::from_complex_matrix(
                            (Eigen::MatrixXcd(2, 2) << 3, 1, 1, 2).finished())),
                        C(0, 1))
              .bounded();
      ok = ok && (p1 * p2 - p2 * p1).norm() > 1e-8;
      criterion.record(flag_residual(ok));
    }
  }
  return {factor, proj, dot_pow, symmetry, grid, criterion};
}

std::vector<PropertyRecord> suite_tensor(int trials, std::uint64_t seed) {
  PropertyRecord adj{"adjoint", "(S (x) T)* = S* (x) T*", 1e-10};
  PropertyRecord gram{"gram", "(S (x) T)*(S (x) T) = S*S (x) T*T", 1e-9};
  PropertyRecord absv{"absvalue", "|S (x) T| = |S| (x) |T|", 1e-8};
  PropertyRecord pows{"powers", "(S (x) T)^z = S^z (x) T^z for z in {1/2, 2, i}", 1e-8};
  PropertyRecord norm_mul{"norm", "||S (x) T|| = ||S|| ||T||", 1e-10};
  PropertyRecord dot_factor{"dot-factor", "(S (x) 1) . (1 (x) T) = S (x) T", 1e-9};
  PropertyRecord min_dom{"minimal-norm-dominates", "||x||_min = ||x|| (localized never above)",
                         1e-9};
  PropertyRecord min_att{"minimal-norm-attains", "||x||_min = ||x|| (sampled within 5%)", 0.05};

  for (int t = 0; t < trials; ++t) {
    Sampler smp(Rng::stream(seed, t));
    const ModuleDescriptor e = smp.module(2, 1, 2), f = smp.module(2, 1, 2);
    const AdjointableOp sc = smp.endo(e), tc = smp.endo(f);

    adj.record((tensor_bounded(sc, tc).adjoint() - tensor_bounded(sc.adjoint(), tc.adjoint()))
                   .norm());
    {
      const AdjointableOp st = tensor_bounded(sc, tc);
      gram.record((st.adjoint() * st - tensor_bounded(sc.adjoint() * sc, tc.adjoint() * tc))
                      .norm());
      norm_mul.record(std::abs(st.norm() - sc.norm() * tc.norm()));
      const RegularOp rs = RegularOp::from_bounded(sc), rt = RegularOp::from_bounded(tc);
      absv.record((absolute_value(tensor_op(rs, rt)).bounded() -
                   tensor_bounded(absolute_value(rs).bounded(), absolute_value(rt).bounded()))
                      .norm());
    }

    {
      const RegularOp ps = RegularOp::from_bounded(smp.positive_definite(e));
      const RegularOp pt = RegularOp::from_bounded(smp.positive_definite(f));
      const RegularOp pst = tensor_op(ps, pt);
      double worst = 0.0;
      for (const double zr : {0.5, 2.0}) {
        worst = std::max(worst, (power_real(pst, zr).bounded() -
                                 tensor_bounded(power_real(ps, zr).bounded(),
                                                power_real(pt, zr).bounded()))
                                    .norm());
      }
      worst = std::max(worst, (power_complex(pst, C(0, 1)).bounded() -
                               tensor_bounded(power_complex(ps, C(0, 1)).bounded(),
                                              power_complex(pt, C(0, 1)).bounded()))
                                  .norm());
      pows.record(worst);

      const AdjointableOp sn = smp.normal(e), tn = smp.normal(f);
      const RegularOp s1 = tensor_op(RegularOp::from_bounded(sn),
                                     RegularOp::from_bounded(AdjointableOp::identity(f)));
      const RegularOp t1 = tensor_op(RegularOp::from_bounded(AdjointableOp::identity(e)),
                                     RegularOp::from_bounded(tn));
      const CommutingPair pair = make_commuting_pair(s1, t1, 1e-8);
      dot_factor.record((dot_product(pair).bounded() -
                         tensor_bounded(sn, tn))
                            .norm());
    }

    {
      // x = sum of elementary tensors; product localizations recover the
      // norm (isometric when the densities are faithful).
      const TensorModule tm = tensor_module(e, f);
      AdjointableOp x = tensor_bounded(smp.endo(e), smp.endo(f));
      for (int i = 0; i < 2; ++i)
        x = x + tensor_bounded(smp.endo(e), smp.endo(f));
      const double xn = x.norm();
      double best = 0.0;
      for (int i = 0; i < 32; ++i) {
        const AlgebraElement rho = i % 4 == 3 ? smp.density(e.algebra())
                                              : smp.full_rank_density(e.algebra());
        const AlgebraElement th = i % 4 == 3 ? smp.density(f.algebra())
                                             : smp.full_rank_density(f.algebra());
        const LocalizedSpace space = localize(tm.combined, tensor_elem(rho, th));
        best = std::max(best, blk::opnorm(localize_op(space, x)));
      }
      min_dom.record(std::max(0.0, best - xn));
      min_att.record(xn > 0 ? std::max(0.0, (xn - best) / xn) : 0.0);
    }
  }
  return {adj, gram, absv, pows, norm_mul, dot_factor, min_dom, min_att};
}

std::vector<PropertyRecord> suite_localization(int trials, std::uint64_t seed) {
  PropertyRecord zt{"ztransform", "(z_T)_omega = z_{T_omega}", 1e-9};
  PropertyRecord adj{"adjoint", "(T_omega)* = (T*)_omega", 1e-9};
  PropertyRecord gram{"gram", "(T_omega)*(T_omega) = (T*T)_omega", 1e-9};
  PropertyRecord mult{"multiplicative", "(x y)_omega = x_omega y_omega", 1e-9};
  PropertyRecord contraction{"contraction", "||x_omega|| <= ||x||", 1e-10};
  PropertyRecord separating{"separating", "S = T <=> S_omega = T_omega for separating omega",
                            1e-9};
  PropertyRecord pairing{"pairing", "<x v, w> = <v, x* w>", 1e-10};
  PropertyRecord positivity{"positivity", "<v, v> >= 0", 0.5};
  PropertyRecord theta_aff{"theta", "T theta_{v,w} = theta_{T v, w}", 1e-9};
  PropertyRecord local_calc{"calculus", "f(T)_omega = f(T_omega)", 1e-9};

  for (int t = 0; t < trials; ++t) {
    Sampler smp(Rng::stream(seed, t));
    const ModuleDescriptor d = smp.module();
    const AdjointableOp x = smp.endo(d), y = smp.endo(d);
    const RegularOp r = RegularOp::from_bounded(x);
    const AlgebraElement rho = smp.density(d.algebra());
    const LocalizedSpace space = localize(d, rho);

    {
      const Eigen::MatrixXcd z_then_local = localize_op(space, r.z());
      const Eigen::MatrixXcd tw = localize_op(space, x);
      if (tw.rows() > 0) {
        const RegularOp rw = RegularOp::from_bounded(AdjointableOp::from_complex_matrix(tw));
        zt.record((z_then_local - rw.z().blocks()[0]).norm());
      } else {
        zt.record(0.0);
      }
      adj.record((localize_op(space, x.adjoint()) - localize_op(space, x).adjoint()).norm());
      gram.record((localize_op(space, x.adjoint() * x) - tw.adjoint() * tw).norm());
      mult.record((localize_op(space, x * y) - localize_op(space, x) * localize_op(space, y))
                      .norm());
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(tw);
      const double local_norm = tw.rows() > 0 ? svd.singularValues()(0) : 0.0;
      contraction.record(std::max(0.0, local_norm - x.norm()));
    }

    {
      // A faithful density separates distinct operators at full strength.
      const LocalizedSpace faithful = localize(d, smp.full_rank_density(d.algebra()));
      const double full = (x - y).norm();
      const double seen = blk::opnorm(localize_op(faithful, x) - localize_op(faithful, y));
      separating.record(std::max(0.0, full - seen));
    }

    {
      const ModuleVector v = smp.vector(d), w = smp.vector(d);
      pairing.record(norm(inner_product(x.apply(v), w) - inner_product(v, x.adjoint().apply(w))));
      positivity.record(flag_residual(is_positive(inner_product(v, v))));
      theta_aff.record((x * theta(v, w) - theta(x.apply(v), w)).norm());
    }

    {
      const AdjointableOp nrm = smp.normal(d);
      const RegularOp rn = RegularOp::from_bounded(nrm);
      const LocalizedSpace faithful = localize(d, smp.full_rank_density(d.algebra()));
      const Eigen::MatrixXcd tw = localize_op(faithful, nrm);
      const RegularOp rw = RegularOp::from_bounded(AdjointableOp::from_complex_matrix(tw));
      const Eigen::MatrixXcd lhs =
          localize_op(faithful, apply_function(functions::exp(), rn, sets::whole_plane()).bounded());
      const Eigen::MatrixXcd rhs =
          apply_function(functions::exp(), rw, sets::whole_plane()).bounded().blocks()[0];
      local_calc.record((lhs - rhs).norm());
    }
  }
  return {zt, adj, gram, mult, contraction, separating, pairing, positivity, theta_aff,
          local_calc};
}

std::vector<PropertyRecord> suite_unbounded_oracle(int trials, std::uint64_t seed) {
  PropertyRecord decisions{"decisions",
                           "f invertible <=> f(x) != 0 on X; boundedness from growth", 0.5};
  PropertyRecord intersection{"intersection", "D(pi(f) pi(g)) = D(pi(g)) n D(pi(f g))", 0.5};
  PropertyRecord domination{"domination", "|f| <= r |g| outside a compact => D(g) in D(f)", 0.5};
  PropertyRecord strict_conv{"strict-convergence", "pi(f e_k) v -> pi(f) v monotonically", 0.0};
  PropertyRecord regression{"regression", "1/(n+1) is invertible but not adjointable invertible",
                            0.5};
  PropertyRecord oracle_z{"oracle-zmap", "diagonal window agrees with z_T = T (1+T*T)^{-1/2}",
                          1e-10};
  PropertyRecord oracle_exp{"oracle-expneg", "diagonal window agrees with exp(-t)", 1e-10};
  // Random symbols whose window values converge or diverge eventually pack
  // spectral gaps below the 1e-8 merge rule in disc coordinates, which
  // caps the reachable accuracy; hence the looser gate here.
  PropertyRecord oracle_rand{"oracle-random", "diagonal windows agree for random symbols", 1e-7};
  PropertyRecord compat{"compatible", "G compatible with f <=> f(X) in G", 0.5};

  const int window = 10000;
  for (int t = 0; t < trials; ++t) {
    Sampler smp(Rng::stream(seed, t));
    const RationalSymbol f = smp.symbol();

    {
      bool ok = is_c0(f) == measured_c0(f, window);
      ok = ok && is_bounded(f) == measured_bounded(f, window);
      ok = ok && invertible_symbol(f) == measured_invertible(f, window);
      ok = ok && adjointable_invertible_symbol(f) == measured_adjointable_invertible(f, window);

      // Compatibility decision against a measured value: puncturing the
      // plane at a point the window actually hits must come back
      // incompatible (f - lambda picks up an exact integer zero there).
      if (!f.is_zero()) {
        const C hit = f.eval(smp.rng.uniform_int(0, 8));
        const CompatibleSet punctured{"punctured",
                                      [hit](C c) { return std::abs(c - hit) > 1e-10; },
                                      {hit},
                                      true};
        ok = ok && !compatible_symbol(punctured, f);
      }
      decisions.record(flag_residual(ok));
    }

    {
      const RationalSymbol g = smp.symbol();
      // c0 candidates: c = 1/(n+1)^j.
      const Polynomial lin({1.0, 1.0});
      Polynomial den = Polynomial::constant(1.0);
      bool ok = true;
      for (int j = 1; j <= 3; ++j) {
        den = den * lin;
        const RationalSymbol c(Polynomial::constant(1.0), den);
        const bool lhs = is_c0(c) && is_c0(g * c) && is_c0(f * (g * c));
        const bool rhs = is_c0(c) && is_c0(g * c) && is_c0((f * g) * c);
        ok = ok && lhs == rhs;
      }
      intersection.record(flag_residual(ok));

      // Domination: growth(f) <= growth(g), confirmed by a window check of
      // |f| <= r |g| past both dominance bounds, puts D(g) inside D(f).
      if (!f.is_zero() && !g.is_zero()) {
        const RationalSymbol& lo = f.growth() <= g.growth() ? f : g;
        const RationalSymbol& hi = f.growth() <= g.growth() ? g : f;
        const int start = std::max({lo.num().dominance_bound(), lo.den().dominance_bound(),
                                    hi.num().dominance_bound(), hi.den().dominance_bound(), 8});
        double ratio = 0.0;
        bool finite = true;
        for (int n = start; n <= start + 64; ++n) {
          const double gv = std::abs(hi.eval(n));
          if (gv == 0.0) {
            finite = false;
            break;
          }
          ratio = std::max(ratio, std::abs(lo.eval(n)) / gv);
        }
        bool dom_ok = true;
        if (finite && std::isfinite(ratio)) {
          den = Polynomial::constant(1.0);
          for (int j = 1; j <= 4; ++j) {
            den = den * lin;
            const RationalSymbol c(Polynomial::constant(1.0), den);
            if (is_c0(hi * c) && !is_c0(lo * c)) dom_ok = false;
          }
        }
        domination.record(flag_residual(dom_ok));
      } else {
        domination.record(0.0);
      }
    }

    {
      // Truncation net surrogate: tail sup errors are monotone in k.
      const Polynomial lin({1.0, 1.0});
      const RationalSymbol v(Polynomial::constant(1.0),
                             lin * lin * lin * lin);  // 1/(n+1)^4, in D(f) for deg <= 3
      double residual = 0.0;
      for (const int n : {64, 128, 256, 512, 1024}) {
        double prev = 1e300;
        for (const int k : {n / 16, n / 8, n / 4, n / 2}) {
          double err = 0.0;
          for (int i = k + 1; i <= n; ++i) err = std::max(err, std::abs((f * v).eval(i)));
          residual = std::max(residual, err - prev);
          prev = err;
        }
      }
      strict_conv.record(residual);
    }

    if (t == 0) {
      const RationalSymbol inv_decay(Polynomial::constant(1.0), Polynomial({1.0, 1.0}));
      bool ok = invertible_symbol(inv_decay) && !adjointable_invertible_symbol(inv_decay);
      ok = ok && adjointable_invertible_symbol(invert_symbol(inv_decay));
      regression.record(flag_residual(ok));

      const WindowConfig cfg{64, "leading-monomial-dominance"};
      const RationalSymbol nvar = RationalSymbol::variable();
      const OracleReport rz =
          oracle_compare(nvar, functions::zmap(), sets::whole_plane(), cfg);
      oracle_z.record(std::max(rz.max_residual, rz.offdiagonal_residual));
      ScalarFunction expneg{"exp(-t)", [](C c) { return std::exp(-c); }};
      const OracleReport re = oracle_compare(nvar, expneg, sets::whole_plane(), cfg);
      oracle_exp.record(std::max(re.max_residual, re.offdiagonal_residual));

      // Fixed compatibility examples.
      const RationalSymbol decay = inv_decay;
      CompatibleSet halfopen{"(0,1] u {0}",
                             [](C c) {
                               return std::abs(c.imag()) <= 1e-10 && c.real() > 0.0 &&
                                      c.real() <= 1.0;
                             },
                             {C(0.0)},
                             true};
      bool cok = compatible_symbol(halfopen, decay);
      cok = cok && compatible_symbol(sets::whole_plane(), nvar);
      CompatibleSet punctured{"C\\{5}", [](C c) { return std::abs(c - C(5.0)) > 1e-10; },
                              {C(5.0)}, true};
      cok = cok && !compatible_symbol(punctured, nvar);
      compat.record(flag_residual(cok));
    } else {
      // Window agreement for random compatible symbols. Values past the
      // z-representation ceiling sqrt(1/kEigFloor) would sit at the
      // designed singularity surface, so those draws are skipped.
      const WindowConfig cfg{64, "leading-monomial-dominance"};
      double peak = 0.0;
      for (int n = 0; n <= cfg.window_size; ++n) peak = std::max(peak, std::abs(f.eval(n)));
      if (peak < 1e5 && compatible_symbol(sets::whole_plane(), f)) {
        const OracleReport r = oracle_compare(f, functions::zmap(), sets::whole_plane(), cfg);
        oracle_rand.record(std::max(r.max_residual, r.offdiagonal_residual));
        if (!r.domains_agree) decisions.record(1.0);
      }
    }
  }
  return {decisions,  intersection, domination, strict_conv, regression,
          oracle_z,   oracle_exp,   oracle_rand, compat};
}

using SuiteFn = std::vector<PropertyRecord> (*)(int, std::uint64_t);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"ztransform", suite_ztransform},   {"calculus", suite_calculus},
      {"powers", suite_powers},           {"fuglede_putnam", suite_fuglede_putnam},
      {"commuting", suite_commuting},     {"tensor", suite_tensor},
      {"localization", suite_localization}, {"unbounded_oracle", suite_unbounded_oracle},
  };
  return table;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : suite_table()) names.push_back(name);
  names.push_back("all");
  return names;
}

VerificationReport run_verification_suite(const std::string& name, int trials,
                                          std::uint64_t seed) {
  VerificationReport report;
  report.suite = name;
  report.seed = seed;
  report.trials = trials;

  if (name == "all") {
    for (const auto& [sname, fn] : suite_table()) {
      auto props = fn(trials, seed);
      for (auto& p : props) {
        p.name = sname + "." + p.name;
        report.passed = report.passed && p.passed;
        report.properties.push_back(std::move(p));
      }
    }
    return report;
  }
  for (const auto& [sname, fn] : suite_table()) {
    if (sname == name) {
      report.properties = fn(trials, seed);
      for (const auto& p : report.properties) report.passed = report.passed && p.passed;
      return report;
    }
  }
  throw UnknownSuite("unknown suite '" + name + "'");
}

std::string VerificationReport::to_json() const {
  std::string out = "{\"suite\":" + json::quote(suite) + ",\"seed\":" + std::to_string(seed) +
                    ",\"trials\":" + std::to_string(trials) +
                    ",\"passed\":" + (passed ? "true" : "false");
  if (trials == 0) out += ",\"note\":\"no trials\"";
  out += ",\"properties\":[";
  for (size_t i = 0; i < properties.size(); ++i) {
    const auto& p = properties[i];
    if (i) out += ",";
    out += "{\"name\":" + json::quote(p.name) + ",\"anchor\":" + json::quote(p.anchor) +
           ",\"tolerance\":" + json::fmt_double(p.tolerance) +
           ",\"trials\":" + std::to_string(p.residuals.size()) +
           ",\"max_error\":" + json::fmt_double(p.max_error) +
           ",\"passed\":" + (p.passed ? "true" : "false") + "}";
  }
  return out + "]}";
}

std::string VerificationReport::to_csv() const {
  std::string out = "trial,property,residual,tolerance,passed\n";
  for (const auto& p : properties)
    for (size_t i = 0; i < p.residuals.size(); ++i)
      out += std::to_string(i) + "," + p.name + "," + json::fmt_double(p.residuals[i]) + "," +
             json::fmt_double(p.tolerance) + "," +
             (p.residuals[i] <= p.tolerance ? "true" : "false") + "\n";
  return out;
}

}  // namespace opmod
