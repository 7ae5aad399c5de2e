// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "opmod/algebra.hpp"

#include <algorithm>
#include <numeric>

namespace opmod {

namespace blk {

double opnorm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

double opnorm(const MatList& m) {
  double n = 0.0;
  for (const auto& b : m) n = std::max(n, opnorm(b));
  return n;
}

MatList adjoint(const MatList& m) {
  MatList out;
  out.reserve(m.size());
  for (const auto& b : m) out.push_back(b.adjoint());
  return out;
}

MatList mul(const MatList& a, const MatList& b) {
  MatList out;
  out.reserve(a.size());
  for (size_t k = 0; k < a.size(); ++k) out.push_back(a[k] * b[k]);
  return out;
}

MatList add(const MatList& a, const MatList& b) {
  MatList out;
  out.reserve(a.size());
  for (size_t k = 0; k < a.size(); ++k) out.push_back(a[k] + b[k]);
  return out;
}

MatList sub(const MatList& a, const MatList& b) {
  MatList out;
  out.reserve(a.size());
  for (size_t k = 0; k < a.size(); ++k) out.push_back(a[k] - b[k]);
  return out;
}

MatList scale(const MatList& a, std::complex<double> c) {
  MatList out;
  out.reserve(a.size());
  for (const auto& b : a) out.push_back(c * b);
  return out;
}

bool is_hermitian(const MatList& m, double tol) {
  for (const auto& b : m)
    if ((b - b.adjoint()).norm() > tol * std::max(1.0, b.norm())) return false;
  return true;
}

bool is_normal(const MatList& m, double tol) {
  return opnorm(sub(mul(m, adjoint(m)), mul(adjoint(m), m))) <= tol;
}

MatList hermitian_apply(const MatList& m, const std::function<std::complex<double>(double)>& f,
                        bool require_floor) {
  MatList out;
  out.reserve(m.size());
  for (const auto& b : m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b);
    Eigen::VectorXcd fd(b.rows());
    for (int i = 0; i < b.rows(); ++i) {
      const double lam = es.eigenvalues()(i);
      if (require_floor && lam < kEigFloor)
        throw UnboundedOperator("eigenvalue " + std::to_string(lam) + " below floor");
      fd(i) = f(lam);
    }
    out.push_back(es.eigenvectors() * fd.asDiagonal() * es.eigenvectors().adjoint());
  }
  return out;
}

namespace {

// Greedy clustering of eigenvalues by absolute distance.
std::vector<int> cluster(const std::vector<std::complex<double>>& vals, double merge_tol,
                         std::vector<std::complex<double>>& reps) {
  std::vector<int> assign(vals.size(), -1);
  for (size_t i = 0; i < vals.size(); ++i) {
    for (size_t r = 0; r < reps.size(); ++r) {
      if (std::abs(vals[i] - reps[r]) <= merge_tol) {
        assign[i] = static_cast<int>(r);
        break;
      }
    }
    if (assign[i] < 0) {
      reps.push_back(vals[i]);
      assign[i] = static_cast<int>(reps.size()) - 1;
    }
  }
  return assign;
}

}  // namespace

// Unitary diagonalization of one normal matrix: columns of U, and the
// eigenvalue attached to each column.
void diagonalize_normal(const Eigen::MatrixXcd& b, double merge_tol, Eigen::MatrixXcd& U,
                        Eigen::VectorXcd& lam) {
  const int n = static_cast<int>(b.rows());
  const Eigen::MatrixXcd h = 0.5 * (b + b.adjoint());
  const Eigen::MatrixXcd k = (b - b.adjoint()) / std::complex<double>(0.0, 2.0);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hs(h);
  U = hs.eigenvectors();
  lam.resize(n);

  // Group the h-eigenvalues, then diagonalize k restricted to each group.
  // Eigenvalues are reported as alpha + i beta straight from the two
  // selfadjoint solves; a Rayleigh re-evaluation would only add noise.
  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n && hs.eigenvalues()(end) - hs.eigenvalues()(end - 1) <= merge_tol) ++end;
    const int len = end - start;
    double alpha = 0.0;
    for (int i = start; i < end; ++i) alpha += hs.eigenvalues()(i);
    alpha /= len;
    Eigen::MatrixXcd Q = U.middleCols(start, len);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ks(Eigen::MatrixXcd(Q.adjoint() * k * Q));
    U.middleCols(start, len) = Q * ks.eigenvectors();
    for (int j = 0; j < len; ++j)
      lam(start + j) = std::complex<double>(alpha, ks.eigenvalues()(j));
    start = end;
  }
}

Eigensystem eigensystem(const MatList& m, double tol, double merge_tol) {
  if (!is_normal(m, std::max(tol, 10 * kDefaultTol) * std::max(1.0, opnorm(m))))
    throw NotNormal("element is not normal within tolerance");

  struct Column {
    int block;
    Eigen::VectorXcd vec;
    std::complex<double> lam;
  };
  std::vector<Column> cols;
  std::vector<std::complex<double>> vals;
  for (size_t k = 0; k < m.size(); ++k) {
    if (m[k].rows() == 0) continue;
    Eigen::MatrixXcd U;
    Eigen::VectorXcd lam;
    if (is_hermitian({m[k]}, 1e-13 * std::max(1.0, m[k].norm()))) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m[k]);
      U = es.eigenvectors();
      lam = es.eigenvalues().cast<std::complex<double>>();
    } else {
      diagonalize_normal(m[k], merge_tol, U, lam);
    }
    for (int i = 0; i < U.cols(); ++i) {
      cols.push_back({static_cast<int>(k), U.col(i), lam(i)});
      vals.push_back(lam(i));
    }
  }

  std::vector<std::complex<double>> reps;
  const std::vector<int> assign = cluster(vals, merge_tol, reps);

  // Deterministic order: sort representatives lexicographically by (re, im).
  std::vector<int> order(reps.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (reps[a].real() != reps[b].real()) return reps[a].real() < reps[b].real();
    return reps[a].imag() < reps[b].imag();
  });
  std::vector<int> rank(reps.size());
  for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);

  Eigensystem es;
  es.eigenvalues.resize(reps.size());
  es.projections.assign(reps.size(), MatList());
  for (size_t r = 0; r < reps.size(); ++r) {
    es.eigenvalues[rank[r]] = reps[r];
    MatList proj;
    for (const auto& b : m) proj.push_back(Eigen::MatrixXcd::Zero(b.rows(), b.cols()));
    es.projections[rank[r]] = std::move(proj);
  }
  for (size_t i = 0; i < cols.size(); ++i) {
    const int r = rank[assign[i]];
    es.projections[r][cols[i].block] += cols[i].vec * cols[i].vec.adjoint();
  }
  return es;
}

MatList eig_apply(const Eigensystem& es,
                  const std::function<std::complex<double>(std::complex<double>)>& f) {
  MatList out;
  for (const auto& b : es.projections.at(0)) out.push_back(Eigen::MatrixXcd::Zero(b.rows(), b.cols()));
  for (size_t i = 0; i < es.eigenvalues.size(); ++i) {
    const std::complex<double> fi = f(es.eigenvalues[i]);
    for (size_t k = 0; k < out.size(); ++k) out[k] += fi * es.projections[i][k];
  }
  return out;
}

bool full_rank(const MatList& m) {
  for (const auto& b : m) {
    if (b.rows() != b.cols()) return false;
    if (b.rows() == 0) continue;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) < kRankRelTol * sv(0)) return false;
    if (sv(0) == 0.0) return false;
  }
  return true;
}

}  // namespace blk

AlgebraDescriptor::AlgebraDescriptor(std::vector<int> block_dims)
    : block_dims_(std::move(block_dims)) {
  if (block_dims_.empty()) throw Error("AlgebraDescriptor: block list must be non-empty");
  for (int d : block_dims_) {
    if (d < 1) throw Error("AlgebraDescriptor: block dims must be positive");
    if (d != 1) commutative_ = false;
  }
}

int AlgebraDescriptor::total_dim() const {
  int t = 0;
  for (int d : block_dims_) t += d * d;
  return t;
}

AlgebraElement::AlgebraElement(AlgebraDescriptor desc, std::vector<Eigen::MatrixXcd> blocks)
    : desc_(std::move(desc)), blocks_(std::move(blocks)) {
  if (static_cast<int>(blocks_.size()) != desc_.blocks())
    throw DescriptorMismatch("block count does not match descriptor");
  for (int k = 0; k < desc_.blocks(); ++k)
    if (blocks_[k].rows() != desc_.dim(k) || blocks_[k].cols() != desc_.dim(k))
      throw DescriptorMismatch("block shape does not match descriptor");
}

AlgebraElement AlgebraElement::zero(const AlgebraDescriptor& d) {
  std::vector<Eigen::MatrixXcd> blocks;
  for (int k = 0; k < d.blocks(); ++k) blocks.push_back(Eigen::MatrixXcd::Zero(d.dim(k), d.dim(k)));
  return AlgebraElement(d, std::move(blocks));
}

AlgebraElement AlgebraElement::identity(const AlgebraDescriptor& d) {
  std::vector<Eigen::MatrixXcd> blocks;
  for (int k = 0; k < d.blocks(); ++k)
    blocks.push_back(Eigen::MatrixXcd::Identity(d.dim(k), d.dim(k)));
  return AlgebraElement(d, std::move(blocks));
}

AlgebraElement AlgebraElement::scalar(const AlgebraDescriptor& d, std::complex<double> c) {
  return identity(d) * c;
}

AlgebraElement AlgebraElement::diagonal(const AlgebraDescriptor& d,
                                        const std::vector<std::complex<double>>& values) {
  if (!d.commutative() || static_cast<size_t>(d.blocks()) != values.size())
    throw DescriptorMismatch("diagonal element needs a commutative descriptor of matching size");
  std::vector<Eigen::MatrixXcd> blocks;
  for (size_t k = 0; k < values.size(); ++k) {
    Eigen::MatrixXcd b(1, 1);
    b(0, 0) = values[k];
    blocks.push_back(b);
  }
  return AlgebraElement(d, std::move(blocks));
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  if (desc_ != o.desc_) throw DescriptorMismatch();
  return AlgebraElement(desc_, blk::add(blocks_, o.blocks_));
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  if (desc_ != o.desc_) throw DescriptorMismatch();
  return AlgebraElement(desc_, blk::sub(blocks_, o.blocks_));
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
  if (desc_ != o.desc_) throw DescriptorMismatch();
  return AlgebraElement(desc_, blk::mul(blocks_, o.blocks_));
}

AlgebraElement AlgebraElement::operator*(std::complex<double> c) const {
  return AlgebraElement(desc_, blk::scale(blocks_, c));
}

bool AlgebraElement::is_zero(double tol) const { return norm(*this) <= tol; }

AlgebraElement star(const AlgebraElement& a) {
  return AlgebraElement(a.descriptor(), blk::adjoint(a.blocks()));
}

double norm(const AlgebraElement& a) { return blk::opnorm(a.blocks()); }

bool is_positive(const AlgebraElement& a, double tol) {
  const double scale = std::max(1.0, norm(a));
  if (!blk::is_hermitian(a.blocks(), tol * scale)) return false;
  for (const auto& b : a.blocks()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        Eigen::MatrixXcd(0.5 * (b + b.adjoint())));
    if (es.eigenvalues().size() > 0 && es.eigenvalues()(0) < -tol * scale) return false;
  }
  return true;
}

NormalEigensystem normal_eigensystem(const AlgebraElement& a, double tol) {
  blk::Eigensystem es = blk::eigensystem(a.blocks(), tol);
  NormalEigensystem out;
  out.eigenvalues = es.eigenvalues;
  for (auto& p : es.projections) out.projections.emplace_back(a.descriptor(), std::move(p));
  return out;
}

AlgebraElement apply_scalar_function(const AlgebraElement& a, const ScalarFunction& f,
                                     double tol) {
  blk::Eigensystem es = blk::eigensystem(a.blocks(), tol);
  for (const auto& lam : es.eigenvalues)
    if (!f.defined(lam))
      throw FunctionUndefinedAtSpectrum(f.name + " undefined at spectral point (" +
                                        std::to_string(lam.real()) + "," +
                                        std::to_string(lam.imag()) + ")");
  return AlgebraElement(a.descriptor(), blk::eig_apply(es, f.eval));
}

std::vector<AlgebraElement> approximate_unit(const AlgebraDescriptor& d) {
  return {AlgebraElement::identity(d)};
}

}  // namespace opmod
