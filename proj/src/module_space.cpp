// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "opmod/module_space.hpp"

namespace opmod {

ModuleDescriptor::ModuleDescriptor(AlgebraDescriptor algebra, int rank)
    : algebra_(std::move(algebra)), rank_(rank) {
  if (rank_ < 1) throw Error("ModuleDescriptor: rank must be >= 1");
}

ModuleVector::ModuleVector(ModuleDescriptor desc, std::vector<Eigen::MatrixXcd> blocks)
    : desc_(std::move(desc)), blocks_(std::move(blocks)) {
  const auto& alg = desc_.algebra();
  if (static_cast<int>(blocks_.size()) != alg.blocks()) throw DescriptorMismatch();
  for (int k = 0; k < alg.blocks(); ++k)
    if (blocks_[k].rows() != desc_.rank() * alg.dim(k) || blocks_[k].cols() != alg.dim(k))
      throw DescriptorMismatch("vector block shape mismatch");
}

ModuleVector ModuleVector::zero(const ModuleDescriptor& d) {
  std::vector<Eigen::MatrixXcd> blocks;
  for (int k = 0; k < d.algebra().blocks(); ++k)
    blocks.push_back(Eigen::MatrixXcd::Zero(d.rank() * d.algebra().dim(k), d.algebra().dim(k)));
  return ModuleVector(d, std::move(blocks));
}

ModuleVector ModuleVector::basis(const ModuleDescriptor& d, int i) {
  std::vector<Eigen::MatrixXcd> blocks;
  for (int k = 0; k < d.algebra().blocks(); ++k) {
    const int dim = d.algebra().dim(k);
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(d.rank() * dim, dim);
    b.middleRows(i * dim, dim) = Eigen::MatrixXcd::Identity(dim, dim);
    blocks.push_back(std::move(b));
  }
  return ModuleVector(d, std::move(blocks));
}

ModuleVector ModuleVector::from_coords(const ModuleDescriptor& d,
                                       const std::vector<AlgebraElement>& coords) {
  if (static_cast<int>(coords.size()) != d.rank()) throw DescriptorMismatch();
  std::vector<Eigen::MatrixXcd> blocks;
  for (int k = 0; k < d.algebra().blocks(); ++k) {
    const int dim = d.algebra().dim(k);
    Eigen::MatrixXcd b(d.rank() * dim, dim);
    for (int i = 0; i < d.rank(); ++i) {
      if (coords[i].descriptor() != d.algebra()) throw DescriptorMismatch();
      b.middleRows(i * dim, dim) = coords[i].block(k);
    }
    blocks.push_back(std::move(b));
  }
  return ModuleVector(d, std::move(blocks));
}

AlgebraElement ModuleVector::coord(int i) const {
  std::vector<Eigen::MatrixXcd> blocks;
  for (int k = 0; k < desc_.algebra().blocks(); ++k) {
    const int dim = desc_.algebra().dim(k);
    blocks.push_back(blocks_[k].middleRows(i * dim, dim));
  }
  return AlgebraElement(desc_.algebra(), std::move(blocks));
}

ModuleVector ModuleVector::operator+(const ModuleVector& o) const {
  if (desc_ != o.desc_) throw DescriptorMismatch();
  return ModuleVector(desc_, blk::add(blocks_, o.blocks_));
}

ModuleVector ModuleVector::operator-(const ModuleVector& o) const {
  if (desc_ != o.desc_) throw DescriptorMismatch();
  return ModuleVector(desc_, blk::sub(blocks_, o.blocks_));
}

ModuleVector ModuleVector::operator*(std::complex<double> c) const {
  return ModuleVector(desc_, blk::scale(blocks_, c));
}

ModuleVector ModuleVector::acted_by(const AlgebraElement& a) const {
  if (a.descriptor() != desc_.algebra()) throw DescriptorMismatch();
  std::vector<Eigen::MatrixXcd> blocks;
  for (size_t k = 0; k < blocks_.size(); ++k) blocks.push_back(blocks_[k] * a.block(k));
  return ModuleVector(desc_, std::move(blocks));
}

double ModuleVector::norm() const { return blk::opnorm(blocks_); }

AlgebraElement inner_product(const ModuleVector& v, const ModuleVector& w) {
  if (v.descriptor() != w.descriptor()) throw DescriptorMismatch();
  std::vector<Eigen::MatrixXcd> blocks;
  for (size_t k = 0; k < v.blocks().size(); ++k)
    blocks.push_back(w.blocks()[k].adjoint() * v.blocks()[k]);
  return AlgebraElement(v.descriptor().algebra(), std::move(blocks));
}

AdjointableOp::AdjointableOp(ModuleDescriptor domain, ModuleDescriptor codomain,
                             std::vector<Eigen::MatrixXcd> blocks)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), blocks_(std::move(blocks)) {
  if (domain_.algebra() != codomain_.algebra())
    throw DescriptorMismatch("domain and codomain must share the algebra");
  const auto& alg = domain_.algebra();
  if (static_cast<int>(blocks_.size()) != alg.blocks()) throw DescriptorMismatch();
  for (int k = 0; k < alg.blocks(); ++k)
    if (blocks_[k].rows() != codomain_.rank() * alg.dim(k) ||
        blocks_[k].cols() != domain_.rank() * alg.dim(k))
      throw DescriptorMismatch("operator block shape mismatch");
}

AdjointableOp AdjointableOp::zero(const ModuleDescriptor& dom, const ModuleDescriptor& cod) {
  std::vector<Eigen::MatrixXcd> blocks;
  for (int k = 0; k < dom.algebra().blocks(); ++k) {
    const int d = dom.algebra().dim(k);
    blocks.push_back(Eigen::MatrixXcd::Zero(cod.rank() * d, dom.rank() * d));
  }
  return AdjointableOp(dom, cod, std::move(blocks));
}

AdjointableOp AdjointableOp::identity(const ModuleDescriptor& d) {
  std::vector<Eigen::MatrixXcd> blocks;
  for (int k = 0; k < d.algebra().blocks(); ++k) {
    const int n = d.rank() * d.algebra().dim(k);
    blocks.push_back(Eigen::MatrixXcd::Identity(n, n));
  }
  return AdjointableOp(d, d, std::move(blocks));
}

AdjointableOp AdjointableOp::scalar(const ModuleDescriptor& d, std::complex<double> c) {
  return identity(d) * c;
}

AdjointableOp AdjointableOp::from_complex_matrix(const Eigen::MatrixXcd& m) {
  ModuleDescriptor dom(AlgebraDescriptor::scalar(), static_cast<int>(m.cols()));
  ModuleDescriptor cod(AlgebraDescriptor::scalar(), static_cast<int>(m.rows()));
  return AdjointableOp(dom, cod, {m});
}

AdjointableOp AdjointableOp::from_entries(const ModuleDescriptor& dom, const ModuleDescriptor& cod,
                                          const std::vector<std::vector<AlgebraElement>>& entries) {
  const auto& alg = dom.algebra();
  std::vector<Eigen::MatrixXcd> blocks;
  for (int k = 0; k < alg.blocks(); ++k) {
    const int d = alg.dim(k);
    Eigen::MatrixXcd b(cod.rank() * d, dom.rank() * d);
    for (int i = 0; i < cod.rank(); ++i)
      for (int j = 0; j < dom.rank(); ++j) {
        if (entries[i][j].descriptor() != alg) throw DescriptorMismatch();
        b.block(i * d, j * d, d, d) = entries[i][j].block(k);
      }
    blocks.push_back(std::move(b));
  }
  return AdjointableOp(dom, cod, std::move(blocks));
}

AlgebraElement AdjointableOp::entry(int i, int j) const {
  const auto& alg = domain_.algebra();
  std::vector<Eigen::MatrixXcd> blocks;
  for (int k = 0; k < alg.blocks(); ++k) {
    const int d = alg.dim(k);
    blocks.push_back(blocks_[k].block(i * d, j * d, d, d));
  }
  return AlgebraElement(alg, std::move(blocks));
}

ModuleVector AdjointableOp::apply(const ModuleVector& v) const {
  if (v.descriptor() != domain_) throw DescriptorMismatch();
  std::vector<Eigen::MatrixXcd> blocks;
  for (size_t k = 0; k < blocks_.size(); ++k) blocks.push_back(blocks_[k] * v.blocks()[k]);
  return ModuleVector(codomain_, std::move(blocks));
}

AdjointableOp AdjointableOp::adjoint() const {
  return AdjointableOp(codomain_, domain_, blk::adjoint(blocks_));
}

AdjointableOp AdjointableOp::operator*(const AdjointableOp& o) const {
  if (o.codomain_ != domain_) throw DescriptorMismatch("composition domain mismatch");
  return AdjointableOp(o.domain_, codomain_, blk::mul(blocks_, o.blocks_));
}

AdjointableOp AdjointableOp::operator+(const AdjointableOp& o) const {
  if (domain_ != o.domain_ || codomain_ != o.codomain_) throw DescriptorMismatch();
  return AdjointableOp(domain_, codomain_, blk::add(blocks_, o.blocks_));
}

AdjointableOp AdjointableOp::operator-(const AdjointableOp& o) const {
  if (domain_ != o.domain_ || codomain_ != o.codomain_) throw DescriptorMismatch();
  return AdjointableOp(domain_, codomain_, blk::sub(blocks_, o.blocks_));
}

AdjointableOp AdjointableOp::operator*(std::complex<double> c) const {
  return AdjointableOp(domain_, codomain_, blk::scale(blocks_, c));
}

AdjointableOp theta(const ModuleVector& v, const ModuleVector& w) {
  if (v.descriptor() != w.descriptor()) throw DescriptorMismatch();
  std::vector<Eigen::MatrixXcd> blocks;
  for (size_t k = 0; k < v.blocks().size(); ++k)
    blocks.push_back(v.blocks()[k] * w.blocks()[k].adjoint());
  return AdjointableOp(v.descriptor(), v.descriptor(), std::move(blocks));
}

AdjointableOp op_adjoint(const AdjointableOp& x) { return x.adjoint(); }

OpEigensystem op_eigensystem(const AdjointableOp& x, double tol) {
  if (!x.endo()) throw DescriptorMismatch("eigensystem needs an endomorphism");
  blk::Eigensystem es = blk::eigensystem(x.blocks(), tol);
  OpEigensystem out;
  out.eigenvalues = es.eigenvalues;
  for (auto& p : es.projections)
    out.projections.emplace_back(x.domain(), x.codomain(), std::move(p));
  return out;
}

int flat_dim(const ModuleDescriptor& d) {
  int n = 0;
  for (int k = 0; k < d.algebra().blocks(); ++k) {
    const int dim = d.algebra().dim(k);
    n += d.rank() * dim * dim;
  }
  return n;
}

Eigen::VectorXcd flatten(const ModuleVector& v) {
  Eigen::VectorXcd out(flat_dim(v.descriptor()));
  int off = 0;
  for (const auto& b : v.blocks()) {
    for (int c = 0; c < b.cols(); ++c) {
      out.segment(off, b.rows()) = b.col(c);
      off += static_cast<int>(b.rows());
    }
  }
  return out;
}

Eigen::MatrixXcd flatten_op(const AdjointableOp& x) {
  const int rows = flat_dim(x.codomain()), cols = flat_dim(x.domain());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rows, cols);
  int roff = 0, coff = 0;
  for (size_t k = 0; k < x.blocks().size(); ++k) {
    const auto& b = x.blocks()[k];
    const int d = x.domain().algebra().dim(static_cast<int>(k));
    for (int c = 0; c < d; ++c)
      out.block(roff + c * b.rows(), coff + c * b.cols(), b.rows(), b.cols()) = b;
    roff += d * static_cast<int>(b.rows());
    coff += d * static_cast<int>(b.cols());
  }
  return out;
}

LocalizedSpace localize(const ModuleDescriptor& d, const AlgebraElement& rho, double tol) {
  if (rho.descriptor() != d.algebra()) throw DescriptorMismatch();
  if (!is_positive(rho, tol)) throw NotPositiveFunctional("density element is not positive");

  // Gram form in the flattened basis: block k contributes rho_k^T (x) I_{p d_k}.
  const int D = flat_dim(d);
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(D, D);
  int off = 0;
  for (int k = 0; k < d.algebra().blocks(); ++k) {
    const int dim = d.algebra().dim(k);
    const int stride = d.rank() * dim;
    const Eigen::MatrixXcd rt = rho.block(k).transpose();
    for (int c1 = 0; c1 < dim; ++c1)
      for (int c2 = 0; c2 < dim; ++c2)
        if (rt(c1, c2) != std::complex<double>(0.0))
          gram.block(off + c1 * stride, off + c2 * stride, stride, stride) =
              rt(c1, c2) * Eigen::MatrixXcd::Identity(stride, stride);
    off += dim * stride;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
  const double lmax = es.eigenvalues().size() ? es.eigenvalues()(D - 1) : 0.0;
  const double cutoff = 1e-12 * std::max(lmax, 0.0);

  std::vector<int> kept;
  for (int i = 0; i < D; ++i)
    if (es.eigenvalues()(i) > cutoff && es.eigenvalues()(i) > 0.0) kept.push_back(i);

  const int m = static_cast<int>(kept.size());
  Eigen::MatrixXcd root(m, D), pinv(D, m);
  for (int r = 0; r < m; ++r) {
    const double s = std::sqrt(es.eigenvalues()(kept[r]));
    root.row(r) = s * es.eigenvectors().col(kept[r]).adjoint();
    pinv.col(r) = es.eigenvectors().col(kept[r]) / s;
  }
  return LocalizedSpace(d, m, std::move(root), std::move(pinv));
}

Eigen::VectorXcd localize_vector(const LocalizedSpace& s, const ModuleVector& v) {
  if (v.descriptor() != s.module()) throw DescriptorMismatch();
  return s.gram_root() * flatten(v);
}

Eigen::MatrixXcd localize_op(const LocalizedSpace& s, const AdjointableOp& x) {
  if (!x.endo() || x.domain() != s.module()) throw DescriptorMismatch();
  return s.gram_root() * flatten_op(x) * s.gram_root_pinv();
}

}  // namespace opmod
