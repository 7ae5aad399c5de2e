// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "opmod/tensor.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace opmod {

AlgebraDescriptor tensor_algebra(const AlgebraDescriptor& a, const AlgebraDescriptor& b) {
  std::vector<int> dims;
  for (int k = 0; k < a.blocks(); ++k)
    for (int l = 0; l < b.blocks(); ++l) dims.push_back(a.dim(k) * b.dim(l));
  return AlgebraDescriptor(std::move(dims));
}

TensorModule tensor_module(const ModuleDescriptor& e, const ModuleDescriptor& f) {
  ModuleDescriptor combined(tensor_algebra(e.algebra(), f.algebra()), e.rank() * f.rank());
  return {e, f, std::move(combined)};
}

namespace {

blk::MatList kron_blocks(const blk::MatList& a, const blk::MatList& b) {
  blk::MatList out;
  out.reserve(a.size() * b.size());
  for (const auto& ba : a)
    for (const auto& bb : b) out.push_back(Eigen::kroneckerProduct(ba, bb).eval());
  return out;
}

}  // namespace

AlgebraElement tensor_elem(const AlgebraElement& a, const AlgebraElement& b) {
  return AlgebraElement(tensor_algebra(a.descriptor(), b.descriptor()),
                        kron_blocks(a.blocks(), b.blocks()));
}

ModuleVector tensor_vector(const ModuleVector& v, const ModuleVector& w) {
  const TensorModule tm = tensor_module(v.descriptor(), w.descriptor());
  return ModuleVector(tm.combined, kron_blocks(v.blocks(), w.blocks()));
}

AdjointableOp tensor_bounded(const AdjointableOp& s, const AdjointableOp& t) {
  const TensorModule dom = tensor_module(s.domain(), t.domain());
  const TensorModule cod = tensor_module(s.codomain(), t.codomain());
  return AdjointableOp(dom.combined, cod.combined, kron_blocks(s.blocks(), t.blocks()));
}

RegularOp tensor_op(const RegularOp& s, const RegularOp& t) {
  return RegularOp::from_bounded(tensor_bounded(s.bounded(), t.bounded()));
}

}  // namespace opmod
