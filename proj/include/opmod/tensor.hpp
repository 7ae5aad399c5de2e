// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "opmod/regular.hpp"

namespace opmod {

/// E (x) F over the blockwise Kronecker algebra: block list = all pairs
/// (k,l) in k-major order, combined rank = p*q. Minimal and maximal tensor
/// products coincide here, so "minimal" is realized structurally.
struct TensorModule {
  ModuleDescriptor left, right, combined;
};

AlgebraDescriptor tensor_algebra(const AlgebraDescriptor& a, const AlgebraDescriptor& b);
TensorModule tensor_module(const ModuleDescriptor& e, const ModuleDescriptor& f);

AlgebraElement tensor_elem(const AlgebraElement& a, const AlgebraElement& b);
ModuleVector tensor_vector(const ModuleVector& v, const ModuleVector& w);

/// S (x) T on elementary tensors; ||S (x) T|| = ||S|| ||T||.
AdjointableOp tensor_bounded(const AdjointableOp& s, const AdjointableOp& t);

/// The z-transform of the tensor is computed from the bounded tensor
/// representative.
RegularOp tensor_op(const RegularOp& s, const RegularOp& t);

}  // namespace opmod
