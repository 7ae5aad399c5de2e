// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "opmod/scalar_function.hpp"

namespace opmod::functions {

std::optional<ScalarFunction> lookup(const std::string& name) {
  if (name == "id") return id();
  if (name == "conj") return conj();
  if (name == "sq") return sq();
  if (name == "sqrt") return sqrt();
  if (name == "exp") return exp();
  if (name == "log") return log();
  if (name == "recip") return recip();
  if (name == "zmap") return zmap();
  return std::nullopt;
}

std::vector<std::string> registry_names() {
  return {"id", "conj", "sq", "sqrt", "exp", "log", "recip", "zmap", "powk(s)"};
}

}  // namespace opmod::functions
