// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace opmod {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define OPMOD_DEFINE_ERROR(NAME)                                    \
  class NAME : public Error {                                       \
   public:                                                          \
    explicit NAME(const std::string& what = #NAME) : Error(what) {} \
  }

OPMOD_DEFINE_ERROR(DescriptorMismatch);
OPMOD_DEFINE_ERROR(NotNormal);
OPMOD_DEFINE_ERROR(FunctionUndefinedAtSpectrum);
OPMOD_DEFINE_ERROR(NotPositiveFunctional);
OPMOD_DEFINE_ERROR(UnboundedOperator);
OPMOD_DEFINE_ERROR(DomainViolation);
OPMOD_DEFINE_ERROR(NotInvertible);
OPMOD_DEFINE_ERROR(NotCompatible);
OPMOD_DEFINE_ERROR(NotPositive);
OPMOD_DEFINE_ERROR(NotStrictlyPositive);
OPMOD_DEFINE_ERROR(SpectrumHit);
OPMOD_DEFINE_ERROR(NotCommuting);
OPMOD_DEFINE_ERROR(IntertwiningViolated);
OPMOD_DEFINE_ERROR(NotInC0);
OPMOD_DEFINE_ERROR(UndecidableMembership);
OPMOD_DEFINE_ERROR(UnknownSuite);

#undef OPMOD_DEFINE_ERROR

}  // namespace opmod
