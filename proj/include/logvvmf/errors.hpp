#pragma once

#include <stdexcept>
#include <string>

namespace logvvmf {

struct Error : std::runtime_error {
  explicit Error(const std::string& m) : std::runtime_error(m) {}
};

struct RelationViolation : Error { using Error::Error; };
struct NonInvolutive : Error { using Error::Error; };
struct TruncationUnderflow : Error { using Error::Error; };
struct BlockMismatch : Error { using Error::Error; };
struct NotScalarS2 : Error { using Error::Error; };
struct IllConditionedFit : Error { using Error::Error; };
struct NoSolution : Error { using Error::Error; };
struct AmbiguousKernel : Error { using Error::Error; };
struct InsufficientData : Error { using Error::Error; };

}  // namespace logvvmf
