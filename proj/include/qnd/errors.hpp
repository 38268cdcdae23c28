#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qnd {

enum class ErrorKind {
  InvalidArgument,    // precondition violated by the caller
  SupportViolation,   // state would leak past the grid edge
  GridMismatch,       // operands live on different grids
  ZeroNorm,           // superposition cancelled out
  VanishingProbability,
  UnderResolved,      // kernel narrower than the grid spacing
  NotUnimodal,
  NoSignChange,
  Numeric,            // internal consistency check failed
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so front ends can
/// map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace qnd
