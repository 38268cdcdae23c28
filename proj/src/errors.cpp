#include "qnd/errors.hpp"

namespace qnd {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::SupportViolation: return "support violation";
    case ErrorKind::GridMismatch: return "grid mismatch";
    case ErrorKind::ZeroNorm: return "zero norm";
    case ErrorKind::VanishingProbability: return "vanishing probability";
    case ErrorKind::UnderResolved: return "under-resolved kernel";
    case ErrorKind::NotUnimodal: return "objective not unimodal";
    case ErrorKind::NoSignChange: return "no sign change";
    case ErrorKind::Numeric: return "numeric error";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace qnd
