#include "coarse/error.hpp"

#include <sstream>

namespace coarse {

std::string to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::schema: return "schema";
    case ErrorKind::model_mismatch: return "model-mismatch";
    case ErrorKind::domain: return "domain";
    case ErrorKind::unsupported: return "unsupported-operation";
    case ErrorKind::undefined_ratio: return "undefined-ratio";
    case ErrorKind::window: return "window";
    case ErrorKind::border: return "border";
    case ErrorKind::disconnected: return "disconnected";
    case ErrorKind::unreachable: return "unreachable";
    case ErrorKind::certification: return "certification";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::schema:
    case ErrorKind::model_mismatch:
    case ErrorKind::domain:
    case ErrorKind::unsupported:
    case ErrorKind::undefined_ratio:
      return 2;
    case ErrorKind::window:
    case ErrorKind::border:
    case ErrorKind::disconnected:
    case ErrorKind::unreachable:
      return 3;
    case ErrorKind::certification:
      return 4;
    case ErrorKind::io:
      return 1;
  }
  return 1;
}

Error::Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

BorderError::BorderError(const std::string& what, std::vector<std::string> offenders, long max_safe)
    : Error(ErrorKind::border, what), offenders_(std::move(offenders)), max_safe_(max_safe) {}

namespace {
std::string describe_components(const std::vector<std::size_t>& sizes) {
  std::ostringstream out;
  out << "graph is disconnected: " << sizes.size() << " components of sizes [";
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i != 0) out << ", ";
    out << sizes[i];
  }
  out << "]";
  return out.str();
}
}  // namespace

DisconnectedGraphError::DisconnectedGraphError(std::vector<std::size_t> component_sizes)
    : Error(ErrorKind::disconnected, describe_components(component_sizes)),
      sizes_(std::move(component_sizes)) {}

CertificationError::CertificationError(const std::string& what, std::string witness)
    : Error(ErrorKind::certification, what + " (witness: " + witness + ")"), witness_(std::move(witness)) {}

}  // namespace coarse
