#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace coarse {

enum class ErrorKind {
  schema,
  model_mismatch,
  domain,
  unsupported,
  undefined_ratio,
  window,
  border,
  disconnected,
  unreachable,
  certification,
  io,
};

std::string to_string(ErrorKind kind);

/// Process exit status for a failure of the given kind: 2 for malformed
/// input, 3 for window/border problems, 4 for failed certification.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ModelMismatchError : public Error {
 public:
  explicit ModelMismatchError(const std::string& what) : Error(ErrorKind::model_mismatch, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

class UnsupportedOperationError : public Error {
 public:
  explicit UnsupportedOperationError(const std::string& what) : Error(ErrorKind::unsupported, what) {}
};

class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& what) : Error(ErrorKind::schema, what) {}
};

class WindowError : public Error {
 public:
  explicit WindowError(const std::string& what) : Error(ErrorKind::window, what) {}
};

// Raised when a computation would read past the finite window. `max_safe`
// is the largest parameter (radius, m) that would have been exact, or -1.
class BorderError : public Error {
 public:
  BorderError(const std::string& what, std::vector<std::string> offenders, long max_safe = -1);
  const std::vector<std::string>& offenders() const noexcept { return offenders_; }
  long max_safe() const noexcept { return max_safe_; }

 private:
  std::vector<std::string> offenders_;
  long max_safe_;
};

class DisconnectedGraphError : public Error {
 public:
  explicit DisconnectedGraphError(std::vector<std::size_t> component_sizes);
  const std::vector<std::size_t>& component_sizes() const noexcept { return sizes_; }

 private:
  std::vector<std::size_t> sizes_;
};

class UnreachableError : public Error {
 public:
  explicit UnreachableError(const std::string& what) : Error(ErrorKind::unreachable, what) {}
};

class UndefinedRatioError : public Error {
 public:
  explicit UndefinedRatioError(const std::string& what) : Error(ErrorKind::undefined_ratio, what) {}
};

class CertificationError : public Error {
 public:
  CertificationError(const std::string& what, std::string witness);
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

}  // namespace coarse
