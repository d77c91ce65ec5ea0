#pragma once

#include <stdexcept>
#include <string>

namespace egl {

enum class ErrorKind {
  Domain,
  InvalidData,
  NonConvergence,
  SingularMatrix,
  Usage,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class InvalidDataError : public Error {
 public:
  explicit InvalidDataError(const std::string& what)
      : Error(ErrorKind::InvalidData, what) {}
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, long iterations)
      : Error(ErrorKind::NonConvergence, what), iterations_(iterations) {}
  long iterations() const noexcept { return iterations_; }

 private:
  long iterations_;
};

class SingularMatrixError : public Error {
 public:
  explicit SingularMatrixError(const std::string& what)
      : Error(ErrorKind::SingularMatrix, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

}  // namespace egl
