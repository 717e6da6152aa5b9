#pragma once

#include <stdexcept>
#include <string>

namespace rjc {

// Error categories surfaced through the C API as status codes.
enum class ErrorKind {
  Io,
  Parse,
  Format,
  Dimension,
  Domain,
  DegenerateFeature,
  DegenerateCluster,
  Numerical,
  Index,
  Contract,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // True for errors caused by bad input rather than by the fitting procedure.
  bool is_input_error() const noexcept {
    return kind_ != ErrorKind::DegenerateCluster && kind_ != ErrorKind::Numerical;
  }

 private:
  ErrorKind kind_;
};

}  // namespace rjc
