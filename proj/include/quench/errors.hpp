#pragma once

#include <stdexcept>
#include <string>

namespace quench {

enum class ErrorKind {
  range,          // argument outside a supported interval
  domain,         // argument outside the mathematical domain
  shape,          // grids or sizes that do not fit together
  configuration,  // parameter set without a physical meaning
  accuracy,       // input cannot support the requested accuracy
  resolution,     // quadrature step too coarse for the integrand
  truncation,     // integral tail beyond the cutoff is not negligible
  usage,          // command-line misuse
  conflict,       // mutually exclusive options
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Resolution, truncation and accuracy failures: the inputs were legal but
  // the numerics cannot deliver a trustworthy answer.
  bool numerical_validity() const noexcept {
    return kind_ == ErrorKind::accuracy || kind_ == ErrorKind::resolution ||
           kind_ == ErrorKind::truncation;
  }

 private:
  ErrorKind kind_;
};

}  // namespace quench
