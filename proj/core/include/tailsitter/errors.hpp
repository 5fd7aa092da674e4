#pragma once

#include <stdexcept>
#include <string>

namespace tailsitter {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoConvergence : Error {
  NoConvergence(const std::string& what, double residual)
      : Error(what), residual(residual) {}
  double residual;
};

struct NotStabilizable : Error { using Error::Error; };
struct ThrustTooLow : Error { using Error::Error; };
struct DegenerateGeometry : Error { using Error::Error; };
struct ZeroMatrix : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

struct NonFinite : Error {
  NonFinite(const std::string& component, double t)
      : Error("non-finite value in " + component + " at t=" + std::to_string(t)),
        component(component), t(t) {}
  std::string component;
  double t;
};

}  // namespace tailsitter
