#pragma once

#include <stdexcept>
#include <string>

namespace dnsphere {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Grid or band-limit too coarse for the requested operation.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

// NaN/Inf or malformed input.
class InputError : public Error {
 public:
  using Error::Error;
};

// Shape outside the well-posedness margin (P not uniformly elliptic).
class ShapeTooLargeError : public Error {
 public:
  using Error::Error;
};

class GeometryDegenerateError : public Error {
 public:
  using Error::Error;
};

class NonContractionError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class SupportError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace dnsphere
