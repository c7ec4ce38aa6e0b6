#pragma once

#include <stdexcept>
#include <string>

namespace sparsedyn {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid grid geometry or mismatched grids between operands.
class GridError : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public GridError {
 public:
  GridMismatch() : GridError("operands live on different grids") {}
  explicit GridMismatch(const std::string& what) : GridError(what) {}
};

/// Inverse transform of a nominally real field left an imaginary residual.
class HermitianViolation : public Error {
 public:
  using Error::Error;
};

class AxisOutOfRange : public Error {
 public:
  using Error::Error;
};

/// Grid too coarse for the highest frequency embedded in a coefficient formula.
class UnderResolved : public Error {
 public:
  using Error::Error;
};

class NegativeLambda : public Error {
 public:
  using Error::Error;
};

class NonpositiveDt : public Error {
 public:
  using Error::Error;
};

/// Time step exceeds the explicit stability guard (raised only in strict mode).
class CflViolation : public Error {
 public:
  using Error::Error;
};

/// Physical parameters violate an equation's requirements (gamma <= 0, non-positive diffusion).
class InvalidParameters : public Error {
 public:
  using Error::Error;
};

class NotTwoDimensional : public Error {
 public:
  using Error::Error;
};

class UnknownInitialSpec : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace sparsedyn
