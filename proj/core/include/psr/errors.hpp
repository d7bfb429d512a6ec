#pragma once

#include <stdexcept>

namespace psr {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Steady-state linear system is rank deficient beyond the trace redundancy.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

class ZeroField : public Error {
 public:
  using Error::Error;
};

class ZeroPower : public Error {
 public:
  using Error::Error;
};

/// Circular light has no major axis.
class UndefinedAngle : public Error {
 public:
  using Error::Error;
};

class ZeroHorizontal : public Error {
 public:
  using Error::Error;
};

/// Intensities that no single pure polarization state could have produced.
class InconsistentIntensities : public Error {
 public:
  using Error::Error;
};

class InvalidEta : public Error {
 public:
  using Error::Error;
};

class LagTooLarge : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace psr
