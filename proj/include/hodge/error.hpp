#pragma once

#include <stdexcept>
#include <string>

namespace hodge {

/// Base class for every domain error raised by the library. The CLI maps
/// these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument: out-of-range ids, size mismatches, malformed inputs.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The solver or simulator needs a connected graph.
class DisconnectedGraph : public Error {
 public:
  using Error::Error;
};

/// A numerical routine finished outside its stated tolerance.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// A random walk ran past its step cap.
class StepCapExceeded : public Error {
 public:
  using Error::Error;
};

/// Path enumeration hit its explosion guard.
class EnumerationLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace hodge
