#pragma once

#include <stdexcept>
#include <string>

namespace polylink {

// Bad arguments: size mismatches, out-of-range parameters, malformed inputs.
class InvalidInput : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Geometry that has no well-defined answer (zero-length edges, coincident
// circle centers, ambiguous tangencies).
class DegenerateGeometry : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A construction that requires a closing circle intersection found none.
class NoClosure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// The side lengths (or a turn-angle prefix) admit no configuration of the
// requested kind.
class Infeasible : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class NotEmbedded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A quadrilateral expansive move ran into a turn angle of 0 or pi.
class MotionBlocked : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ConvergenceFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace polylink
