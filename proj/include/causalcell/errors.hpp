#pragma once

#include <stdexcept>
#include <string>

namespace causalcell {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid arguments: shapes, ranges, grids. The CLI maps these to exit code 2.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class NonHermitianInput : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class NonUnitaryInput : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class NonDiagonalEnvironment : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class NotPSD : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class NegativeTime : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class GridNotAscending : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class InfeasibleTarget : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class NonPositiveOmega : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class DomainError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A state or channel failed one of its defining checks (trace, positivity,
/// completeness).
class InvalidState : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Numerical outcome errors. The CLI maps these to exit code 3.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class NoRescueFound : public NumericalFailure {
 public:
  NoRescueFound(double best_time, double best_fidelity)
      : NumericalFailure("no rescue time found; best fidelity " +
                         std::to_string(best_fidelity) + " at t=" +
                         std::to_string(best_time)),
        best_time_(best_time),
        best_fidelity_(best_fidelity) {}

  double best_time() const noexcept { return best_time_; }
  double best_fidelity() const noexcept { return best_fidelity_; }

 private:
  double best_time_;
  double best_fidelity_;
};

}  // namespace causalcell
