#pragma once

#include <stdexcept>
#include <string>

namespace direst {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mismatched vector sizes, bad parameter dimension, and similar.
struct InvalidDimensionError : Error {
  using Error::Error;
};

// A pending sample point has no cost attached when a division is finalized.
struct IncompleteEvaluationError : Error {
  using Error::Error;
};

// A cost value is negative or non-finite.
struct InvalidCostError : Error {
  using Error::Error;
};

// A division was requested on a rect that already has pending children.
struct DoubleDivisionError : Error {
  using Error::Error;
};

// Resolution / iteration-budget arguments out of range.
struct InvalidResolutionError : Error {
  using Error::Error;
};

// An update instant does not lie on the configured schedule grid.
struct ScheduleError : Error {
  using Error::Error;
};

// Integration produced a non-finite state or derivative.
struct BlowupError : Error {
  BlowupError(const std::string& what, double t_blowup, int observer = -1)
      : Error(what), t(t_blowup), observer_index(observer) {}
  double t;             // simulation time at which the blowup was detected
  int observer_index;   // -1 means the plant (or a bare field outside a bank)
};

// Scenario file failed to parse or validate.
struct ConfigError : Error {
  using Error::Error;
};

// A point lies outside the domain it must belong to.
struct DomainError : Error {
  using Error::Error;
};

}  // namespace direst
