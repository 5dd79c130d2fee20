#pragma once

#include <stdexcept>
#include <string>

namespace mars {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent user input (bad JSON, bad geometry, bad fault
// pattern, disconnected footprint, ...). CLI maps this to exit code 1.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(what) {}
};

// A planning request that cannot be satisfied (no fault present, more than
// one faulty unit, no controllable subassembly, no legal docking cell, ...).
// CLI maps this to exit code 3.
class PlanningError : public Error {
 public:
  explicit PlanningError(const std::string& what) : Error(what) {}
};

// An iterative solver exceeded its iteration cap before meeting tolerance.
class NonConvergence : public Error {
 public:
  explicit NonConvergence(const std::string& what) : Error(what) {}
};

// Regulator synthesis failed to produce a stabilizing gain.
class RegulatorFailure : public Error {
 public:
  explicit RegulatorFailure(const std::string& what) : Error(what) {}
};

}  // namespace mars
