#pragma once

#include <stdexcept>
#include <string>

namespace distspace {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: wrong sizes, non-finite values, asymmetric matrices.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Two points of a configuration coincide where distinct points are required.
class DuplicatePointError : public Error {
 public:
  using Error::Error;
};

/// A generator or builder received parameters outside its domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Brute-force scope exceeded (e.g. too many points for circuit enumeration).
class ScopeError : public Error {
 public:
  using Error::Error;
};

/// Enumeration would exceed its evaluation budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Newton iteration hit its iteration cap.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// The constraint system has no positive real root reachable from the guess.
class NoSolutionError : public Error {
 public:
  NoSolutionError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// A symmetric construction produced congruent configurations.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// No candidate fundamental cell regenerates the input spectrum.
class ReconstructionError : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON / CSV input. The message names the offending key or line.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace distspace
