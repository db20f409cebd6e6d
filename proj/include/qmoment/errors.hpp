#pragma once

#include <stdexcept>
#include <string>

namespace qmoment {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A series, product, or quadrature did not settle within the term budget.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// A factor of an infinite product vanished (e_q at a pole).
class PoleError : public Error {
 public:
  using Error::Error;
};

/// A lattice value of a density is negative.
class NegativeDensity : public Error {
 public:
  NegativeDensity(const std::string& what, long lattice_index)
      : Error(what), lattice_index_(lattice_index) {}
  long lattice_index() const { return lattice_index_; }

 private:
  long lattice_index_;
};

/// Total mass of a density differs from one beyond tolerance.
class NotNormalized : public Error {
 public:
  using Error::Error;
};

/// Two densities on different lattices were combined.
class QMismatch : public Error {
 public:
  using Error::Error;
};

/// No positive perturbation amplitude keeps the witness non-negative.
class InfeasibleWitness : public Error {
 public:
  using Error::Error;
};

/// The working precision cannot resolve the requested cancellation.
class PrecisionExhausted : public Error {
 public:
  PrecisionExhausted(const std::string& what, int required_digits)
      : Error(what), required_digits_(required_digits) {}
  int required_digits() const { return required_digits_; }

 private:
  int required_digits_;
};

}  // namespace qmoment
