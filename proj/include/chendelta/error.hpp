#pragma once

#include <stdexcept>
#include <string>

namespace chendelta {

// Base for every error raised by the library. Callers that only need to
// distinguish "bad input" from "bug" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a documented precondition (dimension, tolerance, shape).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Gram matrix failed the leading-minor test during orthonormalization.
class NotPositiveDefinite : public InvalidArgument {
 public:
  NotPositiveDefinite(int minor_index, double pivot)
      : InvalidArgument("gram matrix is not positive definite: leading minor " +
                        std::to_string(minor_index) + " has pivot " +
                        std::to_string(pivot)),
        minor_index_(minor_index) {}
  int minor_index() const noexcept { return minor_index_; }

 private:
  int minor_index_;
};

class DegeneratePlane : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class NotOrthonormal : public InvalidArgument {
 public:
  NotOrthonormal(const std::string& what, double deviation)
      : InvalidArgument(what + " (max deviation " + std::to_string(deviation) +
                        ")"),
        deviation_(deviation) {}
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

class SymmetryViolation : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// A tuple/variant pairing that the selected inequality does not cover.
class AdmissibilityError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Evaluation point outside the domain of a chart, field or trajectory.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A numerical consistency check that an operation performs on its own output
// failed (horizontality, Lagrangian symmetry, ...).
class ConsistencyError : public Error {
 public:
  ConsistencyError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace chendelta
