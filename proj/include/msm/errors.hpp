#pragma once

#include <stdexcept>
#include <string>

namespace msm {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gamma function evaluated at (or within the pole tolerance of) 0, -1, -2, ...
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Series evaluated outside its region of convergence.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Term or node budget exhausted before the requested tolerance was met.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// Argument outside the set where a kernel or transformation can be evaluated.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Degenerate analytic-continuation formula for 2F1.
class TransformError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Operator integral is not absolutely convergent for the declared integrand.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Richardson extrapolation failed to reduce the derivative error estimate.
class StepError : public Error {
 public:
  using Error::Error;
};

/// Parameter set violates a lemma or theorem condition.
class ValidityError : public Error {
 public:
  using Error::Error;
};

/// Rejection sampler ran out of attempts.
class SamplingExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace msm
