#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace varbound {

// Base of every error raised by the library. The CLI maps these onto
// `error:` lines and a non-zero exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RejectPositiveDelta : public Error {
 public:
  using Error::Error;
};

class RejectDegenerate : public Error {
 public:
  using Error::Error;
};

class OutOfSupport : public Error {
 public:
  using Error::Error;
};

class NumericalBreakdown : public Error {
 public:
  using Error::Error;
};

class DegreeExceeded : public Error {
 public:
  using Error::Error;
};

class EigenFailure : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Raised when g (or one of its derivatives) is undefined at a point where it
/// has to be evaluated: log/sqrt of a negative number, division by zero.
class EvalDomainError : public Error {
 public:
  using Error::Error;
};

/// NaN from arithmetic on overflowed intermediates (inf - inf, 0 * inf,
/// sin(inf)). Distinct from a genuine domain error.
class EvalOverflow : public EvalDomainError {
 public:
  using EvalDomainError::EvalDomainError;
};

class DivergentExpectation : public Error {
 public:
  using Error::Error;
};

class MembershipFailure : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// A bound that is +inf (odd order) or -inf (even order) because the order-n
/// derivative moment diverges.
class TrivialBound : public Error {
 public:
  TrivialBound(const std::string& what, int sign) : Error(what), sign_(sign) {}

  int sign() const noexcept { return sign_; }

 private:
  int sign_;
};

}  // namespace varbound
