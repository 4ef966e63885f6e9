#ifndef NKRANK_ERRORS_HPP
#define NKRANK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nkrank {

/// Malformed matrix or system file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input does not satisfy a mathematical precondition of an operation
/// (e.g. a matrix that is not additive handed to a routine that needs it).
class PreconditionError : public std::invalid_argument {
 public:
  PreconditionError(std::string property, const std::string& what)
      : std::invalid_argument(what), property_(std::move(property)) {}
  const std::string& property() const { return property_; }

 private:
  std::string property_;
};

/// The constraint system has no solution.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A proven inequality failed on a concrete instance; always a bug somewhere.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace nkrank

#endif  // NKRANK_ERRORS_HPP
