#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace xnr {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed condition or DIMACS text. `position()` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A condition, instance, or literal does not fit the classifier's feature count.
class ArityError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive procedures refuse inputs with more features than their configured bound.
class BoundExceeded : public Error {
 public:
  BoundExceeded(const std::string& what, std::size_t arity, std::size_t bound)
      : Error(what + ": " + std::to_string(arity) + " features exceeds bound " +
              std::to_string(bound)),
        arity_(arity),
        bound_(bound) {}

  std::size_t arity() const noexcept { return arity_; }
  std::size_t bound() const noexcept { return bound_; }

 private:
  std::size_t arity_;
  std::size_t bound_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A model document does not follow the JSON schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// A structurally well-formed model breaks a classifier invariant.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "invalid model";
    for (std::size_t i = 0; i < v.size(); ++i) {
      out += i == 0 ? ": " : "; ";
      out += v[i];
    }
    return out;
  }

  std::vector<std::string> violations_;
};

}  // namespace xnr
