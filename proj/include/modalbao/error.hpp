#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace modalbao {

// Failure categories; the C API maps each onto a status code.
enum class ErrorKind {
  Parse,
  InvalidArgument,
  BoundExceeded,
  Capability,
  UnassignedVariable,
  CrossContext,
  NotAdmissible,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Syntax error in formula, frame spec or set text. `position` is a byte offset.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error(ErrorKind::Parse,
              "parse error at position " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorKind::InvalidArgument, what) {}
};

class BoundExceeded : public Error {
 public:
  explicit BoundExceeded(const std::string& what) : Error(ErrorKind::BoundExceeded, what) {}
};

class CapabilityError : public Error {
 public:
  explicit CapabilityError(const std::string& what) : Error(ErrorKind::Capability, what) {}
};

class UnassignedVariable : public Error {
 public:
  explicit UnassignedVariable(const std::string& name)
      : Error(ErrorKind::UnassignedVariable, "unassigned variable: " + name), name_(name) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class CrossContextError : public Error {
 public:
  CrossContextError() : Error(ErrorKind::CrossContext, "element belongs to a different algebra") {}
};

class NotAdmissible : public Error {
 public:
  explicit NotAdmissible(const std::string& what) : Error(ErrorKind::NotAdmissible, what) {}
};

}  // namespace modalbao
