#pragma once

#include <stdexcept>
#include <string>

namespace otindex {

enum class ErrorKind {
  EmptySequence,
  AlphabetExhausted,
  OutOfRange,
  InvalidArgument,
  BadMagic,
  VersionMismatch,
  HashMismatch,
  Truncated,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace otindex
