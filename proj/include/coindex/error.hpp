#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace coindex {

enum class ErrorKind {
  MalformedKb,
  InconsistentKb,
  UnknownTerm,
  DuplicateId,
  MissingMetadata,
  UnreadableFile,
  UnimplementedLevel,
  EmptyVocabulary,
  EmptyMatrix,
  ZeroDegree,
  NoConvergence,
  PreconditionViolation,
  EmptySide,
  TooLarge,
  UnknownNode,
  IoError,
  NoOverlap,
  MalformedInput,
};

std::string_view to_string(ErrorKind kind);

// Every domain failure raised by the library. The CLI maps these to exit
// status 1 and prints "<module>: <kind>: <message>".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, const std::string& message)
      : std::runtime_error(message), kind_(kind), module_(std::move(module)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorKind kind_;
  std::string module_;
};

}  // namespace coindex
