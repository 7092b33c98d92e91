#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace c2v {

enum class ErrorKind {
  MalformedRecord,
  InvalidLabel,
  LexError,
  ParseUnsupported,
  ParseError,
  EmptyBag,
  AllMasked,
  IndexOutOfRange,
  VocabMismatch,
  EmptyEvaluationSet,
  Format,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers can decide
// between skipping a sample and aborting the run.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace c2v
