#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pmx {

/// Location of a token or AST node in an input file. Lines and columns are 1-based.
struct SourceSpan {
  std::string file;
  int line = 1;
  int column = 1;
  int length = 0;

  std::string str() const;
};

enum class ErrorKind {
  Parse,
  DuplicateDeclaration,
  UnknownName,
  UnboundFixpointVariable,
  NonMonotoneFixpoint,
  Type,
  Eval,
  UnboundVariable,
  UnboundedDomain,
  Overflow,
  UnguardedRecursion,
  StateLimitExceeded,
  InstantiationLimitExceeded,
  NoEvidence,
  Io,
};

const char *to_string(ErrorKind kind);

/// Every diagnosable failure in the tool is reported through this type.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string message, std::optional<SourceSpan> span = std::nullopt,
        std::vector<std::string> expected = {});

  ErrorKind kind() const { return kind_; }
  const std::optional<SourceSpan> &span() const { return span_; }
  /// Token kinds that would have been accepted (parse errors only).
  const std::vector<std::string> &expected() const { return expected_; }
  const std::string &message() const { return message_; }

private:
  ErrorKind kind_;
  std::string message_;
  std::optional<SourceSpan> span_;
  std::vector<std::string> expected_;
};

} // namespace pmx
