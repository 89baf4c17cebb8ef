#include "pmx/error.hpp"

namespace pmx {

std::string SourceSpan::str() const {
  std::string out = file.empty() ? std::string("<input>") : file;
  out += ':' + std::to_string(line) + ':' + std::to_string(column);
  return out;
}

const char *to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::Parse: return "parse error";
  case ErrorKind::DuplicateDeclaration: return "duplicate declaration";
  case ErrorKind::UnknownName: return "unknown name";
  case ErrorKind::UnboundFixpointVariable: return "unbound fixpoint variable";
  case ErrorKind::NonMonotoneFixpoint: return "non-monotone fixpoint";
  case ErrorKind::Type: return "type error";
  case ErrorKind::Eval: return "evaluation error";
  case ErrorKind::UnboundVariable: return "unbound variable";
  case ErrorKind::UnboundedDomain: return "unbounded domain";
  case ErrorKind::Overflow: return "integer overflow";
  case ErrorKind::UnguardedRecursion: return "unguarded recursion";
  case ErrorKind::StateLimitExceeded: return "state limit exceeded";
  case ErrorKind::InstantiationLimitExceeded: return "instantiation limit exceeded";
  case ErrorKind::NoEvidence: return "no evidence";
  case ErrorKind::Io: return "i/o error";
  }
  return "error";
}

static std::string compose(ErrorKind kind, const std::string &message,
                           const std::optional<SourceSpan> &span,
                           const std::vector<std::string> &expected) {
  std::string out;
  if (span)
    out += span->str() + ": ";
  out += to_string(kind);
  out += ": " + message;
  if (!expected.empty()) {
    out += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i)
        out += ", ";
      out += expected[i];
    }
    out += ")";
  }
  return out;
}

Error::Error(ErrorKind kind, std::string message, std::optional<SourceSpan> span,
             std::vector<std::string> expected)
    : std::runtime_error(compose(kind, message, span, expected)), kind_(kind),
      message_(std::move(message)), span_(std::move(span)), expected_(std::move(expected)) {}

} // namespace pmx
