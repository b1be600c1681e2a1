#ifndef LCEVAL_ERRORS_HPP
#define LCEVAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lceval {

enum class ErrorKind {
  // textmetrics
  NoWords,
  // deptree
  MalformedLine,
  NonTree,
  EmptyTree,
  Unalignable,
  // modelio
  EmptyStimulus,
  TemplateInvalid,
  // llm
  AuthMissing,
  RateLimited,
  ProviderError,
  Timeout,
  NetworkError,
  OfflineCacheMiss,
  // stats
  InsufficientData,
  ZeroVariance,
  NoPairs,
  // harness
  EmptyEssay,
  InsufficientItems,
  ConfigError,
  IoError,
};

const char* to_string(ErrorKind kind);

/// Single exception type for all domain errors. `line` is 1-based where a
/// source line is known (CoNLL-U parsing), -1 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, int line = -1)
      : std::runtime_error(line >= 0
                               ? std::string(to_string(kind)) + " at line " +
                                     std::to_string(line) + ": " + message
                               : std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        line_(line) {}

  ErrorKind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  ErrorKind kind_;
  int line_;
};

}  // namespace lceval

#endif  // LCEVAL_ERRORS_HPP
