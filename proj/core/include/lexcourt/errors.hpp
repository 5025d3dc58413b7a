#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lexcourt {

// Root of every error raised by the library. CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller violated a documented precondition (empty request, bad argument).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Transport kept failing after the configured number of retries.
class RetriesExhaustedError : public Error {
 public:
  using Error::Error;
};

// Provider answered, but the body does not follow the wire contract.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// Scripted mock ran out of canned replies.
class ScriptExhaustedError : public Error {
 public:
  using Error::Error;
};

// Duplicate identifier on ingest or index build.
class ConflictError : public Error {
 public:
  ConflictError(std::string message, std::size_t line = 0)
      : Error(std::move(message)), line_(line) {}
  // 1-based input line, 0 when not line-oriented.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A JSONL line failed schema validation.
class MalformedInputError : public Error {
 public:
  MalformedInputError(std::string message, std::size_t line = 0)
      : Error(std::move(message)), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class InsufficientCorpusError : public Error {
 public:
  using Error::Error;
};

// A model reply could not be turned into the expected structure, even after
// the gateway's re-ask retries. `kind` names the stage (generation,
// evaluation, scoring, judgment, civil-summary, civil-match).
class FormatError : public Error {
 public:
  FormatError(std::string kind, const std::string& detail)
      : Error(kind + "-format error: " + detail), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

// Thrown by reply parsers; the gateway turns it into a re-ask.
class ParseFailure : public Error {
 public:
  using Error::Error;
};

// A store or index was queried before it was built.
class NotReadyError : public Error {
 public:
  using Error::Error;
};

// Courtroom step invoked out of protocol order.
class TrialOrderError : public Error {
 public:
  using Error::Error;
};

// A lawyer agent produced an unusable (empty) turn.
class TurnGenerationError : public Error {
 public:
  using Error::Error;
};

// Two keyed inputs disagree on their key sets.
class KeyMismatchError : public Error {
 public:
  KeyMismatchError(const std::string& what, std::vector<std::string> missing)
      : Error(what + render(missing)), missing_(std::move(missing)) {}
  const std::vector<std::string>& missing() const noexcept { return missing_; }

 private:
  static std::string render(const std::vector<std::string>& ids) {
    std::string out = " [";
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i) out += ", ";
      out += ids[i];
    }
    return out + "]";
  }
  std::vector<std::string> missing_;
};

// Configuration file failed validation; carries every problem found.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> problems)
      : Error(join(problems)), problems_(std::move(problems)) {}
  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  static std::string join(const std::vector<std::string>& ps) {
    std::string out = "invalid configuration:";
    for (const auto& p : ps) out += "\n  " + p;
    return out;
  }
  std::vector<std::string> problems_;
};

}  // namespace lexcourt
