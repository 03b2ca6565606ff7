#pragma once

#include <stdexcept>
#include <string>

namespace ordolex {

// Every recoverable failure carries a short machine-readable code
// ("cyclic", "bad-root", "no-qualifying-sentences", ...) next to the
// human-readable message. Skip logs and exit paths key off the code,
// never off message text.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// CoNLL-U syntax or block-structure violation, with the offending 1-based line.
class ParseError : public Error {
 public:
  ParseError(std::string code, const std::string& message, long line)
      : Error(std::move(code),
              message + " (line " + std::to_string(line) + ")"),
        line_(line) {}

  long line() const noexcept { return line_; }

 private:
  long line_ = 0;
};

// Dependency structure unusable as a tree; code doubles as the skip reason.
class TreeError : public Error {
  using Error::Error;
};

// Bad command line or config values. The CLI maps this to exit code 1.
class UsageError : public Error {
  using Error::Error;
};

// Unreadable or malformed data at pipeline level. The CLI maps this to exit code 2.
class DataError : public Error {
  using Error::Error;
};

}  // namespace ordolex
