#pragma once

#include <stdexcept>
#include <string>

namespace reqcomp {

// Base for every error raised by this library. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid user configuration: bad flag values, missing or unreadable assets.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A data file could not be parsed. Carries the offending line when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string path = {}, std::size_t line = 0)
      : Error(format(what, path, line)), path_(std::move(path)), line_(line) {}

  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }

 private:
  static std::string format(const std::string& what, const std::string& path, std::size_t line) {
    std::string out;
    if (!path.empty()) out += path + ":";
    if (line > 0) out += std::to_string(line) + ":";
    if (!out.empty()) out += " ";
    return out + what;
  }

  std::string path_;
  std::size_t line_ = 0;
};

// Remote service (MediaWiki) failures after retries.
class NetworkError : public Error {
 public:
  using Error::Error;
};

// Masked-language-model provider failures.
class ProviderError : public Error {
 public:
  using Error::Error;
};

class ProviderUnreachable : public ProviderError {
 public:
  using ProviderError::ProviderError;
};

class FixtureMiss : public ProviderError {
 public:
  using ProviderError::ProviderError;
};

class MalformedResponse : public ProviderError {
 public:
  using ProviderError::ProviderError;
};

class DuplicateKey : public Error {
 public:
  using Error::Error;
};

// Feature matrix / model schema disagreement.
class SchemaMismatch : public Error {
 public:
  using Error::Error;
};

// Input does not satisfy an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace reqcomp
