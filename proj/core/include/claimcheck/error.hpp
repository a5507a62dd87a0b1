#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace claimcheck {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file content. Carries the 1-based line when known.
class ParseError : public Error {
 public:
  ParseError(std::string origin, std::size_t line, const std::string& message);

  const std::string& origin() const noexcept { return origin_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string origin_;
  std::size_t line_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An external provider (encoder, translator, filler, generator, embedder)
// failed or returned a response that violates its contract.
class ProviderError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace claimcheck
