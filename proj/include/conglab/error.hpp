#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace conglab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: unknown symbols, arity mismatches, out-of-range
/// elements, relations of the wrong size.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A generated universe or enumeration would exceed a configured cap.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::size_t requested, std::size_t cap)
      : Error(what + ": " + std::to_string(requested) + " exceeds cap " +
              std::to_string(cap)),
        requested_(requested),
        cap_(cap) {}

  std::size_t requested() const { return requested_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t requested_;
  std::size_t cap_;
};

/// Text-format parse failure; carries file, line and offending token.
class ParseError : public Error {
 public:
  ParseError(std::string file, std::size_t line, std::string token,
             const std::string& message)
      : Error(file + ":" + std::to_string(line) + ": " + message +
              (token.empty() ? std::string() : " (at '" + token + "')")),
        file_(std::move(file)),
        line_(line),
        token_(std::move(token)) {}

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }
  const std::string& token() const { return token_; }

 private:
  std::string file_;
  std::size_t line_;
  std::string token_;
};

}  // namespace conglab
