#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tvpd {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownAlgorithm : public Error {
 public:
  using Error::Error;
};

class InvalidPlan : public Error {
 public:
  using Error::Error;
};

class InfeasiblePlan : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class UnknownPreset : public Error {
 public:
  using Error::Error;
};

class CounterExhausted : public Error {
 public:
  using Error::Error;
};

class OutsideTimeWindow : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input. Carries the field being decoded and the byte
/// offset at which decoding failed.
class ParseError : public Error {
 public:
  ParseError(std::string field, std::size_t offset, const std::string& detail = {})
      : Error("parse error in '" + field + "' at offset " + std::to_string(offset) +
              (detail.empty() ? std::string{} : ": " + detail)),
        field_(std::move(field)),
        offset_(offset) {}

  const std::string& field() const noexcept { return field_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::string field_;
  std::size_t offset_;
};

class VersionMismatch : public Error {
 public:
  explicit VersionMismatch(unsigned found)
      : Error("unsupported format version " + std::to_string(found)), found_(found) {}
  unsigned found() const noexcept { return found_; }

 private:
  unsigned found_;
};

}  // namespace tvpd
