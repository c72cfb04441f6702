#pragma once

#include <stdexcept>
#include <string>

namespace kawin {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EncodingError : public Error {
 public:
  EncodingError(const std::string& what, std::size_t byte_offset)
      : Error(what), byte_offset_(byte_offset) {}
  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

/// Malformed or inconsistent data file.
class LoadError : public Error {
 public:
  using Error::Error;
};

}  // namespace kawin
