#ifndef UCF_ERROR_HPP
#define UCF_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ucf {

/// Bad input data: unreadable files, malformed records, unsupported graphs.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A DataError tied to a line of a text input.
class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ucf

#endif  // UCF_ERROR_HPP
