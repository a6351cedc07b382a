#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace ppl {

// Error categories map one-to-one onto the C API status codes and the CLI
// exit codes (config 2, data 3, numerical 4).
enum class ErrorKind { Config, Data, Numerical, Io, Internal };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

class DataError : public Error {
public:
  explicit DataError(const std::string& what, std::optional<std::size_t> row = std::nullopt)
      : Error(ErrorKind::Data, row ? "row " + std::to_string(*row) + ": " + what : what),
        row_(row) {}

  std::optional<std::size_t> row() const noexcept { return row_; }

private:
  std::optional<std::size_t> row_;
};

class NumericalError : public Error {
public:
  explicit NumericalError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

class IoError : public Error {
public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

}  // namespace ppl
