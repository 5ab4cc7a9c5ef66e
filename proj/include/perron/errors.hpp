#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace perron {

/// Mismatched or invalid tensor/vector dimensions.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid argument value (nonpositive scale, negative perturbation, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Arithmetic outside the domain of a real function (e.g. fractional power
/// of a negative number).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A tensor failed a sign requirement. `index` is the offending index tuple,
/// 1-based.
class SignError : public std::invalid_argument {
 public:
  SignError(const std::string& what, std::vector<int> index)
      : std::invalid_argument(what), index_(std::move(index)) {}

  const std::vector<int>& index() const noexcept { return index_; }

 private:
  std::vector<int> index_;
};

/// Malformed tensor document. `line`/`column` are 1-based positions in the
/// source text; for content errors `path` also names the field or entry.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column,
             std::string path = {})
      : std::runtime_error(what), line_(line), column_(column),
        path_(std::move(path)) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& path() const noexcept { return path_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string path_;
};

/// Random generation could not satisfy the requested profile.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace perron
