#pragma once

#include <stdexcept>
#include <string>

namespace ssg {

// Input outside an operation's domain (non-tree to a tree routine, bad generator
// parameters, unknown vertex, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Enumeration or state space larger than the desk-scale limits.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A searcher policy that stalls forever with positive probability before
// traversing a target edge.
class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what + " (line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace ssg
