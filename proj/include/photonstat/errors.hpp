#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace photonstat {

/// Data that is formally valid but carries no usable signal (all-zero
/// sample, zero total count after baseline removal, T == 0).
class DegenerateDataError : public std::runtime_error {
 public:
  explicit DegenerateDataError(const std::string& what) : std::runtime_error(what) {}
};

/// A record in an input file could not be parsed or holds an invalid
/// value. `line` is 1-based; 0 means the file as a whole (e.g. empty).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Structural violations of a file format (non-uniform histogram
/// spacing, negative counts, single-bin histograms).
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem-level failure: missing file, unreadable stream, failed write.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace photonstat
