#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ctsbench {

// Base of every typed failure raised by the library. `kind()` is the stable
// error name the CLI prints (e.g. "ReferenceError").
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

// `location` is a 1-based line for text documents and a byte offset for
// s-expression input; 0 means the position is not known (schema-level errors).
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t location, const std::string& reason)
      : Error("SyntaxError", "at " + std::to_string(location) + ": " + reason),
        location_(location), reason_(reason) {}
  std::size_t location() const noexcept { return location_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t location_;
  std::string reason_;
};

class ReferenceError : public Error {
 public:
  explicit ReferenceError(const std::string& what) : Error("ReferenceError", what) {}
};

class InvariantError : public Error {
 public:
  explicit InvariantError(const std::string& what) : Error("InvariantError", what) {}
};

class DuplicateNameError : public Error {
 public:
  explicit DuplicateNameError(const std::string& name)
      : Error("DuplicateNameError", "duplicate name '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class NegativeToggleError : public Error {
 public:
  explicit NegativeToggleError(const std::string& what) : Error("NegativeToggleError", what) {}
};

class EmptyGraphError : public Error {
 public:
  explicit EmptyGraphError(const std::string& what) : Error("EmptyGraphError", what) {}
};

class NonPositiveMinError : public Error {
 public:
  NonPositiveMinError(const std::string& metric, const std::string& design)
      : Error("NonPositiveMinError",
              "group minimum of " + metric + " is not strictly positive" +
                  (design.empty() ? std::string() : " in design '" + design + "'")),
        metric_(metric) {}
  const std::string& metric() const noexcept { return metric_; }

 private:
  std::string metric_;
};

class FormatError : public Error {
 public:
  FormatError(const std::string& section, const std::string& expected, const std::string& actual)
      : Error("FormatError", section + ": expected " + expected + ", got " + actual),
        section_(section) {}
  const std::string& section() const noexcept { return section_; }

 private:
  std::string section_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error("IoError", what) {}
};

class MissingArtifactError : public Error {
 public:
  explicit MissingArtifactError(const std::string& path)
      : Error("MissingArtifactError", "missing artifact: " + path), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class InconsistentGapError : public Error {
 public:
  explicit InconsistentGapError(const std::string& what) : Error("InconsistentGapError", what) {}
};

}  // namespace ctsbench
