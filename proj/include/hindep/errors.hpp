#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace hindep {

// Base error carrying a stable machine-readable code (surfaced by the CLI).
class error : public std::runtime_error {
 public:
  error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class parameter_error : public error {
 public:
  explicit parameter_error(const std::string& what) : error("parameter_error", what) {}
};

class dimension_error : public error {
 public:
  explicit dimension_error(const std::string& what) : error("dimension_error", what) {}
};

class resource_error : public error {
 public:
  explicit resource_error(const std::string& what) : error("resource_error", what) {}
};

class numerical_error : public error {
 public:
  explicit numerical_error(const std::string& what) : error("numerical_error", what) {}
};

class parse_error : public error {
 public:
  explicit parse_error(const std::string& what) : error("parse_error", what) {}
};

class io_error : public error {
 public:
  explicit io_error(const std::string& what) : error("io_error", what) {}
};

}  // namespace hindep
