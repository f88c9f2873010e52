#pragma once

#include <stdexcept>
#include <string>

namespace jbound {

/// Malformed or out-of-domain arguments (CLI exit code 2).
class invalid_input : public std::invalid_argument {
 public:
  explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

/// A hypothesis of the method is not met, e.g. fewer than three cusps (exit code 2).
class precondition_error : public std::invalid_argument {
 public:
  explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Enumeration or series size over the configured cap (exit code 3).
class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

/// An internal cross-check disagreed (exit code 1).
class consistency_error : public std::runtime_error {
 public:
  explicit consistency_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace jbound
