#pragma once

#include <stdexcept>
#include <string>
#include <sstream>
#include <utility>

namespace mcpad {

// Thrown when inputs violate an operation's contract (bad shapes, bad
// labels, malformed configs). CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown on filesystem / decode failures. CLI maps this to exit code 2.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

template <typename... Args>
std::string cat(Args&&... args) {
  std::ostringstream os;
  (os << ... << std::forward<Args>(args));
  return os.str();
}

}  // namespace detail

template <typename... Args>
[[noreturn]] void fail(Args&&... args) {
  throw ValidationError(detail::cat(std::forward<Args>(args)...));
}

template <typename... Args>
[[noreturn]] void fail_io(Args&&... args) {
  throw IoError(detail::cat(std::forward<Args>(args)...));
}

template <typename... Args>
void require(bool cond, Args&&... args) {
  if (!cond) fail(std::forward<Args>(args)...);
}

}  // namespace mcpad
