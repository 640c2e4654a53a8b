#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace espart {

inline constexpr std::string_view kVersion = "0.1.0";

// Malformed or out-of-domain input: bad files, degenerate arguments,
// construction violations. CLI exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A hypothesis of the partition machinery does not hold on the given data,
// or a constant extraction stage cannot be completed. CLI exit code 3.
class HypothesisError : public std::runtime_error {
 public:
  explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

// Thread cap for internally parallel loops, from ESPART_THREADS.
int thread_cap();

}  // namespace espart
