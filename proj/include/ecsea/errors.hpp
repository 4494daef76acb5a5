#ifndef ECSEA_ERRORS_HPP
#define ECSEA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ecsea {

/// Bad user-supplied data: unreadable files, malformed logs, invalid flags.
/// Maps to CLI exit code 2.
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Broken or incompatible model files. Maps to CLI exit code 3.
class ModelError : public std::runtime_error {
public:
  explicit ModelError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace ecsea

#endif // ECSEA_ERRORS_HPP
