#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace curate {

// Invalid configuration (bad ranges, inconsistent banding, unknown keys).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad input data: malformed record, invalid UTF-8, duplicate id.
class input_error : public std::runtime_error {
public:
    input_error(const std::string& msg, std::uint64_t line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}

    std::uint64_t line() const { return line_; }

private:
    std::uint64_t line_ = 0;
};

// Filesystem / stream failures.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal pipeline invariant violations (missing sketch, doc in two
// clusters of the same kind, report that does not balance).
class state_error : public std::runtime_error {
public:
    explicit state_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace curate
