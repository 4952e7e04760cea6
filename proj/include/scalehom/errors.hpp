// Error taxonomy shared by the library and the CLI exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace scalehom {

// Malformed or inconsistent input documents (CLI exit code 2).
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A documented operation precondition does not hold (CLI exit code 3).
struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured resource guard tripped (CLI exit code 4).
struct resource_cap_error : std::runtime_error {
    explicit resource_cap_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace scalehom
