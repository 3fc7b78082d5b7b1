#pragma once

#include <stdexcept>
#include <string>

namespace ctxkit {

/// Malformed or inconsistent user input (bad scenario, bad table, unknown
/// catalog name, unparseable file). CLI maps this to exit code 2.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A configurable resource cap was exceeded (vertex cap, hidden-variable cap,
/// protocol cap). CLI maps this to exit code 3.
struct cap_error : std::runtime_error {
    explicit cap_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ctxkit
