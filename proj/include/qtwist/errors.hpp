#ifndef QTWIST_ERRORS_HPP
#define QTWIST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qtw {

// Violated mathematical precondition or unsupported input (bad exponent,
// singular division, conductor overflow, ...).
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed user input: config files, literals, CLI arguments.  The CLI
// maps these to exit code 2, everything derived from Error stays at 1.
struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

} // namespace qtw

#endif
