#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace hamcheck {

/// Data-level error with a stable machine-readable code ("DuplicateSymbol",
/// "NoExtremumFound", ...). The CLI maps every Error to exit code 2 and
/// prints the code verbatim, so codes are part of the public contract.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void raise(std::string code, const std::string& message) {
    throw Error(std::move(code), message);
}

} // namespace hamcheck
