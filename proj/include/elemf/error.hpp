#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace elemf {

/// Domain error carrying a short machine-readable code (e.g. "parse",
/// "arity", "budget") alongside the human-readable message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

}  // namespace elemf
