#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hardline {

enum class ErrorKind {
    Domain,         // invalid arguments to a numeric operation
    Construction,   // a builder could not produce a certified instance
    Inconsistency,  // a result failed to verify at its own center point
    Oracle,         // brute-force simulator could not resolve the instance
    Schema,         // malformed input document
    Io,
    Internal,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::string field = {})
        : std::runtime_error(message), kind_(kind), field_(std::move(field))
    {}

    ErrorKind kind() const noexcept { return kind_; }

    /// Offending input field for schema errors, e.g. "state.q[2]". Empty otherwise.
    const std::string& field() const noexcept { return field_; }

private:
    ErrorKind kind_;
    std::string field_;
};

}  // namespace hardline
