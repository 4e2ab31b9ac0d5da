#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polibench {

enum class ErrorKind {
    // configuration / usage
    Config,
    Io,
    UnknownDataset,
    ExcludedLeftOut,
    InvalidArgument,
    // data
    ParseError,
    UnknownLabel,
    MissingField,
    UnknownTopic,
    EmptyBody,
    NoCenterData,
    TooSmall,
    MissingLabels,
    LengthMismatch,
    EmptyMatrix,
    MissingPredictions,
};

std::string_view error_kind_name(ErrorKind kind);

/// True for errors caused by the input data rather than by how the tool was
/// invoked. The CLI maps these to exit code 2.
bool is_data_error(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace polibench
