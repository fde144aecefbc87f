#pragma once

#include <stdexcept>
#include <string>

namespace inbench {

// Error taxonomy shared by the core library and surfaced through the C API
// as status codes. Each class corresponds to one failure family; messages
// carry the specifics.

struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& what) : std::runtime_error("FormatError: " + what) {}
};

struct TruncatedFile : std::runtime_error {
    explicit TruncatedFile(const std::string& what) : std::runtime_error("TruncatedFile: " + what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error("ConfigError: " + what) {}
};

struct OutOfPlane : std::runtime_error {
    explicit OutOfPlane(const std::string& what) : std::runtime_error("OutOfPlane: " + what) {}
};

struct GoalUnreachable : std::runtime_error {
    explicit GoalUnreachable(const std::string& what) : std::runtime_error("GoalUnreachable: " + what) {}
};

struct NonFiniteState : std::runtime_error {
    explicit NonFiniteState(const std::string& what) : std::runtime_error("NonFiniteState: " + what) {}
};

struct ShapeMismatch : std::runtime_error {
    explicit ShapeMismatch(const std::string& what) : std::runtime_error("ShapeMismatch: " + what) {}
};

struct EmptyDataset : std::runtime_error {
    explicit EmptyDataset(const std::string& what) : std::runtime_error("EmptyDataset: " + what) {}
};

struct LocalizationFailed : std::runtime_error {
    explicit LocalizationFailed(const std::string& what) : std::runtime_error("LocalizationFailed: " + what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error("IoError: " + what) {}
};

} // namespace inbench
