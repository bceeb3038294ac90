#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace vdeval {

enum class ErrorKind { Validation, Io, EmptyGroundTruth };

// Process exit codes used by the command-line tool.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitEmptyGroundTruth = 4;

int exit_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(ErrorKind::Validation, what) {}
};

/// Malformed input text. Carries the byte offset (XML) or 1-based line
/// number (line-oriented formats) when known.
class ParseError : public ValidationError {
public:
    ParseError(const std::string& what, std::optional<std::size_t> byte_offset,
               std::optional<std::size_t> line)
        : ValidationError(what), byte_offset_(byte_offset), line_(line) {}

    std::optional<std::size_t> byte_offset() const noexcept { return byte_offset_; }
    std::optional<std::size_t> line() const noexcept { return line_; }

private:
    std::optional<std::size_t> byte_offset_;
    std::optional<std::size_t> line_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

class EmptyGroundTruthError : public Error {
public:
    explicit EmptyGroundTruthError(const std::string& what)
        : Error(ErrorKind::EmptyGroundTruth, what) {}
};

/// A non-fatal note about input that was modified or skipped.
struct Diagnostic {
    std::string location;
    std::string message;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

}  // namespace vdeval
